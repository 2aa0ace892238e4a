use thiserror::Error;

/// Crate-wide error type. Variant names mirror the failure modes of the
/// operations that raise them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The iterative root solver exhausted its budget without meeting the
    /// residual bound.
    #[error("root solver did not converge after {iterations} iterations (worst residual at {residual:.3e} of the bound)")]
    NonConvergence { iterations: u32, residual: f64 },

    /// The Cardano radicand is too close to zero for the closed-form branch
    /// formula to be usable; callers should fall back to the generic solver.
    #[error("cube-root radicand magnitude {magnitude:.3e} below degeneracy threshold")]
    DegenerateAlpha { magnitude: f64 },

    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Discriminants and the solver only handle a fixed degree range.
    #[error("unsupported polynomial degree {0}")]
    UnsupportedDegree(usize),

    /// Two of the three points defining a Möbius map coincide.
    #[error("degenerate triple: points must be pairwise distinct")]
    DegenerateTriple,

    /// A quadruple (or other input) fails pairwise-distinctness or a similar
    /// structural requirement.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Möbius coefficients with (near-)zero determinant.
    #[error("degenerate Möbius map: |ad - bc| = {0:.3e} after normalization")]
    DegenerateMap(f64),

    /// A stated precondition was violated by the caller.
    #[error("precondition violation: {0}")]
    PreconditionViolation(String),

    /// A self-check (branching diagram, chain identity, ...) failed.
    #[error("verification failure: {0}")]
    VerificationFailure(String),

    /// A value does not satisfy the invariants of its form or type.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    /// Root filtering left no admissible candidate. Raised only when an
    /// internal assumption is broken.
    #[error("no valid root among the solver candidates")]
    NoValidRoot,

    /// The four points lie on one generalized circle, so no curvilinear
    /// triangle exists.
    #[error("concyclic input: the four points lie on a single generalized circle")]
    ConcyclicInput,

    /// An internal consistency check failed; indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
