//! Computing with the correspondence between elliptic curves and 4-point
//! sets on the Riemann sphere.
//!
//! The crate is organized around a few small layers:
//!
//! * [`numerics`]: complex scalars, sphere points, polynomials and root
//!   solvers (a simultaneous all-roots iteration plus the explicit branch
//!   formula for the cubic `z^3 - 3k z^2 + 4`).
//! * [`moebius`]: Möbius maps, the cross ratio and its six-element orbit,
//!   canonicalization to `{0, 1, lambda, inf}` and the Klein involutions of
//!   a quadruple.
//! * [`invariants`]: the J-invariant, its factorization chain, equivalence
//!   testing and verification of the branching diagram.
//! * [`forms`]: the Weierstrass, Legendre, Jacobi, Symmetric/Edwards and
//!   Hesse normal forms, their branch points, and conversions among them.
//! * [`shape`]: circumcircles, curvilinear-triangle angles, the apex
//!   construction of cross ratios from angles, and SVG rendering.
//!
//! All operations are pure functions over immutable values and are safe to
//! share across threads.

pub mod error;
pub mod forms;
pub mod invariants;
pub mod moebius;
pub mod numerics;
pub mod shape;

pub use error::{Error, Result};
pub use forms::{CurveForm, FormKind};
pub use moebius::{FourPoints, MoebiusMap};
pub use numerics::{Cx, SpherePoint};

/// The fixed tolerances used by the crate's contracts.
pub mod tol {
    /// Chordal distance below which two sphere points count as coincident.
    pub const DISTINCT_CHORDAL: f64 = 1e-10;
    /// Minimum |ad - bc| of a Möbius map after coefficient normalization.
    pub const MAP_DET: f64 = 1e-12;
    /// Deduplication tolerance inside a cross-ratio orbit (scaled by the
    /// orbit's largest magnitude).
    pub const ORBIT_DEDUP: f64 = 1e-9;
    /// Relative tolerance for J-equality (normalized by 1 + |J|).
    pub const J_EQUIVALENCE: f64 = 1e-8;
    /// |Im chi| below which a quadruple counts as concyclic.
    pub const CONCYCLIC: f64 = 1e-9;
    /// |Im chi| below which a shape is flagged as nearly concyclic.
    pub const NEAR_CONCYCLIC: f64 = 1e-6;
    /// Tolerance for the defining constraints of the normal forms.
    pub const FORM_INVARIANT: f64 = 1e-10;
    /// Default residual tolerance handed to the polynomial solver.
    pub const DEFAULT_SOLVE: f64 = 1e-9;
}
