//! The J-invariant of a 4-point configuration, its factorization chain,
//! equivalence testing, and numerical verification of the branching
//! structure of J as a degree-6 map of the sphere.

use crate::error::{Error, Result};
use crate::moebius::{cross_ratio_points, FourPoints, MoebiusMap};
use crate::numerics::{cx, Cx, Polynomial, SpherePoint, RHO, RHO2};
use crate::tol;

/// `J(lambda) = (lambda^2 - lambda + 1)^3 / (lambda^2 (lambda - 1)^2)`,
/// with the three punctures 0, 1, inf (and inf itself) sent to inf.
pub fn j_invariant(lambda: SpherePoint) -> SpherePoint {
    let lambda = match lambda {
        SpherePoint::Infinity => return SpherePoint::Infinity,
        SpherePoint::Finite(l) => l,
    };
    let numer = lambda * lambda - lambda + Cx::ONE;
    let denom = lambda * lambda * (lambda - Cx::ONE) * (lambda - Cx::ONE);
    if denom == Cx::ZERO {
        SpherePoint::Infinity
    } else {
        SpherePoint::Finite(numer * numer * numer / denom)
    }
}

/// J of a 4-point set: J of any cross ratio of the quadruple. Independent
/// of the input ordering.
pub fn j_of_points(pts: &FourPoints) -> Result<SpherePoint> {
    let chi = cross_ratio_points(pts)?;
    Ok(j_invariant(SpherePoint::Finite(chi)))
}

/// Sphere-valued equality for J values: two infinities compare equal,
/// finite values compare within `tolerance` relative to `1 + max |J|`.
pub fn j_equal(a: SpherePoint, b: SpherePoint, tolerance: f64) -> bool {
    match (a, b) {
        (SpherePoint::Infinity, SpherePoint::Infinity) => true,
        (SpherePoint::Finite(x), SpherePoint::Finite(y)) => {
            (x - y).norm() <= tolerance * (1.0 + x.norm().max(y.norm()))
        }
        _ => false,
    }
}

/// Anything with a well-defined J value.
pub trait HasJInvariant {
    fn j(&self) -> Result<SpherePoint>;
}

impl HasJInvariant for Cx {
    fn j(&self) -> Result<SpherePoint> {
        Ok(j_invariant(SpherePoint::Finite(*self)))
    }
}

impl HasJInvariant for SpherePoint {
    fn j(&self) -> Result<SpherePoint> {
        Ok(j_invariant(*self))
    }
}

impl HasJInvariant for FourPoints {
    fn j(&self) -> Result<SpherePoint> {
        j_of_points(self)
    }
}

/// Two configurations (cross ratios or 4-point sets) are equivalent iff
/// their J values agree.
pub fn are_equivalent<A: HasJInvariant + ?Sized, B: HasJInvariant + ?Sized>(
    a: &A,
    b: &B,
) -> Result<bool> {
    Ok(j_equal(a.j()?, b.j()?, tol::J_EQUIVALENCE))
}

/// Evaluates J through its three-step factorization
///
/// `z -> (rho z + rho^2)/(z + rho^2)`, `z -> z^3 + 1/z^3`, `z -> -27/(z - 2)`,
///
/// propagating infinity through every stage.
pub fn j_chain(lambda: Cx) -> SpherePoint {
    let first = MoebiusMap::new(RHO, RHO2, Cx::ONE, RHO2)
        .expect("the chain's Möbius stage is non-degenerate");
    let w = first.apply(SpherePoint::Finite(lambda));

    let cubes = match w {
        SpherePoint::Infinity => SpherePoint::Infinity,
        SpherePoint::Finite(z) => {
            if z == Cx::ZERO {
                SpherePoint::Infinity
            } else {
                let z3 = z * z * z;
                SpherePoint::Finite(z3 + z3.finv())
            }
        }
    };

    match cubes {
        SpherePoint::Infinity => SpherePoint::Finite(Cx::ZERO),
        SpherePoint::Finite(z) => {
            let denom = z - cx(2.0, 0.0);
            // rounding in the rho constants can leave an exact pole hit a few
            // ulps off 2, so the pole test is relative
            if denom.norm() <= 1e-12 * (1.0 + z.norm()) {
                SpherePoint::Infinity
            } else {
                SpherePoint::Finite(cx(-27.0, 0.0) / denom)
            }
        }
    }
}

/// Numerator polynomial of J: `(lambda^2 - lambda + 1)^3`.
fn j_numerator() -> Polynomial {
    let base = Polynomial::new(vec![Cx::ONE, -Cx::ONE, Cx::ONE]).unwrap();
    base.mul(&base).mul(&base)
}

/// Denominator polynomial of J: `lambda^2 (lambda - 1)^2`.
fn j_denominator() -> Polynomial {
    let sq = Polynomial::new(vec![Cx::ZERO, Cx::ZERO, Cx::ONE]).unwrap();
    let shifted = Polynomial::new(vec![Cx::ONE, -2.0 * Cx::ONE, Cx::ONE]).unwrap();
    sq.mul(&shifted)
}

/// J' evaluated from the symbolic quotient rule `(P'Q - PQ')/Q^2`.
pub fn j_first_derivative(lambda: Cx) -> SpherePoint {
    let p = j_numerator();
    let q = j_denominator();
    let num = p.derivative().eval(lambda) * q.eval(lambda) - p.eval(lambda) * q.derivative().eval(lambda);
    let den = q.eval(lambda);
    if den == Cx::ZERO {
        SpherePoint::Infinity
    } else {
        SpherePoint::Finite(num / (den * den))
    }
}

/// J'' from `((P''Q - PQ'')Q - 2Q'(P'Q - PQ'))/Q^3`.
pub fn j_second_derivative(lambda: Cx) -> SpherePoint {
    let p = j_numerator();
    let q = j_denominator();
    let (pv, qv) = (p.eval(lambda), q.eval(lambda));
    let (p1, q1) = (p.derivative(), q.derivative());
    let (p1v, q1v) = (p1.eval(lambda), q1.eval(lambda));
    let p2v = p1.derivative().eval(lambda);
    let q2v = q1.derivative().eval(lambda);
    if qv == Cx::ZERO {
        return SpherePoint::Infinity;
    }
    let num = (p2v * qv - pv * q2v) * qv - 2.0 * q1v * (p1v * qv - pv * q1v);
    SpherePoint::Finite(num / (qv * qv * qv))
}

/// One verified entry of the branching table of J.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchEntry {
    pub critical_point: SpherePoint,
    pub critical_value: SpherePoint,
    pub multiplicity: u32,
    /// Log-ratio slope measured at eps = 1e-3 and 1e-4; within 0.1 of
    /// `multiplicity` when the entry passes.
    pub measured_slope: f64,
}

/// The verified branching structure: all critical points with their values
/// and multiplicities, plus the degree check (each fiber sums to 6).
#[derive(Debug, Clone, PartialEq)]
pub struct BranchingReport {
    pub entries: Vec<BranchEntry>,
    /// `(critical value, sum of multiplicities, sum == 6)` per fiber.
    pub fiber_checks: Vec<(SpherePoint, u32, bool)>,
}

/// Expected branching data: critical point, critical value, multiplicity.
fn branching_table() -> [(SpherePoint, SpherePoint, u32); 8] {
    let inf = SpherePoint::Infinity;
    let fin = SpherePoint::Finite;
    let v27_4 = fin(cx(6.75, 0.0));
    let zero = fin(Cx::ZERO);
    [
        (fin(Cx::ZERO), inf, 2),
        (fin(Cx::ONE), inf, 2),
        (inf, inf, 2),
        (fin(cx(2.0, 0.0)), v27_4, 2),
        (fin(cx(0.5, 0.0)), v27_4, 2),
        (fin(cx(-1.0, 0.0)), v27_4, 2),
        (fin(-RHO), zero, 3),
        (fin(-RHO2), zero, 3),
    ]
}

/// Measures the local multiplicity of J at `point` over `value` by the
/// growth rate of `J(point + eps) - value` (or of `1/J` for poles) at
/// eps = 1e-3 and 1e-4.
fn measure_slope(point: SpherePoint, value: SpherePoint) -> Result<f64> {
    let eps = [1e-3f64, 1e-4];
    let deviation = |e: f64| -> Result<f64> {
        let probe = match point {
            SpherePoint::Finite(c) => SpherePoint::Finite(c + cx(e, 0.0)),
            SpherePoint::Infinity => SpherePoint::Finite(cx(1.0 / e, 0.0)),
        };
        let j = j_invariant(probe);
        match (j, value) {
            (SpherePoint::Finite(j), SpherePoint::Finite(v)) => Ok((j - v).norm()),
            (SpherePoint::Finite(j), SpherePoint::Infinity) => Ok(j.norm().recip()),
            _ => Err(Error::VerificationFailure(format!(
                "J evaluated to infinity while probing {point}"
            ))),
        }
    };
    let d1 = deviation(eps[0])?;
    let d2 = deviation(eps[1])?;
    if d1 == 0.0 || d2 == 0.0 {
        return Err(Error::VerificationFailure(format!(
            "flat deviation while probing {point}"
        )));
    }
    Ok((d1 / d2).ln() / (eps[0] / eps[1]).ln())
}

/// Confirms the branching diagram of J: critical points {0, 1, inf} over
/// inf, {2, 1/2, -1} over 27/4 and {-rho, -rho^2} over 0, with
/// multiplicities (2, 2, 2), (2, 2, 2) and (3, 3), every fiber summing to
/// the degree 6.
///
/// Each entry is checked three ways: the value of J, the vanishing of J'
/// (with J'' separating multiplicity 2 from 3), and the log-ratio slope of
/// the local deviation, which must sit within 0.1 of the multiplicity.
pub fn verify_branching(tolerance: f64) -> Result<BranchingReport> {
    if !tolerance.is_finite() || tolerance <= 0.0 {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    let mut entries = Vec::new();
    for (point, value, expected) in branching_table() {
        // J(point) must land on the tabulated critical value.
        let j_here = j_invariant(point);
        if !j_equal(j_here, value, tolerance) {
            return Err(Error::VerificationFailure(format!(
                "J({point}) = {j_here}, expected {value}"
            )));
        }
        // finite critical points over finite values: J' vanishes there and
        // J'' decides multiplicity 2 versus 3
        if let (SpherePoint::Finite(c), SpherePoint::Finite(_)) = (point, value) {
            match j_first_derivative(c) {
                SpherePoint::Finite(d) if d.norm() <= tolerance => {}
                other => {
                    return Err(Error::VerificationFailure(format!(
                        "J'({c}) = {other:?}, expected 0"
                    )))
                }
            }
            let second = match j_second_derivative(c) {
                SpherePoint::Finite(d) => d,
                SpherePoint::Infinity => {
                    return Err(Error::VerificationFailure(format!("J''({c}) is infinite")))
                }
            };
            let second_vanishes = second.norm() <= tolerance;
            if (expected == 3) != second_vanishes {
                return Err(Error::VerificationFailure(format!(
                    "J''({c}) = {second} inconsistent with multiplicity {expected}"
                )));
            }
        }
        let slope = measure_slope(point, value)?;
        if (slope - expected as f64).abs() > 0.1 {
            return Err(Error::VerificationFailure(format!(
                "multiplicity slope at {point} is {slope:.4}, expected {expected}"
            )));
        }
        entries.push(BranchEntry {
            critical_point: point,
            critical_value: value,
            multiplicity: expected,
            measured_slope: slope,
        });
    }

    let values = [
        SpherePoint::Infinity,
        SpherePoint::Finite(cx(6.75, 0.0)),
        SpherePoint::Finite(Cx::ZERO),
    ];
    let mut fiber_checks = Vec::new();
    for v in values {
        let sum: u32 = entries
            .iter()
            .filter(|e| j_equal(e.critical_value, v, tolerance))
            .map(|e| e.multiplicity)
            .sum();
        let ok = sum == 6;
        if !ok {
            return Err(Error::VerificationFailure(format!(
                "fiber over {v} sums to {sum}, expected 6"
            )));
        }
        fiber_checks.push((v, sum, ok));
    }
    Ok(BranchingReport {
        entries,
        fiber_checks,
    })
}
