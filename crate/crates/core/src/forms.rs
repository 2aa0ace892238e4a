//! Normal forms of elliptic curves and the conversions among them.
//!
//! Every form is handled through the branch points of its degree-2
//! projection, so equivalence questions reduce to J-equality of 4-point
//! sets:
//!
//! * Weierstrass `y^2 = 4x^3 - g2 x - g3`: roots of the cubic and inf
//! * Legendre `y^2 = x(x-1)(x-lambda)`: {0, 1, lambda, inf}
//! * Jacobi `y^2 = (x^2-1)(k^2 x^2-1)`: {1, -1, 1/k, -1/k}
//! * Symmetric / Edwards `x^2+y^2 = a^2+a^2x^2y^2`: {a, -1/a, -a, 1/a}
//! * Hesse `x^3+y^3+1 = 3kxy`: {-k} and the roots of `z^3 - 3k z^2 + 4`

use crate::error::{Error, Result};
use crate::invariants::{j_equal, j_invariant, j_of_points, HasJInvariant};
use crate::moebius::{cross_ratio_points, orbit_values, FourPoints};
use crate::numerics::{
    cx, hesse_cubic, hesse_roots, lex_cmp, solve_poly, weierstrass_cubic, CardanoBranch, Cx,
    Polynomial, SpherePoint,
};
use crate::tol;

/// The supported normal-form kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormKind {
    Weierstrass,
    Legendre,
    Jacobi,
    Symmetric,
    Edwards,
    Hesse,
}

impl FormKind {
    pub fn name(&self) -> &'static str {
        match self {
            FormKind::Weierstrass => "weierstrass",
            FormKind::Legendre => "legendre",
            FormKind::Jacobi => "jacobi",
            FormKind::Symmetric => "symmetric",
            FormKind::Edwards => "edwards",
            FormKind::Hesse => "hesse",
        }
    }
}

/// A curve in one of the normal forms, tagged by its defining parameters.
///
/// `Symmetric` and `Edwards` carry the same parameter and the same branch
/// points; they are distinct variants only so callers can name the equation
/// they mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveForm {
    Weierstrass { g2: Cx, g3: Cx },
    Legendre { lambda: Cx },
    Jacobi { k: Cx },
    Symmetric { a: Cx },
    Edwards { a: Cx },
    Hesse { k: Cx },
}

impl CurveForm {
    pub fn weierstrass(g2: Cx, g3: Cx) -> Result<Self> {
        let f = CurveForm::Weierstrass { g2, g3 };
        f.validate()?;
        Ok(f)
    }

    pub fn legendre(lambda: Cx) -> Result<Self> {
        let f = CurveForm::Legendre { lambda };
        f.validate()?;
        Ok(f)
    }

    pub fn jacobi(k: Cx) -> Result<Self> {
        let f = CurveForm::Jacobi { k };
        f.validate()?;
        Ok(f)
    }

    pub fn symmetric(a: Cx) -> Result<Self> {
        let f = CurveForm::Symmetric { a };
        f.validate()?;
        Ok(f)
    }

    pub fn edwards(a: Cx) -> Result<Self> {
        let f = CurveForm::Edwards { a };
        f.validate()?;
        Ok(f)
    }

    pub fn hesse(k: Cx) -> Result<Self> {
        let f = CurveForm::Hesse { k };
        f.validate()?;
        Ok(f)
    }

    pub fn from_kind(kind: FormKind, params: &[Cx]) -> Result<Self> {
        let want = match kind {
            FormKind::Weierstrass => 2,
            _ => 1,
        };
        if params.len() != want {
            return Err(Error::Domain(format!(
                "{} takes {want} parameter(s), got {}",
                kind.name(),
                params.len()
            )));
        }
        match kind {
            FormKind::Weierstrass => CurveForm::weierstrass(params[0], params[1]),
            FormKind::Legendre => CurveForm::legendre(params[0]),
            FormKind::Jacobi => CurveForm::jacobi(params[0]),
            FormKind::Symmetric => CurveForm::symmetric(params[0]),
            FormKind::Edwards => CurveForm::edwards(params[0]),
            FormKind::Hesse => CurveForm::hesse(params[0]),
        }
    }

    pub fn kind(&self) -> FormKind {
        match self {
            CurveForm::Weierstrass { .. } => FormKind::Weierstrass,
            CurveForm::Legendre { .. } => FormKind::Legendre,
            CurveForm::Jacobi { .. } => FormKind::Jacobi,
            CurveForm::Symmetric { .. } => FormKind::Symmetric,
            CurveForm::Edwards { .. } => FormKind::Edwards,
            CurveForm::Hesse { .. } => FormKind::Hesse,
        }
    }

    pub fn params(&self) -> Vec<Cx> {
        match *self {
            CurveForm::Weierstrass { g2, g3 } => vec![g2, g3],
            CurveForm::Legendre { lambda } => vec![lambda],
            CurveForm::Jacobi { k } => vec![k],
            CurveForm::Symmetric { a } | CurveForm::Edwards { a } => vec![a],
            CurveForm::Hesse { k } => vec![k],
        }
    }

    /// Checks the non-degeneracy constraints of the form.
    pub fn validate(&self) -> Result<()> {
        let t = tol::FORM_INVARIANT;
        let fail = |msg: String| Err(Error::InvariantViolation(msg));
        match *self {
            CurveForm::Weierstrass { g2, g3 } => {
                let disc = g2 * g2 * g2 - 27.0 * g3 * g3;
                let scale = 1.0 + g2.norm().powi(3) + g3.norm().powi(2);
                if disc.norm() <= t * scale {
                    return fail(format!("weierstrass discriminant g2^3 - 27 g3^2 = {disc} vanishes"));
                }
            }
            CurveForm::Legendre { lambda } => {
                if lambda.norm() <= t || (lambda - Cx::ONE).norm() <= t {
                    return fail(format!("legendre parameter {lambda} must avoid 0 and 1"));
                }
            }
            CurveForm::Jacobi { k } => {
                let k2 = k * k;
                if k.norm() <= t || (k2 - Cx::ONE).norm() <= t || (k2 + Cx::ONE).norm() <= t {
                    return fail(format!("jacobi parameter {k} must satisfy k != 0, k^2 != +-1"));
                }
            }
            CurveForm::Symmetric { a } | CurveForm::Edwards { a } => {
                let a4 = a * a * a * a;
                if a.norm() <= t || (a4 - Cx::ONE).norm() <= t {
                    return fail(format!("parameter {a} must satisfy a != 0, a^4 != 1"));
                }
            }
            CurveForm::Hesse { k } => {
                let k3 = k * k * k;
                if (k3 - Cx::ONE).norm() <= t * (1.0 + k3.norm()) {
                    return fail(format!("hesse parameter {k} must satisfy k^3 != 1"));
                }
            }
        }
        Ok(())
    }
}

impl HasJInvariant for CurveForm {
    fn j(&self) -> Result<SpherePoint> {
        j_of_points(&branch_points(self)?)
    }
}

/// The four branch points of the form's degree-2 projection.
///
/// Finite points are listed in (re, im) order; infinity, when present, is
/// last. For the Hesse form the cubic roots come first and `-k` last.
pub fn branch_points(f: &CurveForm) -> Result<FourPoints> {
    f.validate()?;
    let sorted = |mut v: Vec<Cx>| {
        v.sort_by(lex_cmp);
        v
    };
    match *f {
        CurveForm::Weierstrass { g2, g3 } => {
            let roots = sorted(solve_poly(&weierstrass_cubic(g2, g3), tol::DEFAULT_SOLVE)?);
            FourPoints::new(
                roots[0].into(),
                roots[1].into(),
                roots[2].into(),
                SpherePoint::Infinity,
            )
        }
        CurveForm::Legendre { lambda } => {
            let pts = sorted(vec![Cx::ZERO, Cx::ONE, lambda]);
            FourPoints::new(pts[0].into(), pts[1].into(), pts[2].into(), SpherePoint::Infinity)
        }
        CurveForm::Jacobi { k } => {
            let pts = sorted(vec![Cx::ONE, -Cx::ONE, k.finv(), -k.finv()]);
            FourPoints::new(pts[0].into(), pts[1].into(), pts[2].into(), pts[3].into())
        }
        CurveForm::Symmetric { a } | CurveForm::Edwards { a } => {
            let pts = sorted(vec![a, -a.finv(), -a, a.finv()]);
            FourPoints::new(pts[0].into(), pts[1].into(), pts[2].into(), pts[3].into())
        }
        CurveForm::Hesse { k } => {
            let roots = match hesse_roots(k, CardanoBranch::default()) {
                Ok((z1, z2, z3)) => vec![z1, z2, z3],
                Err(Error::DegenerateAlpha { .. }) => {
                    solve_poly(&hesse_cubic(k), tol::DEFAULT_SOLVE)?
                }
                Err(e) => return Err(e),
            };
            let roots = sorted(roots);
            FourPoints::new(roots[0].into(), roots[1].into(), roots[2].into(), (-k).into())
        }
    }
}

/// Weierstrass coefficients of the curve branching over `{z1, z2, z3, inf}`:
/// the centroid is subtracted, then `4(x-e1)(x-e2)(x-e3) = 4x^3 - g2 x - g3`.
pub fn weierstrass_from_points(z1: Cx, z2: Cx, z3: Cx) -> Result<(Cx, Cx)> {
    let scale = 1.0 + z1.norm().max(z2.norm()).max(z3.norm());
    if (z1 - z2).norm() <= 1e-12 * scale
        || (z1 - z3).norm() <= 1e-12 * scale
        || (z2 - z3).norm() <= 1e-12 * scale
    {
        return Err(Error::DegenerateInput(
            "branch points must be pairwise distinct".into(),
        ));
    }
    let centroid = (z1 + z2 + z3) / 3.0;
    let (e1, e2, e3) = (z1 - centroid, z2 - centroid, z3 - centroid);
    let g2 = -4.0 * (e1 * e2 + e1 * e3 + e2 * e3);
    let g3 = 4.0 * e1 * e2 * e3;
    Ok((g2, g3))
}

/// Legendre parameter of a quadruple: its cross ratio in the stored order.
pub fn legendre_from_points(pts: &FourPoints) -> Result<Cx> {
    cross_ratio_points(pts)
}

/// The symmetric-configuration cross ratio
/// `phi(a) = chi(a, -1/a, -a, 1/a) = ((1 - a^2)/(1 + a^2))^2`.
pub fn symmetric_phi(a: Cx) -> Cx {
    let a2 = a * a;
    let r = (Cx::ONE - a2) / (Cx::ONE + a2);
    r * r
}

/// Inverts `phi`: a parameter `a` with `phi(a) = lambda`, `a != 0`,
/// `a^4 != 1`.
///
/// Branch policy: with `s` the principal square root of `lambda`,
/// `a^2 = (1 - s)/(1 + s)` and `a` its principal square root; if that
/// candidate collides with `a^4 = 1` the opposite sign of `s` is used.
pub fn symmetric_parameter_from_lambda(lambda: Cx) -> Result<Cx> {
    if lambda.norm() <= 1e-12 || (lambda - Cx::ONE).norm() <= 1e-12 {
        return Err(Error::Domain(format!(
            "lambda = {lambda} must avoid 0 and 1"
        )));
    }
    let s = lambda.sqrt();
    for sign in [1.0, -1.0] {
        let s = sign * s;
        let denom = Cx::ONE + s;
        if denom.norm() <= 1e-14 {
            continue;
        }
        let a2 = (Cx::ONE - s) / denom;
        let a = a2.sqrt();
        if CurveForm::symmetric(a).is_ok() {
            return Ok(a);
        }
    }
    Err(Error::Internal(format!(
        "no admissible symmetric parameter for lambda = {lambda}"
    )))
}

/// The closed form for J over the Hesse branch points:
/// `phi(k) = 27/4 (k (k^3 + 8) / (4 (k^3 - 1)))^3`.
pub fn hesse_phi(k: Cx) -> Result<Cx> {
    let k3 = k * k * k;
    if (k3 - Cx::ONE).norm() <= tol::FORM_INVARIANT * (1.0 + k3.norm()) {
        return Err(Error::Domain(format!("k = {k} has k^3 = 1")));
    }
    let ratio = k * (k3 + cx(8.0, 0.0)) / (4.0 * (k3 - Cx::ONE));
    Ok(cx(6.75, 0.0) * ratio * ratio * ratio)
}

/// Clearing denominators in `phi(k) = j` gives the degree-12 polynomial
/// `27 k^3 (k^3+8)^3 - 256 j (k^3-1)^3`, expanded here in ascending order.
fn hesse_inversion_polynomial(j: Cx) -> Polynomial {
    let z = Cx::ZERO;
    Polynomial::new(vec![
        256.0 * j,
        z,
        z,
        cx(13824.0, 0.0) - 768.0 * j,
        z,
        z,
        cx(5184.0, 0.0) + 768.0 * j,
        z,
        z,
        cx(648.0, 0.0) - 256.0 * j,
        z,
        z,
        cx(27.0, 0.0),
    ])
    .expect("leading coefficient 27 is nonzero")
}

/// Newton refinement; keeps the iterate with the smallest residual.
fn polish_root(p: &Polynomial, start: Cx) -> Cx {
    let dp = p.derivative();
    let mut z = start;
    let mut best = z;
    let mut best_res = p.eval(z).norm();
    for _ in 0..60 {
        let d = dp.eval(z);
        if d == Cx::ZERO {
            break;
        }
        z -= p.eval(z) / d;
        let res = p.eval(z).norm();
        if res < best_res {
            best_res = res;
            best = z;
        }
    }
    best
}

/// A Hesse parameter whose configuration is equivalent to
/// `{0, 1, lambda, inf}`: the smallest-magnitude admissible root of the
/// inversion polynomial (ties broken by principal argument), Newton-polished
/// and checked against both the closed form and the branch-point J.
pub fn hesse_from_lambda(lambda: Cx) -> Result<Cx> {
    if lambda.norm() <= 1e-12 || (lambda - Cx::ONE).norm() <= 1e-12 {
        return Err(Error::Domain(format!(
            "lambda = {lambda} must avoid 0 and 1"
        )));
    }
    let j = match j_invariant(SpherePoint::Finite(lambda)) {
        SpherePoint::Finite(j) => j,
        SpherePoint::Infinity => {
            return Err(Error::Domain(format!("J({lambda}) is infinite")))
        }
    };
    let poly = hesse_inversion_polynomial(j);
    let mut candidates: Vec<Cx> = solve_poly(&poly, tol::DEFAULT_SOLVE)?
        .into_iter()
        .map(|r| polish_root(&poly, r))
        .filter(|k| {
            let k3 = k * k * k;
            (k3 - Cx::ONE).norm() > 1e-8
        })
        .collect();
    candidates.sort_by(|a, b| {
        a.norm()
            .total_cmp(&b.norm())
            .then(a.arg().total_cmp(&b.arg()))
    });

    let bound = 1e-8 * (1.0 + j.norm());
    for k in candidates {
        let phi = match hesse_phi(k) {
            Ok(v) => v,
            Err(_) => continue,
        };
        if (phi - j).norm() > bound {
            continue;
        }
        let via_points = match branch_points(&CurveForm::Hesse { k }).and_then(|p| j_of_points(&p)) {
            Ok(SpherePoint::Finite(v)) => v,
            _ => continue,
        };
        if (via_points - j).norm() > bound {
            continue;
        }
        return Ok(k);
    }
    Err(Error::NoValidRoot)
}

/// Converts a form to the requested kind through the cross ratio of its
/// branch points. Parameter-level shortcuts are used where the target is
/// directly related (Symmetric/Edwards share `a`; Jacobi uses `k = a^2`).
pub fn convert(f: &CurveForm, target: FormKind) -> Result<CurveForm> {
    f.validate()?;
    if f.kind() == target {
        return Ok(*f);
    }
    // parameter-level shortcuts within the symmetric family
    match (*f, target) {
        (CurveForm::Symmetric { a }, FormKind::Edwards) => return CurveForm::edwards(a),
        (CurveForm::Edwards { a }, FormKind::Symmetric) => return CurveForm::symmetric(a),
        (CurveForm::Symmetric { a } | CurveForm::Edwards { a }, FormKind::Jacobi) => {
            if let Ok(j) = CurveForm::jacobi(a * a) {
                return Ok(j);
            }
        }
        (CurveForm::Jacobi { k }, FormKind::Symmetric) => {
            return CurveForm::symmetric(k.sqrt());
        }
        (CurveForm::Jacobi { k }, FormKind::Edwards) => {
            return CurveForm::edwards(k.sqrt());
        }
        _ => {}
    }

    let lambda = legendre_from_points(&branch_points(f)?)?;
    convert_lambda(lambda, target)
}

/// Builds a form of the requested kind equivalent to `{0, 1, lambda, inf}`.
pub fn convert_lambda(lambda: Cx, target: FormKind) -> Result<CurveForm> {
    match target {
        FormKind::Legendre => CurveForm::legendre(lambda),
        FormKind::Weierstrass => {
            let (g2, g3) = weierstrass_from_points(Cx::ZERO, Cx::ONE, lambda)?;
            CurveForm::weierstrass(g2, g3)
        }
        FormKind::Symmetric => CurveForm::symmetric(symmetric_parameter_from_lambda(lambda)?),
        FormKind::Edwards => CurveForm::edwards(symmetric_parameter_from_lambda(lambda)?),
        FormKind::Jacobi => {
            // the harmonic representative lambda = -1 forces k^2 = -1, which
            // the Jacobi constraints exclude; another orbit member then works
            for cand in orbit_values(lambda) {
                if cand.norm() <= 1e-12 || (cand - Cx::ONE).norm() <= 1e-12 {
                    continue;
                }
                let a = symmetric_parameter_from_lambda(cand)?;
                if let Ok(j) = CurveForm::jacobi(a * a) {
                    return Ok(j);
                }
            }
            Err(Error::NoValidRoot)
        }
        FormKind::Hesse => CurveForm::hesse(hesse_from_lambda(lambda)?),
    }
}

/// Two forms are isomorphic iff the J values of their branch-point sets
/// agree (relative tolerance, normalized by 1 + |J|).
pub fn is_isomorphic(f1: &CurveForm, f2: &CurveForm) -> Result<bool> {
    let j1 = f1.j()?;
    let j2 = f2.j()?;
    Ok(j_equal(j1, j2, tol::J_EQUIVALENCE))
}
