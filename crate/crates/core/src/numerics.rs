//! Complex and sphere-point arithmetic, polynomials, and root solvers.
//!
//! Everything downstream works over `Cx` (double-precision complex) and
//! `SpherePoint` (a finite value or the point at infinity). The two solvers
//! are a simultaneous all-roots iteration for arbitrary degree and the
//! explicit branch formula for the cubic `z^3 - 3k z^2 + 4`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Double-precision complex number, the scalar type of the whole crate.
pub type Cx = Complex64;

/// Shorthand constructor.
pub fn cx(re: f64, im: f64) -> Cx {
    Cx::new(re, im)
}

/// The primitive cube root of unity `exp(2 pi i / 3)`.
#[allow(clippy::excessive_precision)]
pub const RHO: Cx = Cx {
    re: -0.5,
    im: 0.866_025_403_784_438_646_763_723_170_752_936_183,
};

/// The other primitive cube root of unity, `RHO` squared (= its conjugate).
#[allow(clippy::excessive_precision)]
pub const RHO2: Cx = Cx {
    re: -0.5,
    im: -0.866_025_403_784_438_646_763_723_170_752_936_183,
};

/// Fixed seed for the solver's initial-guess jitter; makes every run of
/// `solve_poly` reproduce the same root ordering bit for bit.
const SOLVER_SEED: u64 = 0x4f0e_9a1c_55d3_27b1;

/// A point of the Riemann sphere: a finite complex number or infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpherePoint {
    Finite(Cx),
    Infinity,
}

impl SpherePoint {
    pub const INFINITY: SpherePoint = SpherePoint::Infinity;

    pub fn finite(re: f64, im: f64) -> SpherePoint {
        SpherePoint::Finite(cx(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, SpherePoint::Finite(_))
    }

    /// The finite value, if any.
    pub fn value(&self) -> Option<Cx> {
        match self {
            SpherePoint::Finite(z) => Some(*z),
            SpherePoint::Infinity => None,
        }
    }
}

impl From<Cx> for SpherePoint {
    fn from(z: Cx) -> Self {
        SpherePoint::Finite(z)
    }
}

impl std::fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpherePoint::Finite(z) => write!(f, "{}", z),
            SpherePoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Chordal (spherical) distance between two sphere points, in [0, 2].
///
/// `hypot` keeps the formula overflow-free for very large coordinates.
pub fn chordal(p: SpherePoint, q: SpherePoint) -> f64 {
    let lift = |z: Cx| 1.0f64.hypot(z.norm());
    match (p, q) {
        (SpherePoint::Finite(z), SpherePoint::Finite(w)) => {
            2.0 * (z - w).norm() / (lift(z) * lift(w))
        }
        (SpherePoint::Finite(z), SpherePoint::Infinity)
        | (SpherePoint::Infinity, SpherePoint::Finite(z)) => 2.0 / lift(z),
        (SpherePoint::Infinity, SpherePoint::Infinity) => 0.0,
    }
}

/// Total order on complex values by (re, im); used wherever a deterministic
/// listing of roots or points is needed.
pub fn lex_cmp(a: &Cx, b: &Cx) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Branch selector for `hesse_roots`: a sign for the square root and an
/// index rotating the principal cube root by a cube root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CardanoBranch {
    sqrt_sign: i8,
    cbrt_index: u8,
}

impl CardanoBranch {
    pub fn new(sqrt_sign: i8, cbrt_index: u8) -> Result<Self> {
        if sqrt_sign != 1 && sqrt_sign != -1 {
            return Err(Error::Domain(format!(
                "square-root branch sign must be +1 or -1, got {sqrt_sign}"
            )));
        }
        if cbrt_index > 2 {
            return Err(Error::Domain(format!(
                "cube-root branch index must be 0, 1 or 2, got {cbrt_index}"
            )));
        }
        Ok(CardanoBranch {
            sqrt_sign,
            cbrt_index,
        })
    }

    pub fn sqrt_sign(&self) -> i8 {
        self.sqrt_sign
    }

    pub fn cbrt_index(&self) -> u8 {
        self.cbrt_index
    }

    /// All six branch combinations.
    pub fn all() -> [CardanoBranch; 6] {
        let mut out = [CardanoBranch::default(); 6];
        let mut i = 0;
        for sign in [1i8, -1] {
            for idx in 0u8..3 {
                out[i] = CardanoBranch {
                    sqrt_sign: sign,
                    cbrt_index: idx,
                };
                i += 1;
            }
        }
        out
    }
}

impl Default for CardanoBranch {
    /// Principal branches: positive square root sign, cube-root index 0.
    fn default() -> Self {
        CardanoBranch {
            sqrt_sign: 1,
            cbrt_index: 0,
        }
    }
}

/// Polynomial with complex coefficients in ascending degree order.
///
/// The coefficient list is non-empty and, except for the zero polynomial
/// produced by differentiating a constant, carries a nonzero leading
/// coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Cx>,
}

impl Polynomial {
    /// Builds a polynomial, trimming exactly-zero leading coefficients.
    pub fn new(coeffs: Vec<Cx>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last() == Some(&Cx::ZERO) {
            coeffs.pop();
        }
        if coeffs.is_empty() || coeffs == [Cx::ZERO] {
            return Err(Error::InvariantViolation(
                "polynomial must have a nonzero coefficient".into(),
            ));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvariantViolation(
                "polynomial coefficients must be finite".into(),
            ));
        }
        Ok(Polynomial { coeffs })
    }

    /// `leading * (x - r_1) ... (x - r_n)` expanded to coefficients.
    pub fn from_roots(leading: Cx, roots: &[Cx]) -> Result<Self> {
        let mut coeffs = vec![leading];
        for &r in roots {
            coeffs.push(Cx::ZERO);
            for i in (0..coeffs.len() - 1).rev() {
                let c = coeffs[i];
                coeffs[i + 1] += c;
                coeffs[i] = -r * c;
            }
        }
        Polynomial::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Cx] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Cx) -> Cx {
        let mut acc = Cx::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.degree() == 0 {
            return Polynomial {
                coeffs: vec![Cx::ZERO],
            };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * (i as f64))
            .collect();
        Polynomial { coeffs }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut coeffs = vec![Cx::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial { coeffs }
    }

    pub fn max_coeff_magnitude(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// All roots of `p` (with multiplicity) by the Aberth-Ehrlich simultaneous
/// iteration, in `(re, im)` order.
///
/// Guesses start on a circle around the origin with a small seeded jitter,
/// so the returned multiset is identical across runs. Iteration continues
/// until the corrections stagnate, then every root must satisfy
/// `|p(r)| <= tol * (1 + max |coeff|) * max(1, |r|)^degree`; the
/// `max(1, |r|)^degree` factor keeps the bound meaningful for roots outside
/// the unit disk, where plain evaluation noise already grows at that rate.
pub fn solve_poly(p: &Polynomial, tol: f64) -> Result<Vec<Cx>> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let n = p.degree();
    if n == 0 || n > 12 {
        return Err(Error::UnsupportedDegree(n));
    }

    let lead = p.coeffs[n];
    let monic: Vec<Cx> = p.coeffs.iter().map(|&c| c / lead).collect();
    let monic = Polynomial { coeffs: monic };
    if n == 1 {
        return Ok(vec![-monic.coeffs[0]]);
    }
    let dmonic = monic.derivative();

    // Cauchy-style inclusion radius for the initial circle.
    let radius = 1.0
        + monic.coeffs[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(SOLVER_SEED);
    let mut z: Vec<Cx> = (0..n)
        .map(|j| {
            let jitter: f64 = rng.random_range(-0.05..0.05);
            let theta = (j as f64 + 0.25 + jitter) * std::f64::consts::TAU / (n as f64);
            radius * cx(theta.cos(), theta.sin())
        })
        .collect();

    // per-root residual measure against the scale-aware bound
    let base = tol * (1.0 + p.max_coeff_magnitude()) / lead.norm();
    let ratio = |r: Cx, value: f64| -> f64 {
        value / (base * r.norm().max(1.0).powi(n as i32))
    };

    // Iterate to stagnation and keep the best sweep; the residual bound is
    // only a final gate. Stopping as soon as the bound is met would leave
    // avoidable error whenever the bound is loose.
    let max_iter = 1000u32;
    let mut best_worst = f64::INFINITY;
    let mut best_z = z.clone();
    let mut stale = 0u32;
    for _ in 0..max_iter {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let pi = monic.eval(z[i]);
            if pi == Cx::ZERO {
                continue;
            }
            let di = dmonic.eval(z[i]);
            let w = if di == Cx::ZERO {
                // flat spot: nudge instead of dividing by zero
                cx(1e-6 * (1.0 + z[i].norm()), 0.0)
            } else {
                pi / di
            };
            let mut sum = Cx::ZERO;
            for j in 0..n {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff == Cx::ZERO {
                        continue;
                    }
                    sum += diff.finv();
                }
            }
            let denom = Cx::ONE - w * sum;
            let step = if denom == Cx::ZERO { w } else { w / denom };
            z[i] -= step;
            let rel = step.norm() / (1.0 + z[i].norm());
            if rel > max_step {
                max_step = rel;
            }
        }
        let worst = z
            .iter()
            .map(|&r| ratio(r, monic.eval(r).norm()))
            .fold(0.0, f64::max);
        if worst < best_worst * 0.9999 {
            best_worst = worst;
            best_z.copy_from_slice(&z);
            stale = 0;
        } else {
            stale += 1;
        }
        // corrections at rounding level, or no progress for a long stretch
        // (multiple roots orbit their cluster without improving)
        if max_step < 1e-13 || stale > 60 {
            break;
        }
    }

    if best_worst > 1.0 {
        return Err(Error::NonConvergence {
            iterations: max_iter,
            residual: best_worst,
        });
    }
    best_z.sort_by(lex_cmp);
    Ok(best_z)
}

/// Threshold below which the branch formula's cube root is considered
/// degenerate (0/0 at k = 0) and `hesse_roots` refuses to proceed.
pub fn alpha_degeneracy_threshold(k: Cx) -> f64 {
    1e-8 * (1.0 + k.norm_sqr())
}

/// Relative tolerance for rejecting `k^3 = 1`, where the cubic has a
/// repeated root.
const HESSE_DOMAIN_TOL: f64 = 1e-10;

/// The three roots of `z^3 - 3k z^2 + 4` by the explicit radical formula
///
/// `z_v = k - rho^v a - rho^(-v) k^2 / a`,  `a^3 = 2 - k^3 + 2 i sqrt(k^3 - 1)`.
///
/// The root *set* does not depend on `branch`; the branch only relabels
/// which root is which. The two square-root branches of the radicand
/// multiply to `k^6`, so the smaller one is recovered from the larger by
/// division, which keeps the formula accurate near `k = 0` where the naive
/// expression cancels catastrophically.
pub fn hesse_roots(k: Cx, branch: CardanoBranch) -> Result<(Cx, Cx, Cx)> {
    let k3 = k * k * k;
    if (k3 - Cx::ONE).norm() <= HESSE_DOMAIN_TOL * (1.0 + k3.norm()) {
        return Err(Error::Domain(format!(
            "k^3 = 1 (k = {k}): the cubic has a repeated root"
        )));
    }

    let s = (k3 - Cx::ONE).sqrt(); // principal branch
    let two_i_s = cx(0.0, 2.0) * s;
    let base = cx(2.0, 0.0) - k3;
    let t_plus = base + two_i_s;
    let t_minus = base - two_i_s;
    let k6 = k3 * k3;
    // re-derive the smaller radicand from t_plus * t_minus = k^6
    let (t_plus, t_minus) = if t_plus.norm() >= t_minus.norm() {
        (t_plus, if t_plus == Cx::ZERO { t_minus } else { k6 / t_plus })
    } else {
        (if t_minus == Cx::ZERO { t_plus } else { k6 / t_minus }, t_minus)
    };
    let t = if branch.sqrt_sign() == 1 { t_plus } else { t_minus };

    let alpha0 = t.cbrt(); // principal branch
    let rot = match branch.cbrt_index() {
        0 => Cx::ONE,
        1 => RHO,
        _ => RHO2,
    };
    let alpha = alpha0 * rot;
    if alpha.norm() < alpha_degeneracy_threshold(k) {
        return Err(Error::DegenerateAlpha {
            magnitude: alpha.norm(),
        });
    }

    let beta = k * k / alpha;
    let root = |nu: u32| -> Cx {
        let (rho_nu, rho_neg_nu) = match nu % 3 {
            1 => (RHO, RHO2),
            2 => (RHO2, RHO),
            _ => (Cx::ONE, Cx::ONE),
        };
        k - rho_nu * alpha - rho_neg_nu * beta
    };
    Ok((root(1), root(2), root(3)))
}

/// Discriminant of a quadratic or cubic, normalized as
/// `lead^2 * prod_{i<j} (r_i - r_j)^2`.
///
/// With this scaling a monic cubic keeps its textbook discriminant while
/// `4x^3 - g2 x - g3` yields `g2^3 - 27 g3^2` directly.
pub fn discriminant(p: &Polynomial) -> Result<Cx> {
    match p.degree() {
        2 => {
            let (c, b, a) = (p.coeffs[0], p.coeffs[1], p.coeffs[2]);
            Ok(b * b - 4.0 * a * c)
        }
        3 => {
            let (d, c, b, a) = (p.coeffs[0], p.coeffs[1], p.coeffs[2], p.coeffs[3]);
            let standard = 18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c
                - 4.0 * a * c * c * c
                - 27.0 * a * a * d * d;
            Ok(standard / (a * a))
        }
        n => Err(Error::UnsupportedDegree(n)),
    }
}

/// Coefficients of the Hesse cubic `z^3 - 3k z^2 + 4`.
pub fn hesse_cubic(k: Cx) -> Polynomial {
    Polynomial {
        coeffs: vec![cx(4.0, 0.0), Cx::ZERO, -3.0 * k, Cx::ONE],
    }
}

/// Coefficients of the Weierstrass cubic `4x^3 - g2 x - g3`.
pub fn weierstrass_cubic(g2: Cx, g3: Cx) -> Polynomial {
    Polynomial {
        coeffs: vec![-g3, -g2, Cx::ZERO, cx(4.0, 0.0)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_cx_close(a: Cx, b: Cx, tol: f64) {
        assert!(
            (a - b).norm() <= tol,
            "expected {b}, got {a} (|diff| = {:.3e}, tol {tol:.1e})",
            (a - b).norm()
        );
    }

    /// Greedy min-cost matching for small root sets.
    fn match_sets(mut got: Vec<Cx>, mut want: Vec<Cx>, tol: f64) {
        assert_eq!(got.len(), want.len());
        while let Some(g) = got.pop() {
            let (idx, dist) = want
                .iter()
                .enumerate()
                .map(|(i, w)| (i, (g - w).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            assert!(
                dist <= tol,
                "root {g} has no partner within {tol:.1e} (closest {dist:.3e})"
            );
            want.remove(idx);
        }
    }

    #[test]
    fn rho_is_the_cube_root_of_unity() {
        assert_cx_close(RHO * RHO * RHO, Cx::ONE, 1e-15);
        assert_cx_close(RHO * RHO, RHO2, 1e-15);
        assert_cx_close(RHO + RHO2 + Cx::ONE, Cx::ZERO, 1e-15);
        assert_eq!(RHO.im, 3f64.sqrt() / 2.0);
    }

    #[test]
    fn chordal_matches_hand_values() {
        let zero = SpherePoint::finite(0.0, 0.0);
        let one = SpherePoint::finite(1.0, 0.0);
        assert!((chordal(zero, one) - 2.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!((chordal(zero, SpherePoint::INFINITY) - 2.0).abs() < 1e-15);
        assert_eq!(chordal(SpherePoint::INFINITY, SpherePoint::INFINITY), 0.0);
        // huge coordinates stay finite
        let big = SpherePoint::finite(1e200, -3e200);
        assert!(chordal(big, SpherePoint::INFINITY) < 1e-190);
    }

    #[test]
    fn polynomial_eval_and_from_roots_agree() {
        let p = Polynomial::from_roots(cx(2.0, 0.0), &[Cx::ONE, -Cx::ONE, cx(0.0, 3.0)]).unwrap();
        assert_eq!(p.degree(), 3);
        for z in [cx(0.3, -0.2), cx(-1.7, 0.4), cx(5.0, 5.0)] {
            let direct = 2.0 * (z - Cx::ONE) * (z + Cx::ONE) * (z - cx(0.0, 3.0));
            assert_cx_close(p.eval(z), direct, 1e-12 * (1.0 + direct.norm()));
        }
    }

    #[test]
    fn polynomial_rejects_zero() {
        assert!(Polynomial::new(vec![]).is_err());
        assert!(Polynomial::new(vec![Cx::ZERO, Cx::ZERO]).is_err());
    }

    #[test]
    fn solve_quadratic_pure_imaginary_pair() {
        // x^2 + 1
        let p = Polynomial::new(vec![Cx::ONE, Cx::ZERO, Cx::ONE]).unwrap();
        let roots = solve_poly(&p, 1e-9).unwrap();
        match_sets(roots, vec![cx(0.0, 1.0), cx(0.0, -1.0)], 1e-10);
    }

    #[test]
    fn solve_cubic_radial_roots() {
        // z^3 + 4: the cube roots of -4
        let p = Polynomial::new(vec![cx(4.0, 0.0), Cx::ZERO, Cx::ZERO, Cx::ONE]).unwrap();
        let roots = solve_poly(&p, 1e-9).unwrap();
        let r = 4f64.powf(1.0 / 3.0);
        let want = vec![
            r * cx((std::f64::consts::PI / 3.0).cos(), (std::f64::consts::PI / 3.0).sin()),
            cx(-r, 0.0),
            r * cx((std::f64::consts::PI / 3.0).cos(), -(std::f64::consts::PI / 3.0).sin()),
        ];
        match_sets(roots, want, 1e-10);
    }

    #[test]
    fn solve_weierstrass_cubic_with_integer_roots() {
        // expansion oracle: 4x(x-1)(x+1) = 4x^3 - 4x, i.e. (g2, g3) = (4, 0)
        let expanded = Polynomial::from_roots(cx(4.0, 0.0), &[Cx::ZERO, Cx::ONE, -Cx::ONE]).unwrap();
        assert_eq!(expanded, weierstrass_cubic(cx(4.0, 0.0), Cx::ZERO));
        let roots = solve_poly(&expanded, 1e-9).unwrap();
        match_sets(roots, vec![cx(-1.0, 0.0), Cx::ZERO, Cx::ONE], 1e-10);
    }

    #[test]
    fn solve_poly_is_deterministic() {
        let p = Polynomial::new(vec![cx(1.0, 2.0), cx(-0.5, 0.0), cx(3.0, -1.0), Cx::ONE]).unwrap();
        let a = solve_poly(&p, 1e-9).unwrap();
        let b = solve_poly(&p, 1e-9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn solve_poly_rejects_bad_degrees() {
        let constant = Polynomial::new(vec![cx(3.0, 0.0)]).unwrap();
        assert!(matches!(
            solve_poly(&constant, 1e-9),
            Err(Error::UnsupportedDegree(0))
        ));
        let mut coeffs = vec![Cx::ZERO; 14];
        coeffs[13] = Cx::ONE;
        let big = Polynomial::new(coeffs).unwrap();
        assert!(matches!(
            solve_poly(&big, 1e-9),
            Err(Error::UnsupportedDegree(13))
        ));
    }

    #[test]
    fn hesse_roots_rejects_unit_cube() {
        for k in [Cx::ONE, RHO, RHO2] {
            assert!(matches!(
                hesse_roots(k, CardanoBranch::default()),
                Err(Error::Domain(_))
            ));
        }
    }

    #[test]
    fn hesse_roots_degenerate_alpha_at_origin() {
        // principal square root of -1 is i, so the radicand 2 - 0 + 2i*i = 0
        let err = hesse_roots(Cx::ZERO, CardanoBranch::default()).unwrap_err();
        assert!(matches!(err, Error::DegenerateAlpha { .. }));
        // the generic solver picks it up: roots of z^3 + 4
        let fallback = solve_poly(&hesse_cubic(Cx::ZERO), 1e-9).unwrap();
        let direct = solve_poly(
            &Polynomial::new(vec![cx(4.0, 0.0), Cx::ZERO, Cx::ZERO, Cx::ONE]).unwrap(),
            1e-9,
        )
        .unwrap();
        match_sets(fallback, direct, 1e-10);
        // the opposite square-root branch is fine at k = 0
        let other = hesse_roots(Cx::ZERO, CardanoBranch::new(-1, 0).unwrap()).unwrap();
        let got = vec![other.0, other.1, other.2];
        for &z in &got {
            assert_cx_close(z * z * z + cx(4.0, 0.0), Cx::ZERO, 1e-12);
        }
    }

    #[test]
    fn hesse_root_sum_is_trace() {
        let k = cx(1.3, -0.7);
        let (z1, z2, z3) = hesse_roots(k, CardanoBranch::default()).unwrap();
        assert_cx_close(z1 + z2 + z3, 3.0 * k, 1e-12);
    }

    #[test]
    fn hesse_roots_satisfy_cubic_for_all_branches() {
        let k = cx(-0.4, 2.1);
        let p = hesse_cubic(k);
        let scale = 1.0 + p.max_coeff_magnitude();
        for branch in CardanoBranch::all() {
            let (z1, z2, z3) = hesse_roots(k, branch).unwrap();
            for z in [z1, z2, z3] {
                assert!(p.eval(z).norm() / scale < 1e-12);
            }
        }
    }

    #[test]
    fn discriminant_golden_values() {
        // 4x^3 - g2 x - g3 with (g2, g3) = (0, 1): g2^3 - 27 g3^2 = -27
        let d = discriminant(&weierstrass_cubic(Cx::ZERO, Cx::ONE)).unwrap();
        assert_cx_close(d, cx(-27.0, 0.0), 1e-12);
        // z^3 - 3k z^2 + 4 with k = 2: 432 (k^3 - 1) = 3024
        let d = discriminant(&hesse_cubic(cx(2.0, 0.0))).unwrap();
        assert_cx_close(d, cx(3024.0, 0.0), 1e-9);
        // x^2 + 1: b^2 - 4ac = -4
        let p = Polynomial::new(vec![Cx::ONE, Cx::ZERO, Cx::ONE]).unwrap();
        assert_cx_close(discriminant(&p).unwrap(), cx(-4.0, 0.0), 1e-12);
    }

    #[test]
    fn discriminant_unsupported_degree() {
        let p = Polynomial::new(vec![Cx::ONE, Cx::ONE]).unwrap();
        assert!(matches!(discriminant(&p), Err(Error::UnsupportedDegree(1))));
    }

    #[test]
    fn discriminant_zero_iff_repeated_root() {
        let repeated = Polynomial::from_roots(Cx::ONE, &[cx(2.0, 1.0), cx(2.0, 1.0), Cx::ONE]).unwrap();
        assert!(discriminant(&repeated).unwrap().norm() < 1e-12);
        let distinct = Polynomial::from_roots(Cx::ONE, &[cx(2.0, 1.0), cx(-2.0, 1.0), Cx::ONE]).unwrap();
        assert!(discriminant(&distinct).unwrap().norm() > 1.0);
    }
}
