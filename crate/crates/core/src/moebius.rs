//! Möbius transformations, the cross ratio and its six-element orbit,
//! canonicalization of quadruples to {0, 1, lambda, inf}, and the
//! Klein-group symmetries of a 4-point set.

use crate::error::{Error, Result};
use crate::numerics::{chordal, Cx, SpherePoint};
use crate::tol;

/// Fractional-linear map `z -> (az + b) / (cz + d)`.
///
/// Stored normalized: the largest-magnitude coefficient (ties broken in
/// a, b, c, d order) is divided out, so it equals exactly 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    a: Cx,
    b: Cx,
    c: Cx,
    d: Cx,
}

impl MoebiusMap {
    pub fn new(a: Cx, b: Cx, c: Cx, d: Cx) -> Result<Self> {
        let mags = [a.norm(), b.norm(), c.norm(), d.norm()];
        let mut best = 0;
        for i in 1..4 {
            if mags[i] > mags[best] {
                best = i;
            }
        }
        if mags[best] == 0.0 || !mags[best].is_finite() {
            return Err(Error::DegenerateMap(0.0));
        }
        let w = [a, b, c, d][best];
        let (a, b, c, d) = (a / w, b / w, c / w, d / w);
        let det = a * d - b * c;
        if det.norm() <= tol::MAP_DET {
            return Err(Error::DegenerateMap(det.norm()));
        }
        Ok(MoebiusMap { a, b, c, d })
    }

    pub fn identity() -> Self {
        MoebiusMap {
            a: Cx::ONE,
            b: Cx::ZERO,
            c: Cx::ZERO,
            d: Cx::ONE,
        }
    }

    pub fn coefficients(&self) -> (Cx, Cx, Cx, Cx) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn determinant(&self) -> Cx {
        self.a * self.d - self.b * self.c
    }

    /// True for affine maps `az + b` (no pole in the finite plane).
    pub fn is_affine(&self) -> bool {
        self.c == Cx::ZERO
    }

    /// Evaluates the map, sending the pole to infinity and infinity to a/c.
    pub fn apply(&self, p: SpherePoint) -> SpherePoint {
        match p {
            SpherePoint::Infinity => {
                if self.c == Cx::ZERO {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite(self.a / self.c)
                }
            }
            SpherePoint::Finite(z) => {
                let denom = self.c * z + self.d;
                if denom == Cx::ZERO {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite((self.a * z + self.b) / denom)
                }
            }
        }
    }

    /// The inverse map `z -> (dz - b) / (-cz + a)`.
    pub fn inverse(&self) -> Self {
        // determinant is unchanged up to sign conventions, so this cannot fail
        MoebiusMap::new(self.d, -self.b, -self.c, self.a)
            .expect("inverse of a valid Möbius map is valid")
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &MoebiusMap) -> Result<Self> {
        MoebiusMap::new(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )
    }

    /// Coefficient-level identity check on the normalized representation.
    pub fn is_identity(&self, tolerance: f64) -> bool {
        (self.a - Cx::ONE).norm() <= tolerance
            && self.b.norm() <= tolerance
            && self.c.norm() <= tolerance
            && (self.d - Cx::ONE).norm() <= tolerance
    }
}

/// The unique Möbius map sending `(p, q, r)` orderly to `(0, 1, inf)`.
pub fn map_from_triple(p: SpherePoint, q: SpherePoint, r: SpherePoint) -> Result<MoebiusMap> {
    if chordal(p, q) <= tol::DISTINCT_CHORDAL
        || chordal(p, r) <= tol::DISTINCT_CHORDAL
        || chordal(q, r) <= tol::DISTINCT_CHORDAL
    {
        return Err(Error::DegenerateTriple);
    }
    use SpherePoint::*;
    match (p, q, r) {
        (Finite(p), Finite(q), Finite(r)) => {
            let (u, v) = (q - r, q - p);
            MoebiusMap::new(u, -p * u, v, -r * v)
        }
        (Infinity, Finite(q), Finite(r)) => MoebiusMap::new(Cx::ZERO, q - r, Cx::ONE, -r),
        (Finite(p), Infinity, Finite(r)) => MoebiusMap::new(Cx::ONE, -p, Cx::ONE, -r),
        (Finite(p), Finite(q), Infinity) => MoebiusMap::new(Cx::ONE, -p, Cx::ZERO, q - p),
        _ => unreachable!("at most one point can be infinite after the distinctness check"),
    }
}

/// Ordered quadruple of pairwise-distinct sphere points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourPoints {
    pts: [SpherePoint; 4],
}

impl FourPoints {
    pub fn new(
        p1: SpherePoint,
        p2: SpherePoint,
        p3: SpherePoint,
        p4: SpherePoint,
    ) -> Result<Self> {
        let pts = [p1, p2, p3, p4];
        for i in 0..4 {
            for j in (i + 1)..4 {
                if chordal(pts[i], pts[j]) <= tol::DISTINCT_CHORDAL {
                    return Err(Error::DegenerateInput(format!(
                        "points {} and {} coincide ({} vs {})",
                        i + 1,
                        j + 1,
                        pts[i],
                        pts[j]
                    )));
                }
            }
        }
        Ok(FourPoints { pts })
    }

    pub fn from_array(pts: [SpherePoint; 4]) -> Result<Self> {
        FourPoints::new(pts[0], pts[1], pts[2], pts[3])
    }

    pub fn points(&self) -> [SpherePoint; 4] {
        self.pts
    }

    pub fn get(&self, i: usize) -> SpherePoint {
        self.pts[i]
    }

    /// Applies a Möbius map to every point; the image is again a valid
    /// quadruple.
    pub fn map(&self, m: &MoebiusMap) -> Result<FourPoints> {
        FourPoints::from_array([
            m.apply(self.pts[0]),
            m.apply(self.pts[1]),
            m.apply(self.pts[2]),
            m.apply(self.pts[3]),
        ])
    }

    /// The quadruple reordered by `perm` (image position i takes the point
    /// previously at `perm[i]`).
    pub fn permuted(&self, perm: [usize; 4]) -> Result<FourPoints> {
        FourPoints::from_array([
            self.pts[perm[0]],
            self.pts[perm[1]],
            self.pts[perm[2]],
            self.pts[perm[3]],
        ])
    }
}

/// Cross ratio of an ordered quadruple:
/// `(z4 - z1)(z2 - z3) / ((z1 - z2)(z3 - z4))`,
/// with the limit formula substituted when one point is infinite.
///
/// For pairwise-distinct points the value is finite and avoids {0, 1}, so
/// the result is a plain complex number.
pub fn cross_ratio(
    z1: SpherePoint,
    z2: SpherePoint,
    z3: SpherePoint,
    z4: SpherePoint,
) -> Result<Cx> {
    let pts = FourPoints::new(z1, z2, z3, z4)?;
    use SpherePoint::*;
    let chi = match pts.points() {
        [Finite(a), Finite(b), Finite(c), Finite(d)] => (d - a) * (b - c) / ((a - b) * (c - d)),
        [Infinity, Finite(b), Finite(c), Finite(d)] => (b - c) / (d - c),
        [Finite(a), Infinity, Finite(c), Finite(d)] => (d - a) / (d - c),
        [Finite(a), Finite(b), Infinity, Finite(d)] => (d - a) / (b - a),
        [Finite(a), Finite(b), Finite(c), Infinity] => (b - c) / (b - a),
        _ => unreachable!("distinctness leaves at most one infinite point"),
    };
    Ok(chi)
}

/// Cross ratio of a quadruple in its stored order.
pub fn cross_ratio_points(pts: &FourPoints) -> Result<Cx> {
    let [a, b, c, d] = pts.points();
    cross_ratio(a, b, c, d)
}

/// The values equivalent to a cross ratio, deduplicated by tolerance.
///
/// Size 6 generically, 3 at the harmonic configurations and 2 at the
/// equianharmonic ones.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossRatioOrbit {
    values: Vec<Cx>,
}

impl CrossRatioOrbit {
    pub fn values(&self) -> &[Cx] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Membership up to `tolerance`, scaled by the candidate magnitude.
    pub fn contains(&self, v: Cx, tolerance: f64) -> bool {
        self.values
            .iter()
            .any(|&u| (u - v).norm() <= tolerance * (1.0 + u.norm()))
    }
}

/// The substitutions generating the orbit of a cross ratio.
pub fn orbit_values(lambda: Cx) -> [Cx; 6] {
    let one = Cx::ONE;
    [
        lambda,
        one / lambda,
        one - lambda,
        one / (one - lambda),
        lambda / (lambda - one),
        (lambda - one) / lambda,
    ]
}

/// The six equivalent cross ratios of `lambda`, deduplicated at the
/// collision configurations. Constancy of J across the members is checked
/// before the orbit is handed out.
pub fn cross_ratio_orbit(lambda: Cx) -> Result<CrossRatioOrbit> {
    if lambda.norm() <= 1e-12 || (lambda - Cx::ONE).norm() <= 1e-12 {
        return Err(Error::Domain(format!(
            "cross ratio {lambda} is too close to 0 or 1"
        )));
    }
    let candidates = orbit_values(lambda);
    let scale = candidates.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut values: Vec<Cx> = Vec::with_capacity(6);
    for v in candidates {
        if !values.iter().any(|&u| (u - v).norm() <= tol::ORBIT_DEDUP * scale) {
            values.push(v);
        }
    }

    let j_ref = crate::invariants::j_invariant(SpherePoint::Finite(lambda));
    for &v in &values {
        let j = crate::invariants::j_invariant(SpherePoint::Finite(v));
        if !crate::invariants::j_equal(j, j_ref, 1e-9) {
            return Err(Error::Internal(format!(
                "orbit member {v} of {lambda} has J = {j}, expected {j_ref}"
            )));
        }
    }
    Ok(CrossRatioOrbit { values })
}

/// Reduces a quadruple to `{0, 1, lambda, inf}`: returns the cross ratio
/// and the Möbius map realizing the reduction.
pub fn canonicalize(pts: &FourPoints) -> Result<(Cx, MoebiusMap)> {
    let [p1, p2, p3, p4] = pts.points();
    let m = map_from_triple(p1, p2, p3)?;
    match m.apply(p4) {
        SpherePoint::Finite(lambda) => Ok((lambda, m)),
        SpherePoint::Infinity => Err(Error::Internal(
            "fourth point mapped to infinity despite distinctness".into(),
        )),
    }
}

const DOUBLE_TRANSPOSITIONS: [[usize; 4]; 3] = [
    [1, 0, 3, 2], // (12)(34)
    [2, 3, 0, 1], // (13)(24)
    [3, 2, 1, 0], // (14)(23)
];

/// The three Möbius involutions permuting the quadruple by its 2+2
/// permutations; each is verified pointwise before being returned.
pub fn klein_involutions(pts: &FourPoints) -> Result<[MoebiusMap; 3]> {
    let p = pts.points();
    let to_std = map_from_triple(p[0], p[1], p[2])?;
    let mut out = [MoebiusMap::identity(); 3];
    for (slot, perm) in DOUBLE_TRANSPOSITIONS.iter().enumerate() {
        let target = map_from_triple(p[perm[0]], p[perm[1]], p[perm[2]])?;
        let m = target.inverse().compose(&to_std)?;
        for i in 0..4 {
            let image = m.apply(p[i]);
            let dist = chordal(image, p[perm[i]]);
            if dist > 1e-9 {
                return Err(Error::Internal(format!(
                    "Klein involution failed pointwise check: |{image} - {}| = {dist:.3e}",
                    p[perm[i]]
                )));
            }
        }
        out[slot] = m;
    }
    Ok(out)
}

const TRIPLE_PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// For two quadruples that both contain infinity: the affine map `az + b`
/// carrying the finite triple of `a_pts` onto that of `b_pts`, if the two
/// quadruples are Möbius equivalent (decided by J-equality). Returns `None`
/// when they are inequivalent.
pub fn affine_reduction(a_pts: &FourPoints, b_pts: &FourPoints) -> Result<Option<(Cx, Cx)>> {
    let finite_triple = |pts: &FourPoints, name: &str| -> Result<[Cx; 3]> {
        let mut finite = Vec::with_capacity(4);
        let mut saw_inf = false;
        for p in pts.points() {
            match p {
                SpherePoint::Finite(z) => finite.push(z),
                SpherePoint::Infinity => saw_inf = true,
            }
        }
        if !saw_inf {
            return Err(Error::PreconditionViolation(format!(
                "quadruple {name} does not contain the point at infinity"
            )));
        }
        Ok([finite[0], finite[1], finite[2]])
    };
    let xs = finite_triple(a_pts, "A")?;
    let ys = finite_triple(b_pts, "B")?;

    let ja = crate::invariants::j_of_points(a_pts)?;
    let jb = crate::invariants::j_of_points(b_pts)?;
    if !crate::invariants::j_equal(ja, jb, tol::J_EQUIVALENCE) {
        return Ok(None);
    }

    let scale = 1.0 + ys.iter().map(|y| y.norm()).fold(0.0, f64::max);
    for perm in TRIPLE_PERMUTATIONS {
        let (y0, y1, y2) = (ys[perm[0]], ys[perm[1]], ys[perm[2]]);
        let a = (y0 - y1) / (xs[0] - xs[1]);
        if a.norm() <= 1e-12 {
            continue;
        }
        let b = y0 - a * xs[0];
        if (a * xs[2] + b - y2).norm() <= 1e-8 * scale {
            return Ok(Some((a, b)));
        }
    }
    Err(Error::Internal(
        "quadruples are J-equivalent but no affine correspondence matched".into(),
    ))
}
