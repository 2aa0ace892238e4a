//! Shared helpers for the integration suites: seeded sampling and
//! tolerance-aware assertions.

#![allow(dead_code)]

use fourpoints::moebius::{cross_ratio_points, FourPoints, MoebiusMap};
use fourpoints::numerics::{cx, Cx, SpherePoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform complex value in the square of the given half-width.
pub fn rand_cx(rng: &mut ChaCha8Rng, half_width: f64) -> Cx {
    cx(
        rng.random_range(-half_width..half_width),
        rng.random_range(-half_width..half_width),
    )
}

/// Random cross ratio with |lambda| <= 10 at distance >= 1e-3 from 0 and 1.
pub fn rand_lambda(rng: &mut ChaCha8Rng) -> Cx {
    loop {
        let l = rand_cx(rng, 10.0);
        if l.norm() <= 10.0 && l.norm() >= 1e-3 && (l - Cx::ONE).norm() >= 1e-3 {
            return l;
        }
    }
}

/// Random Hesse parameter with |k| <= `radius`, |k| >= 1e-2 and
/// |k^3 - 1| >= 1e-2.
pub fn rand_hesse_k(rng: &mut ChaCha8Rng, radius: f64) -> Cx {
    loop {
        let k = rand_cx(rng, radius);
        let k3 = k * k * k;
        if k.norm() <= radius && k.norm() >= 1e-2 && (k3 - Cx::ONE).norm() >= 1e-2 {
            return k;
        }
    }
}

/// Random finite quadruple in general position: pairwise separations at
/// least 0.15 and |Im chi| >= 5e-3.
pub fn rand_general_quad(rng: &mut ChaCha8Rng) -> FourPoints {
    loop {
        let zs: Vec<Cx> = (0..4).map(|_| rand_cx(rng, 2.0)).collect();
        let mut ok = true;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if (zs[i] - zs[j]).norm() < 0.15 {
                    ok = false;
                }
            }
        }
        if !ok {
            continue;
        }
        let pts = match FourPoints::new(zs[0].into(), zs[1].into(), zs[2].into(), zs[3].into()) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let chi = cross_ratio_points(&pts).unwrap();
        if chi.im.abs() >= 5e-3 {
            return pts;
        }
    }
}

/// Random well-conditioned Möbius map (normalized determinant >= 0.1).
pub fn rand_moebius(rng: &mut ChaCha8Rng) -> MoebiusMap {
    loop {
        let m = MoebiusMap::new(
            rand_cx(rng, 1.0),
            rand_cx(rng, 1.0),
            rand_cx(rng, 1.0),
            rand_cx(rng, 1.0),
        );
        if let Ok(m) = m {
            if m.determinant().norm() >= 0.1 {
                return m;
            }
        }
    }
}

pub fn finite(p: SpherePoint) -> Cx {
    p.value().expect("expected a finite sphere point")
}

pub fn assert_close(a: Cx, b: Cx, tol: f64, what: &str) {
    let d = (a - b).norm();
    assert!(d <= tol, "{what}: {a} vs {b}, |diff| = {d:.3e} > {tol:.1e}");
}

pub fn assert_rel_close(a: Cx, b: Cx, tol: f64, what: &str) {
    let scale = 1.0 + a.norm().max(b.norm());
    let d = (a - b).norm() / scale;
    assert!(d <= tol, "{what}: {a} vs {b}, rel {d:.3e} > {tol:.1e}");
}

/// Asserts two root multisets match within `tol` (scaled by magnitude),
/// using greedy nearest matching.
pub fn assert_root_sets_match(got: &[Cx], want: &[Cx], tol: f64, what: &str) {
    assert_eq!(got.len(), want.len(), "{what}: set sizes differ");
    let mut remaining: Vec<Cx> = want.to_vec();
    for g in got {
        let (idx, dist) = remaining
            .iter()
            .enumerate()
            .map(|(i, w)| (i, (g - w).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty");
        let bound = tol * (1.0 + g.norm());
        assert!(
            dist <= bound,
            "{what}: root {g} unmatched, nearest at {dist:.3e} (> {bound:.1e})"
        );
        remaining.remove(idx);
    }
}
