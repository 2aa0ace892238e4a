//! Property suites for the per-module invariants: dual-route agreement,
//! group actions, round trips and conversion consistency.

mod common;

use common::*;
use fourpoints::forms::{
    branch_points, convert, is_isomorphic, weierstrass_from_points, CurveForm, FormKind,
};
use fourpoints::invariants::{j_of_points, HasJInvariant};
use fourpoints::moebius::{
    canonicalize, cross_ratio, cross_ratio_orbit, cross_ratio_points, klein_involutions,
    map_from_triple, orbit_values,
};
use fourpoints::numerics::{
    chordal, cx, discriminant, hesse_cubic, hesse_roots, lex_cmp, solve_poly, CardanoBranch, Cx,
    Polynomial, SpherePoint,
};
use fourpoints::shape::shape_of;
use proptest::prelude::*;

const INF: SpherePoint = SpherePoint::Infinity;

#[test]
fn cross_ratio_formula_agrees_with_moebius_definition() {
    let mut r = rng(0xA001);
    for _ in 0..1000 {
        let zs: Vec<Cx> = (0..4).map(|_| rand_cx(&mut r, 3.0)).collect();
        if (0..4).any(|i| ((i + 1)..4).any(|j| (zs[i] - zs[j]).norm() < 0.05)) {
            continue;
        }
        let chi = cross_ratio(zs[0].into(), zs[1].into(), zs[2].into(), zs[3].into()).unwrap();
        let m = map_from_triple(zs[0].into(), zs[1].into(), zs[2].into()).unwrap();
        let via_map = finite(m.apply(zs[3].into()));
        assert_rel_close(chi, via_map, 1e-10, "formula vs mu(z4)");
    }
}

#[test]
fn cross_ratio_is_moebius_invariant() {
    let mut r = rng(0xA002);
    let mut done = 0;
    while done < 500 {
        let pts = rand_general_quad(&mut r);
        let m = rand_moebius(&mut r);
        let mapped = match pts.map(&m) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let a = cross_ratio_points(&pts).unwrap();
        let b = cross_ratio_points(&mapped).unwrap();
        assert_rel_close(a, b, 1e-9, "chi under a Möbius map");
        done += 1;
    }
}

#[test]
fn orbit_is_closed_under_its_substitutions() {
    let mut r = rng(0xA003);
    for _ in 0..300 {
        let lambda = rand_lambda(&mut r);
        let orbit = cross_ratio_orbit(lambda).unwrap();
        for &member in orbit.values() {
            for image in orbit_values(member) {
                assert!(
                    orbit.contains(image, 1e-7),
                    "orbit of {lambda} not closed: {member} -> {image}"
                );
            }
        }
    }
}

#[test]
fn klein_involutions_square_to_identity() {
    let mut r = rng(0xA004);
    for _ in 0..200 {
        let pts = rand_general_quad(&mut r);
        let maps = match klein_involutions(&pts) {
            Ok(m) => m,
            Err(_) => continue, // skip ill-conditioned samples
        };
        for m in maps {
            let twice = m.compose(&m).unwrap();
            assert!(
                twice.is_identity(1e-9),
                "involution squared is {twice:?} for {pts:?}"
            );
        }
    }
}

#[test]
fn canonicalize_hits_the_standard_set() {
    let mut r = rng(0xA005);
    for _ in 0..300 {
        let pts = rand_general_quad(&mut r);
        let (lambda, m) = canonicalize(&pts).unwrap();
        let image = pts.map(&m).unwrap();
        let targets = [
            SpherePoint::Finite(Cx::ZERO),
            SpherePoint::Finite(Cx::ONE),
            INF,
            SpherePoint::Finite(lambda),
        ];
        for t in targets {
            let hit = image
                .points()
                .iter()
                .any(|&p| chordal(p, t) <= 1e-8);
            assert!(hit, "canonical image misses {t}: {image:?}");
        }
    }
}

#[test]
fn hesse_roots_branch_invariance() {
    let mut r = rng(0xA006);
    for _ in 0..100 {
        let k = rand_hesse_k(&mut r, 3.0);
        let branches = CardanoBranch::all();
        let sets: Vec<Vec<Cx>> = branches
            .iter()
            .map(|&b| {
                let (z1, z2, z3) = hesse_roots(k, b).unwrap();
                let mut v = vec![z1, z2, z3];
                v.sort_by(lex_cmp);
                v
            })
            .collect();
        for other in &sets[1..] {
            assert_root_sets_match(other, &sets[0], 1e-8, "branch invariance");
        }
    }
}

#[test]
fn discriminant_routes_agree() {
    // coefficient formula vs lead^2 * prod (ri - rj)^2 from the roots
    let mut r = rng(0xA007);
    for _ in 0..300 {
        let lead = rand_cx(&mut r, 2.0) + cx(3.0, 0.0);
        let roots: Vec<Cx> = (0..3).map(|_| rand_cx(&mut r, 2.0)).collect();
        let p = Polynomial::from_roots(lead, &roots).unwrap();
        let via_coeffs = discriminant(&p).unwrap();
        let mut prod = Cx::ONE;
        for i in 0..3 {
            for j in (i + 1)..3 {
                let d = roots[i] - roots[j];
                prod *= d * d;
            }
        }
        let via_roots = lead * lead * prod;
        assert_rel_close(via_coeffs, via_roots, 1e-10, "discriminant routes");
    }
    // the Weierstrass cubic identity for random (g2, g3)
    for _ in 0..300 {
        let g2 = rand_cx(&mut r, 3.0);
        let g3 = rand_cx(&mut r, 3.0);
        let p = fourpoints::numerics::weierstrass_cubic(g2, g3);
        let d = discriminant(&p).unwrap();
        let want = g2 * g2 * g2 - 27.0 * g3 * g3;
        assert_rel_close(d, want, 1e-12, "g2^3 - 27 g3^2");
    }
}

#[test]
fn solver_handles_a_multiple_root_cluster() {
    // (z - 1)^3 (z + 2)^2
    let p = Polynomial::from_roots(
        Cx::ONE,
        &[Cx::ONE, Cx::ONE, Cx::ONE, cx(-2.0, 0.0), cx(-2.0, 0.0)],
    )
    .unwrap();
    let roots = solve_poly(&p, 1e-9).unwrap();
    assert_eq!(roots.len(), 5);
    let near_one = roots.iter().filter(|r| (*r - Cx::ONE).norm() < 1e-3).count();
    let near_neg_two = roots
        .iter()
        .filter(|r| (*r + cx(2.0, 0.0)).norm() < 1e-5)
        .count();
    assert_eq!(near_one, 3, "triple root cluster: {roots:?}");
    assert_eq!(near_neg_two, 2, "double root cluster: {roots:?}");
}

#[test]
fn j_of_points_is_permutation_invariant() {
    fn permutations() -> Vec<[usize; 4]> {
        let mut out = Vec::with_capacity(24);
        let mut idx = [0usize, 1, 2, 3];
        heap_permutations(&mut idx, 4, &mut out);
        out
    }
    fn heap_permutations(arr: &mut [usize; 4], k: usize, out: &mut Vec<[usize; 4]>) {
        if k == 1 {
            out.push(*arr);
            return;
        }
        for i in 0..k {
            heap_permutations(arr, k - 1, out);
            if k.is_multiple_of(2) {
                arr.swap(i, k - 1);
            } else {
                arr.swap(0, k - 1);
            }
        }
    }

    let mut r = rng(0xA008);
    let perms = permutations();
    assert_eq!(perms.len(), 24);
    for _ in 0..20 {
        let pts = rand_general_quad(&mut r);
        let j0 = finite(j_of_points(&pts).unwrap());
        for perm in &perms {
            let j = finite(j_of_points(&pts.permuted(*perm).unwrap()).unwrap());
            assert_rel_close(j, j0, 1e-9, "J under reordering");
        }
    }
}

/// One valid random parameter set per form kind.
fn random_form(kind: FormKind, r: &mut rand_chacha::ChaCha8Rng) -> CurveForm {
    loop {
        let candidate = match kind {
            FormKind::Weierstrass => {
                let zs: Vec<Cx> = (0..3).map(|_| rand_cx(r, 2.0)).collect();
                if (zs[0] - zs[1]).norm() < 0.1
                    || (zs[0] - zs[2]).norm() < 0.1
                    || (zs[1] - zs[2]).norm() < 0.1
                {
                    continue;
                }
                let (g2, g3) = weierstrass_from_points(zs[0], zs[1], zs[2]).unwrap();
                CurveForm::weierstrass(g2, g3)
            }
            FormKind::Legendre => CurveForm::legendre(rand_lambda(r)),
            FormKind::Jacobi => {
                let k = rand_cx(r, 2.5);
                let k2 = k * k;
                if k.norm() < 0.15 || (k2 - Cx::ONE).norm() < 1e-2 || (k2 + Cx::ONE).norm() < 1e-2
                {
                    continue;
                }
                CurveForm::jacobi(k)
            }
            FormKind::Symmetric | FormKind::Edwards => {
                let a = rand_cx(r, 2.5);
                let a4 = a * a * a * a;
                if a.norm() < 0.15 || (a4 - Cx::ONE).norm() < 1e-2 {
                    continue;
                }
                if kind == FormKind::Symmetric {
                    CurveForm::symmetric(a)
                } else {
                    CurveForm::edwards(a)
                }
            }
            FormKind::Hesse => CurveForm::hesse(rand_hesse_k(r, 3.0)),
        };
        if let Ok(f) = candidate {
            return f;
        }
    }
}

#[test]
fn conversion_preserves_j_across_all_kinds() {
    let kinds = [
        FormKind::Weierstrass,
        FormKind::Legendre,
        FormKind::Jacobi,
        FormKind::Symmetric,
        FormKind::Edwards,
        FormKind::Hesse,
    ];
    let mut r = rng(0xA009);
    for &source in &kinds {
        for _ in 0..200 {
            let f = random_form(source, &mut r);
            let j0 = finite(f.j().unwrap());
            for &target in &kinds {
                if target == source {
                    continue;
                }
                let g = convert(&f, target).unwrap();
                assert_eq!(g.kind(), target);
                g.validate().unwrap();
                let j1 = finite(g.j().unwrap());
                let rel = (j0 - j1).norm() / (1.0 + j0.norm().max(j1.norm()));
                assert!(
                    rel <= 1e-7,
                    "convert {}->{} drifted: J {j0} vs {j1} (rel {rel:.3e})",
                    source.name(),
                    target.name()
                );
                assert!(is_isomorphic(&f, &g).unwrap());
            }
        }
    }
}

#[test]
fn weierstrass_centroid_and_discriminant_properties() {
    let mut r = rng(0xA00A);
    for _ in 0..500 {
        let zs: Vec<Cx> = (0..3).map(|_| rand_cx(&mut r, 5.0)).collect();
        if (zs[0] - zs[1]).norm() < 0.05
            || (zs[0] - zs[2]).norm() < 0.05
            || (zs[1] - zs[2]).norm() < 0.05
        {
            continue;
        }
        let (g2, g3) = weierstrass_from_points(zs[0], zs[1], zs[2]).unwrap();
        // the recentered roots sum to zero, so the cubic has no x^2 term and
        // its discriminant is nonzero
        let scale = 1.0 + zs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let centroid = (zs[0] + zs[1] + zs[2]) / 3.0;
        let sum: Cx = zs.iter().map(|z| z - centroid).sum();
        assert!(sum.norm() <= 1e-12 * scale, "centroid residual {sum}");
        let disc = g2 * g2 * g2 - 27.0 * g3 * g3;
        assert!(disc.norm() > 0.0);
        CurveForm::weierstrass(g2, g3).unwrap();
    }
}

#[test]
fn weierstrass_scaling_gives_isomorphic_curves() {
    let mut r = rng(0xA00B);
    for _ in 0..200 {
        let zs: Vec<Cx> = (0..3).map(|_| rand_cx(&mut r, 2.0)).collect();
        if (zs[0] - zs[1]).norm() < 0.1
            || (zs[0] - zs[2]).norm() < 0.1
            || (zs[1] - zs[2]).norm() < 0.1
        {
            continue;
        }
        let c = loop {
            let c = rand_cx(&mut r, 2.0);
            if c.norm() > 0.2 {
                break c;
            }
        };
        let (g2, g3) = weierstrass_from_points(zs[0], zs[1], zs[2]).unwrap();
        let (h2, h3) = weierstrass_from_points(c * zs[0], c * zs[1], c * zs[2]).unwrap();
        let f1 = CurveForm::weierstrass(g2, g3).unwrap();
        let f2 = CurveForm::weierstrass(h2, h3).unwrap();
        assert!(is_isomorphic(&f1, &f2).unwrap());
    }
}

#[test]
fn shape_angles_are_conformally_invariant() {
    let mut r = rng(0xA00C);
    let mut done = 0;
    while done < 300 {
        let pts = rand_general_quad(&mut r);
        let m = rand_moebius(&mut r);
        let mapped = match pts.map(&m) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let sep = (0..4)
            .flat_map(|i| ((i + 1)..4).map(move |j| (i, j)))
            .map(|(i, j)| chordal(mapped.get(i), mapped.get(j)))
            .fold(f64::INFINITY, f64::min);
        if sep < 0.01 {
            continue;
        }
        let s1 = shape_of(&pts).unwrap().sorted_angles();
        let s2 = shape_of(&mapped).unwrap().sorted_angles();
        for (a, b) in s1.iter().zip(s2.iter()) {
            assert!((a - b).abs() <= 1e-8, "angles moved: {s1:?} vs {s2:?}");
        }
        done += 1;
    }
}

#[test]
fn hesse_branch_points_avoid_minus_k_collision() {
    // -k is never a root of the cubic while k^3 != 1, so the quadruple is
    // always valid
    let mut r = rng(0xA00D);
    for _ in 0..200 {
        let k = rand_hesse_k(&mut r, 3.0);
        let pts = branch_points(&CurveForm::Hesse { k }).unwrap();
        let cubic = hesse_cubic(k);
        let value = cubic.eval(-k);
        assert_rel_close(value, 4.0 * (Cx::ONE - k * k * k), 1e-12, "p(-k)");
        assert!(value.norm() > 1e-3);
        let _ = pts;
    }
}

proptest! {
    #[test]
    fn solver_meets_residual_bound_on_separated_roots(
        seeds in proptest::collection::vec((-300i32..300, -300i32..300), 2..=6)
    ) {
        let roots: Vec<Cx> = seeds.iter().map(|&(a, b)| cx(a as f64 / 50.0, b as f64 / 50.0)).collect();
        let mut ok = true;
        for i in 0..roots.len() {
            for j in (i + 1)..roots.len() {
                if (roots[i] - roots[j]).norm() < 0.08 { ok = false; }
            }
        }
        prop_assume!(ok);
        let p = Polynomial::from_roots(cx(1.5, -0.5), &roots).unwrap();
        let found = solve_poly(&p, 1e-9).unwrap();
        prop_assert_eq!(found.len(), roots.len());
        for r in &found {
            let nearest = roots.iter().map(|t| (t - r).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(nearest <= 1e-6 * (1.0 + r.norm()), "root {} off by {:.3e}", r, nearest);
        }
    }

    #[test]
    fn apex_angles_remeasure_exactly(
        alpha in 0.05f64..2.8,
        beta in 0.05f64..2.8,
    ) {
        prop_assume!(alpha + beta < std::f64::consts::PI - 0.05);
        let apex = fourpoints::shape::apex_from_angles(alpha, beta).unwrap();
        // measure the triangle (0, 1, apex) directly
        let measured_alpha = apex.arg();
        let measured_beta = ((Cx::ZERO - Cx::ONE) / (apex - Cx::ONE)).arg();
        prop_assert!((measured_alpha - alpha).abs() <= 1e-10);
        prop_assert!((measured_beta - beta).abs() <= 1e-10);
    }

    #[test]
    fn sphere_point_round_trip_through_moebius_inverse(
        re in -5.0f64..5.0,
        im in -5.0f64..5.0,
        a in -2.0f64..2.0,
        b in -2.0f64..2.0,
    ) {
        let m = fourpoints::moebius::MoebiusMap::new(cx(1.0 + a * a, b), cx(a, -b), cx(b, a), Cx::ONE);
        prop_assume!(m.is_ok());
        let m = m.unwrap();
        prop_assume!(m.determinant().norm() > 0.05);
        let z = SpherePoint::finite(re, im);
        let back = m.inverse().apply(m.apply(z));
        prop_assert!(chordal(z, back) <= 1e-9);
    }
}
