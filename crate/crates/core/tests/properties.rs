//! Randomized structural properties of every module.

use std::collections::BTreeSet;

use curvegerm::algebra::{
    extend_tower, factor_finite_field, is_irreducible, squarefree_decomposition, uni_gcd, FieldTower, UniPoly,
};
use curvegerm::bivar::BivarPoly;
use curvegerm::cli::parse_poly;
use curvegerm::localalg::{
    intersection_multiplicity, milnor_number, quotient_dim_by_fulton, quotient_dim_by_truncation,
};
use curvegerm::newton::{completion_exponent, delta_n, mu_n, r_n, s_n, ExtNat, NewtonDiagram};
use curvegerm::nondeg::{classify, innd_wrt, wnd_routes};
use curvegerm::report::{invariant_bundle, InvariantBundle};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Terms = Vec<((u32, u32), i64)>;

fn tower(p: u64) -> FieldTower {
    if p == 0 {
        FieldTower::rationals()
    } else {
        FieldTower::prime(p).unwrap()
    }
}

fn poly(p: u64, terms: &Terms) -> BivarPoly {
    BivarPoly::from_i64s(&tower(p), terms)
}

/// Germs: nonzero, no constant term.
fn germ_terms(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec(((0..=max_exp, 0..=max_exp), -6i64..=6), 1..=max_terms)
        .prop_map(|v| v.into_iter().filter(|(e, c)| *e != (0, 0) && *c != 0).collect::<Terms>())
        .prop_filter("nonzero", |v| !v.is_empty())
}

fn uni(p: u64, coeffs: &[i64]) -> UniPoly {
    UniPoly::from_i64s(&tower(p), coeffs)
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

fn any_char() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![0u64, 2, 3, 5, 7])
}

fn finite(v: ExtNat) -> Option<u64> {
    v.finite()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gcd_divides_and_leaves_coprime_cofactors(p in small_prime(), a in prop::collection::vec(-5i64..5, 1..10), b in prop::collection::vec(-5i64..5, 1..10)) {
        let (a, b) = (uni(p, &a), uni(p, &b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = uni_gcd(&a, &b).unwrap();
        prop_assert!(g.is_monic());
        prop_assert!(g.divides(&a) && g.divides(&b));
        prop_assert!(uni_gcd(&a.exact_div(&g), &b.exact_div(&g)).unwrap().is_one());
    }

    #[test]
    fn squarefree_decomposition_reconstructs(p in prop::sample::select(vec![2u64, 3, 5]), a in prop::collection::vec(-5i64..5, 1..14)) {
        let a = uni(p, &a);
        prop_assume!(!a.is_zero());
        let parts = squarefree_decomposition(&a).unwrap();
        let mut prod = UniPoly::one(a.tower());
        for (g, m) in &parts {
            prop_assert!(g.is_monic());
            prod = prod.mul(&g.pow(*m));
        }
        prop_assert_eq!(prod, a.monic());
    }

    #[test]
    fn factorization_reconstructs_into_irreducibles(p in small_prime(), a in prop::collection::vec(-5i64..5, 2..12), seed in any::<u64>()) {
        let a = uni(p, &a);
        prop_assume!(a.degree().is_some_and(|d| d >= 1));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let factors = factor_finite_field(&a, &mut rng).unwrap();
        let mut prod = UniPoly::one(a.tower());
        for (q, m) in &factors {
            prop_assert!(q.divides(&a));
            prop_assert!(is_irreducible(q).unwrap());
            prod = prod.mul(&q.pow(*m));
        }
        prop_assert_eq!(prod, a.monic());
        let again = factor_finite_field(&a, &mut ChaCha8Rng::seed_from_u64(seed ^ 1)).unwrap();
        prop_assert_eq!(factors, again);
    }

    #[test]
    fn frobenius_is_identity_after_full_degree(p in prop::sample::select(vec![2u64, 3, 5]), seed in any::<u64>()) {
        let base = tower(p);
        // T^2 + T + c irreducible for some small c; search deterministically
        let q = (0..p as i64)
            .map(|c| uni(p, &[c, 1, 1]))
            .chain((0..p as i64).map(|c| uni(p, &[c, 2 % p as i64, 1])))
            .find(|q| is_irreducible(q).unwrap())
            .unwrap();
        let ext = extend_tower(&base, &q).unwrap();
        let t = &ext.tower;
        let order = p.pow(t.total_degree() as u32);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..5 {
            let x = t.random(&mut rng);
            prop_assert_eq!(t.pow_u64(&x, order), x.clone());
            prop_assert_eq!(t.pow_u64(&t.pth_root(&x), p), x);
        }
    }

    #[test]
    fn compress_round_trips(p in any_char(), h in prop::collection::vec(-4i64..4, 1..6), h0 in 1i64..4, w in prop::sample::select(vec![(1u32, 1u32), (1, 2), (2, 1), (2, 3), (3, 2), (1, 3), (3, 1)]), alpha in 0u32..3, beta in 0u32..3) {
        let t = tower(p);
        let mut coeffs = vec![h0];
        coeffs.extend(h);
        let hp = UniPoly::from_i64s(&t, &coeffs);
        prop_assume!(!t.is_zero(&hp.coeff(0)));
        let (m0, n0) = w;
        let d = hp.deg0() as u32;
        let g = BivarPoly::from_terms(&t, hp.coeffs().iter().enumerate().map(|(k, c)| {
            let k = k as u32;
            ((alpha + k * m0, beta + (d - k) * n0), c.clone())
        }));
        let c = g.compress(m0, n0).unwrap();
        prop_assert_eq!(c.alpha, alpha);
        prop_assert_eq!(c.rehomogenize(), g);
    }

    #[test]
    fn leibniz_rule(p in any_char(), f in germ_terms(6, 5), g in germ_terms(6, 5)) {
        let (f, g) = (poly(p, &f), poly(p, &g));
        let fg = f.mul(&g);
        prop_assert_eq!(fg.partial_x(), f.partial_x().mul(&g).add(&f.mul(&g.partial_x())));
        prop_assert_eq!(fg.partial_y(), f.partial_y().mul(&g).add(&f.mul(&g.partial_y())));
    }

    #[test]
    fn weighted_parts_sum_to_input(p in any_char(), f in germ_terms(8, 8), w in prop::sample::select(vec![(1u32, 1u32), (1, 2), (2, 1), (2, 3), (3, 5)])) {
        let f = poly(p, &f);
        prop_assume!(!f.is_zero());
        let (n0, m0) = w;
        let dec = f.weighted_decomposition(n0, m0).unwrap();
        let mut sum = BivarPoly::zero(f.tower());
        let mut prev = None;
        for (d, part) in dec.parts() {
            prop_assert_eq!(part.weighted_degree_if_homogeneous(n0, m0), Some(d));
            prop_assert!(prev.is_none_or(|q| q < d));
            prev = Some(d);
            sum = sum.add(part);
        }
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn blow_up_charts_are_multiplicative(p in small_prime(), f in germ_terms(5, 4), g in germ_terms(5, 4), c in 0i64..7) {
        let (f, g) = (poly(p, &f), poly(p, &g));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let t = f.tower().clone();
        let c = t.from_i64(c);
        let (mf, mg) = (f.order().unwrap(), g.order().unwrap());
        let fg = f.mul(&g);
        prop_assert_eq!(
            fg.chart_direction(&c, mf + mg).unwrap(),
            f.chart_direction(&c, mf).unwrap().mul(&g.chart_direction(&c, mg).unwrap())
        );
        prop_assert_eq!(
            fg.chart_y_axis(mf + mg).unwrap(),
            f.chart_y_axis(mf).unwrap().mul(&g.chart_y_axis(mg).unwrap())
        );
    }
}

fn convenient_support() -> impl Strategy<Value = Vec<(u32, u32)>> {
    (1u32..12, 1u32..12, prop::collection::vec((0u32..12, 0u32..12), 0..8)).prop_map(|(a, b, mut pts)| {
        pts.push((a, 0));
        pts.push((0, b));
        pts.retain(|&e| e != (0, 0));
        pts
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn newton_number_routes_agree(support in convenient_support()) {
        let d = NewtonDiagram::from_support(&support);
        prop_assert!(d.convenient);
        let routes = d.newton_number_routes().unwrap();
        prop_assert!(routes.agree(), "{:?} on {:?}", routes, d.vertices);
    }

    #[test]
    fn newton_number_is_monotone(g in convenient_support(), extra in prop::collection::vec((0u32..12, 0u32..12), 1..4)) {
        // adding support points shrinks the region under the diagram
        let mut f = g.clone();
        f.extend(extra.into_iter().filter(|&e| e != (0, 0)));
        let (df, dg) = (NewtonDiagram::from_support(&f), NewtonDiagram::from_support(&g));
        let (mf, mg) = (df.mu_n_convenient().unwrap(), dg.mu_n_convenient().unwrap());
        prop_assert!(mf <= mg);
        let same_cone = df.clip_to_positive() == dg.clip_to_positive();
        prop_assert_eq!(mf == mg, same_cone, "{:?} vs {:?}", df.vertices, dg.vertices);
    }

    #[test]
    fn newton_invariants_are_consistent(p in any_char(), f in germ_terms(7, 6)) {
        let f = poly(p, &f);
        prop_assume!(!f.is_zero());
        let mu = mu_n(&f).unwrap();
        prop_assert_eq!(mu, mu_n(&f.swap()).unwrap());
        prop_assert_eq!(delta_n(&f).unwrap(), delta_n(&f.swap()).unwrap());
        let (r, s) = (r_n(&f).unwrap(), s_n(&f).unwrap());
        prop_assert!(s <= r);
        if let (Some(mu), Some(delta)) = (finite(mu), finite(delta_n(&f).unwrap())) {
            prop_assert_eq!(mu + r, 2 * delta + 1);
        }
    }

    #[test]
    fn nondegeneracy_implications(p in any_char(), f in germ_terms(7, 6)) {
        let f = poly(p, &f);
        prop_assume!(!f.is_zero());
        let r = classify(&f).unwrap();
        prop_assert!(!r.nnd || r.wnnd);
        prop_assert!(!r.wnnd || r.whnnd);
        let d = NewtonDiagram::of(&f).unwrap();
        for e in &d.edges {
            let (tjurina, simple) = wnd_routes(&f, e).unwrap();
            prop_assert_eq!(tjurina, simple);
        }
        if p == 0 && mu_n(&f).unwrap().is_finite() {
            prop_assert_eq!(r.nnd, r.innd);
        }
    }

    #[test]
    fn innd_does_not_depend_on_completion(p in any_char(), f in germ_terms(7, 6)) {
        let f = poly(p, &f);
        prop_assume!(!f.is_zero());
        let m = completion_exponent(&f).unwrap();
        prop_assert_eq!(innd_wrt(&f, m).unwrap().0, innd_wrt(&f, m + 5).unwrap().0);
    }

    #[test]
    fn whnnd_passes_to_factors(p in small_prime(), g in germ_terms(4, 4), h in germ_terms(4, 4)) {
        let (g, h) = (poly(p, &g), poly(p, &h));
        prop_assume!(!g.is_zero() && !h.is_zero());
        if classify(&g.mul(&h)).unwrap().whnnd {
            prop_assert!(classify(&g).unwrap().whnnd);
            prop_assert!(classify(&h).unwrap().whnnd);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn intersection_multiplicity_is_symmetric(p in any_char(), f in germ_terms(5, 4), g in germ_terms(5, 4)) {
        let (f, g) = (poly(p, &f), poly(p, &g));
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assert_eq!(intersection_multiplicity(&f, &g).unwrap(), intersection_multiplicity(&g, &f).unwrap());
    }

    #[test]
    fn colength_routes_agree(p in any_char(), f in germ_terms(5, 4), g in germ_terms(5, 4)) {
        let (f, g) = (poly(p, &f), poly(p, &g));
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assert_eq!(quotient_dim_by_truncation(&f, &g).unwrap(), quotient_dim_by_fulton(&f, &g).unwrap());
    }

    #[test]
    fn milnor_number_bounds_newton_number(p in any_char(), f in germ_terms(7, 6)) {
        let f = poly(p, &f);
        prop_assume!(!f.is_zero());
        let mu = milnor_number(&f).unwrap();
        prop_assert!(mu_n(&f).unwrap() <= mu);
        let r = classify(&f).unwrap();
        if r.nnd {
            prop_assert_eq!(mu_n(&f).unwrap(), mu);
        }
        prop_assert_eq!(r.innd, mu.is_finite() && mu == mu_n(&f).unwrap());
    }

    #[test]
    fn every_verdict_holds(p in small_prime(), f in germ_terms(7, 6)) {
        let f = poly(p, &f);
        prop_assume!(!f.is_zero());
        let b = invariant_bundle(&f);
        prop_assert!(b.is_ok(), "{}: {:?}", f, b.err());
    }

    #[test]
    fn printed_polynomials_reparse(p in any_char(), f in germ_terms(9, 7)) {
        let f = poly(p, &f);
        let t = tower(p);
        prop_assert_eq!(parse_poly(&f.to_string(), &t).unwrap(), f);
    }

    #[test]
    fn bundles_round_trip_through_json(p in any_char(), f in germ_terms(6, 5)) {
        let f = poly(p, &f);
        prop_assume!(!f.is_zero());
        let b = invariant_bundle(&f).unwrap();
        let back: InvariantBundle = serde_json::from_str(&serde_json::to_string(&b).unwrap()).unwrap();
        prop_assert_eq!(back, b);
    }
}

#[test]
fn random_germs_cover_many_supports() {
    let t = tower(3);
    let supports: BTreeSet<Vec<(u32, u32)>> =
        (0..200).map(|i| curvegerm::report::random_germ(&t, 7, 1, i).support()).collect();
    assert!(supports.len() > 150);
}
