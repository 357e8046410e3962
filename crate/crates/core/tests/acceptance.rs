//! Acceptance suite. Runs without the libtest harness so that every criterion
//! prints its own PASS/FAIL line; the process fails if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use curvegerm::algebra::FieldTower;
use curvegerm::bivar::BivarPoly;
use curvegerm::cli::parse_poly;
use curvegerm::localalg::{intersection_multiplicity, milnor_number, quotient_dim_by_fulton};
use curvegerm::newton::{delta_n, r_n, s_n, ExtNat, NewtonDiagram};
use curvegerm::nondeg::wnd_routes;
use curvegerm::report::{invariant_bundle, random_germ, verify_random, InvariantBundle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

fn germ(p: u64, text: &str) -> BivarPoly {
    let t = if p == 0 { FieldTower::rationals() } else { FieldTower::prime(p).unwrap() };
    parse_poly(text, &t).unwrap()
}

fn bundle(p: u64, text: &str) -> InvariantBundle {
    invariant_bundle(&germ(p, text)).unwrap()
}

fn fin(n: u64) -> ExtNat {
    ExtNat::Finite(n)
}

fn example_nnd_vs_innd() {
    let b = bundle(3, "x^3 + x*y + y^3");
    assert_eq!(b.mu, fin(1));
    assert_eq!(b.mu_n, fin(1));
    assert!(!b.flags.nnd);
    assert!(b.flags.innd);
    assert!(b.flags.nnd1);
}

fn example_same_diagram_different_wvc() {
    let f = germ(3, "x*(x-y)^2 + y^7");
    let g = germ(3, "x*(x-y)^2 + y^7 + x^6");
    let bf = invariant_bundle(&f).unwrap();
    assert_eq!((bf.mu, bf.delta, bf.r, bf.wvc), (fin(8), Some(5), Some(3), Some(fin(0))));
    assert!(!bf.flags.innd && !bf.flags.wnnd && !bf.flags.whnnd);
    let bg = invariant_bundle(&g).unwrap();
    assert_eq!((bg.mu, bg.delta, bg.r, bg.wvc), (fin(8), Some(4), Some(2), Some(fin(1))));
    let (df, dg) = (NewtonDiagram::of(&f).unwrap(), NewtonDiagram::of(&g).unwrap());
    assert_eq!(df.vertices, dg.vertices);
    assert_eq!(df, dg);
}

fn example_whnnd_not_wnnd() {
    let b = bundle(7, "(x+y)^2 + y^3");
    assert_eq!(b.delta, Some(1));
    assert_eq!(b.delta_n, fin(1));
    assert!(!b.flags.wnnd);
    assert!(b.flags.whnnd);
    // same germ after the coordinate change x -> x - y
    assert!(bundle(7, "x^2 + y^3").flags.wnnd);
}

fn example_whnnd_not_superisolated() {
    let b = bundle(7, "x^2 + y^5");
    assert!(b.flags.whnnd);
    assert_eq!(b.flags.superisolated, Some(false));
    assert_eq!((b.delta, b.delta_n), (Some(2), fin(2)));
    assert_eq!((b.mu, b.mu_n), (fin(4), fin(4)));
}

/// Every relation is recomputed from the raw invariants rather than read off
/// the bundle verdicts.
fn check_positive_char(p: u64, i: u64, f: &BivarPoly, b: &InvariantBundle) -> Vec<String> {
    let mut bad = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            bad.push(format!("p={p} #{i} {f}: {what}"));
        }
    };
    let fl = &b.flags;
    check(b.mu_n <= b.mu, "mu_N <= mu");
    check((b.mu == b.mu_n && b.mu.is_finite()) == fl.innd, "mu = mu_N finite iff INND");
    check(!fl.nnd || b.mu == b.mu_n, "NND implies mu = mu_N");
    check(b.mu_n == mu_n_of(f) && b.delta_n == delta_n(f).unwrap(), "bundle matches direct computation");
    let (Some(delta), Some(nu), Some(r)) = (b.delta, b.nu, b.r) else {
        return bad;
    };
    let delta_n = b.delta_n.finite();
    check(delta_n.is_some_and(|d| d <= delta), "delta_N <= delta");
    check(delta_n == Some(nu), "nu = delta_N");
    check((delta_n == Some(delta)) == fl.whnnd, "delta = delta_N iff WHNND");
    let (s, rn) = (s_n(f).unwrap(), r_n(f).unwrap());
    check(s <= r && r <= rn, "s_N <= r <= r_N");
    check((s == r && r == rn) == fl.wnnd, "both equalities iff WNND");
    let mid = 2 * delta as i64 - r as i64 + 1;
    check(b.mu.finite().is_none_or(|m| mid <= m as i64), "2 delta - r + 1 <= mu");
    if let Some(mun) = b.mu_n.finite() {
        check(mun as i64 == 2 * delta_n.unwrap() as i64 - rn as i64 + 1, "mu_N = 2 delta_N - r_N + 1");
    }
    check(!fl.innd || b.wvc == Some(fin(0)), "INND implies wvc = 0");
    if fl.superisolated == Some(true) {
        let m = f.order().unwrap() as u64;
        check(fl.whnnd && delta == m * (m - 1) / 2, "superisolated consequences");
    }
    bad
}

fn mu_n_of(f: &BivarPoly) -> ExtNat {
    curvegerm::newton::mu_n(f).unwrap()
}

fn randomized_theorems() {
    let mut failures = Vec::new();
    let mut reduced = 0;
    for p in [2u64, 3, 5] {
        let t = FieldTower::prime(p).unwrap();
        for i in 0..300 {
            let f = random_germ(&t, 7, SEED, i);
            match invariant_bundle(&f) {
                Ok(b) => {
                    reduced += b.delta.is_some() as u32;
                    failures.extend(check_positive_char(p, i, &f, &b));
                }
                Err(e) => failures.push(format!("p={p} #{i} {f}: {e}")),
            }
        }
    }
    assert!(failures.is_empty(), "{} failures, first: {}", failures.len(), failures[0]);
    assert!(reduced >= 300, "only {reduced} reduced samples");
}

fn rational_theorems() {
    let t = FieldTower::rationals();
    let mut failures = Vec::new();
    for i in 0..200 {
        let f = random_germ(&t, 7, SEED, i);
        let b = match invariant_bundle(&f) {
            Ok(b) => b,
            Err(e) => {
                failures.push(format!("#{i} {f}: {e}"));
                continue;
            }
        };
        let fl = &b.flags;
        let equal = b.mu == b.mu_n && b.mu.is_finite();
        if (fl.nnd && b.mu_n.is_finite()) != fl.innd || fl.innd != equal {
            failures.push(format!("#{i} {f}: NND and finite mu_N, INND, mu = mu_N disagree"));
        }
        if NewtonDiagram::of(&f).unwrap().convenient && fl.nnd != fl.innd {
            failures.push(format!("#{i} {f}: convenient but NND != INND"));
        }
    }
    assert!(failures.is_empty(), "{} failures, first: {}", failures.len(), failures[0]);
}

fn random_convenient_support(rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    let mut pts = vec![(rng.gen_range(1..15), 0), (0, rng.gen_range(1..15))];
    for _ in 0..rng.gen_range(0..8) {
        pts.push((rng.gen_range(0..15), rng.gen_range(0..15)));
    }
    pts.retain(|&e| e != (0, 0));
    pts
}

fn oracle_equivalence() {
    let towers: Vec<FieldTower> =
        [2u64, 3, 5, 7].iter().map(|&p| FieldTower::prime(p).unwrap()).chain([FieldTower::rationals()]).collect();
    for i in 0..100u64 {
        let t = &towers[(i % 5) as usize];
        let f = random_germ(t, 7, SEED ^ 7, i);
        let mu = milnor_number(&f).unwrap();
        let (fx, fy) = (f.partial_x(), f.partial_y());
        assert_eq!(mu, intersection_multiplicity(&fx, &fy).unwrap(), "{f}");
        assert_eq!(mu, quotient_dim_by_fulton(&fx, &fy).unwrap(), "{f}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..500 {
        let d = NewtonDiagram::from_support(&random_convenient_support(&mut rng));
        let routes = d.newton_number_routes().unwrap();
        assert!(routes.agree(), "{routes:?} on {:?}", d.vertices);
    }

    let mut edges = 0;
    let mut i = 0;
    while edges < 500 {
        let t = &towers[(i % 5) as usize];
        let f = random_germ(t, 7, SEED ^ 11, i);
        for e in &NewtonDiagram::of(&f).unwrap().edges {
            let (tjurina, simple) = wnd_routes(&f, e).unwrap();
            assert_eq!(tjurina, simple, "{f} along {:?}-{:?}", e.start, e.end);
            edges += 1;
        }
        i += 1;
    }
}

fn determinism() {
    let run = || serde_json::to_string(&verify_random(&[2, 3, 5], 300, 7, SEED).unwrap()).unwrap();
    let pool = |n| rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
    let first = run();
    assert_eq!(first, run());
    assert_eq!(first, pool(1).install(run));
    assert_eq!(first, pool(4).install(run));
}

fn main() {
    let criteria: [(&str, Duration, fn()); 8] = [
        ("1 NND vs INND at p=3", Duration::from_secs(1), example_nnd_vs_innd),
        ("2 equal diagrams, different wvc", Duration::from_secs(5), example_same_diagram_different_wvc),
        ("3 WHNND without WNND at p=7", Duration::from_secs(1), example_whnnd_not_wnnd),
        ("4 WHNND without superisolated", Duration::from_secs(1), example_whnnd_not_superisolated),
        ("5 randomized theorems, p in {2,3,5}", Duration::from_secs(120), randomized_theorems),
        ("6 characteristic zero", Duration::from_secs(60), rational_theorems),
        ("7 oracle equivalence", Duration::from_secs(120), oracle_equivalence),
        ("8 determinism", Duration::from_secs(120), determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run));
        let took = start.elapsed();
        let verdict = match outcome {
            Ok(()) if took <= limit => "PASS".to_string(),
            Ok(()) => format!("FAIL (over the {limit:?} limit)"),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                format!("FAIL ({msg})")
            }
        };
        failed += !verdict.starts_with("PASS") as u32;
        println!("criterion {name}: {verdict} in {took:.2?}");
    }
    println!("acceptance: {} of 8 passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
