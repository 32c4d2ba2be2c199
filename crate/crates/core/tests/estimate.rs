use num_bigint::BigUint;
use sawkit_core::enumerate::*;
use sawkit_core::estimate::*;
use sawkit_core::graph::*;
use sawkit_core::Error;

fn series(f: &Family, n: usize) -> Vec<SawCountSeries> {
    f.orbit_reps().iter().map(|r| count_saws(f, r, n, &EnumConfig::default()).unwrap()).collect()
}

fn fam(s: &str) -> Family {
    s.parse().unwrap()
}

#[test]
fn tree_fekete_closed_form() {
    let t = fam("tree:3");
    let e = fekete_bounds(&t, &series(&t, 10)).unwrap();
    let expected = (3.0 * 2f64.powi(9)).powf(0.1);
    assert!((e.fekete_raw[9] - expected).abs() < 1e-12);
    assert!((e.fekete_raw[9] - 2.0828).abs() < 1e-4);
    assert!(e.fekete_upper.iter().all(|&b| b >= 2.0));
}

#[test]
fn hex_envelope_first_below_two_at_fourteen() {
    let h = fam("hex");
    let e = fekete_bounds(&h, &series(&h, 16)).unwrap();
    assert!((e.fekete_raw[5] - 90f64.powf(1.0 / 6.0)).abs() < 1e-12);
    assert!(e.fekete_upper[12] > 2.0);
    assert!(e.fekete_upper[13] < 2.0);
}

#[test]
fn ladder_fekete_at_four() {
    let l = fam("ladder");
    let e = fekete_bounds(&l, &series(&l, 6)).unwrap();
    assert!((e.fekete_raw[3] - 20f64.powf(0.25)).abs() < 1e-12);
    assert_eq!(e.ratios[3].exact, "5/3");
}

#[test]
fn envelope_dominates_exact_values() {
    for (spec, n) in [("ladder", 24), ("hex", 18), ("loop:3", 30), ("loop:5", 30), ("tree:3", 12), ("tree:4", 9)] {
        let f = fam(spec);
        let mu = f.exact_mu().unwrap();
        let s = series(&f, n);
        let e = fekete_bounds(&f, &s).unwrap();
        assert!(e.fekete_upper.windows(2).all(|w| w[1] <= w[0]), "{spec}");
        assert!(e.fekete_upper.iter().all(|&b| b >= mu - MACHINE_SLACK), "{spec}");
        // sigma_n >= mu^n at the orbit supremum.
        for k in 1..=n {
            let sup = s.iter().map(|x| &x.counts[k]).max().unwrap();
            let floor = BigUint::from(mu.powi(k as i32).floor() as u128);
            assert!(*sup >= floor, "{spec} n={k}");
        }
    }
}

#[test]
fn missing_orbit_rejected() {
    let d = fam("decor3");
    let one = vec![count_saws(&d, &d.orbit_reps()[0], 10, &EnumConfig::default()).unwrap()];
    assert!(matches!(fekete_bounds(&d, &one), Err(Error::MissingOrbitSeries(_))));
}

#[test]
fn short_or_truncated_series_rejected() {
    let l = fam("ladder");
    assert!(matches!(
        estimate_mu(&l, &series(&l, 5), Method::RatioExtrapolation),
        Err(Error::SeriesTooShort { required: 8, .. })
    ));
    let cut = count_saws(&l, &l.orbit_reps()[0], 20, &EnumConfig::default().with_budget(500)).unwrap();
    assert!(cut.truncated);
    assert!(matches!(estimate_mu(&l, &[cut], Method::LogFit), Err(Error::Truncated(_))));
}

#[test]
fn loop_graphs_hit_exact_value() {
    for d in 2..=6 {
        let f = Family::loop_graph(d).unwrap();
        let target = ((d - 1) as f64).sqrt();
        for m in [Method::RatioExtrapolation, Method::LogFit] {
            let e = estimate_mu(&f, &series(&f, 30), m).unwrap();
            assert!((e.mu_hat.unwrap() - target).abs() < 1e-3, "loop:{d} {m:?}");
        }
    }
}

#[test]
fn ladder_and_hex_estimates() {
    let l = fam("ladder");
    let e = estimate_mu(&l, &series(&l, 30), Method::RatioExtrapolation).unwrap();
    assert!((e.mu_hat.unwrap() - 1.618034).abs() < 5e-3);
    assert!(!e.diagnostics.as_ref().unwrap().disagreement);

    let h = fam("hex");
    let e = estimate_mu(&h, &series(&h, 24), Method::RatioExtrapolation).unwrap();
    assert!((e.mu_hat.unwrap() - 1.8477591).abs() < 2e-2);
    let best = e.best_upper().unwrap();
    assert!((1.8478..=2.0).contains(&best));
}

#[test]
fn decorated_lines_grow_subexponentially() {
    for spec in ["decor3", "decor4"] {
        let f = fam(spec);
        let e = estimate_mu(&f, &series(&f, 40), Method::RatioExtrapolation).unwrap();
        assert!(e.mu_hat.unwrap() <= 1.1, "{spec}");
    }
}

#[test]
fn interpolation_is_monotone_in_segments() {
    for d in [3usize, 4] {
        let mut prev = f64::INFINITY;
        for l in 1..=3 {
            let f = Family::interpolation(d, l).unwrap();
            let n = if l == 1 { 11 } else { 18 };
            let mu = estimate_mu(&f, &series(&f, n), Method::RatioExtrapolation).unwrap().mu_hat.unwrap();
            let lo = ((d - 1) as f64).sqrt();
            assert!(mu <= prev + 1e-9 && mu >= lo - 1e-2 && mu <= (d - 1) as f64 + 1e-9, "interp:{d}:{l} {mu}");
            let exact = ((d - 1) as f64).powf(l as f64 / (2 * l - 1) as f64);
            assert!((mu - exact).abs() < 1e-6, "interp:{d}:{l}");
            prev = mu;
        }
    }
}

#[test]
fn bound_clauses() {
    let h = fam("hex");
    let e = estimate_mu(&h, &series(&h, 20), Method::RatioExtrapolation).unwrap();
    let r = check_bounds(&h, &e, false, 1e-2);
    assert!(r.passed, "{r:?}");
    assert_eq!(r.clauses.lower_bound.passed, Some(true));
    assert_eq!(r.clauses.strict_gap.passed, Some(true));

    let t = fam("tree:4");
    let e = estimate_mu(&t, &series(&t, 9), Method::RatioExtrapolation).unwrap();
    let r = check_bounds(&t, &e, false, 1e-2);
    assert!(r.passed);
    assert!(!r.clauses.strict_gap.applicable);

    let d = fam("decor4");
    let e = estimate_mu(&d, &series(&d, 30), Method::RatioExtrapolation).unwrap();
    let r = check_bounds(&d, &e, false, 1e-2);
    assert!(!r.clauses.lower_bound.applicable);
    assert!(r.passed);
}

#[test]
fn convergence_between_roots() {
    let l = fam("ladder");
    let a = count_saws(&l, &VertexId::new(FamilyTag::Ladder, &[0, 0]), 20, &EnumConfig::default()).unwrap();
    let b = count_saws(&l, &VertexId::new(FamilyTag::Ladder, &[3, 1]), 20, &EnumConfig::default()).unwrap();
    let r = convergence_check(&a, &b, 0.1).unwrap();
    assert_eq!(r.difference, 0.0);

    let g = fam("loop:3");
    let a = count_saws(&g, &VertexId::new(FamilyTag::Loop, &[0]), 24, &EnumConfig::default()).unwrap();
    let b = count_saws(&g, &VertexId::new(FamilyTag::Loop, &[1]), 24, &EnumConfig::default()).unwrap();
    assert_eq!(convergence_check(&a, &b, 0.1).unwrap().difference, 0.0);

    let d = fam("decor3");
    let reps = d.orbit_reps();
    let a = count_saws(&d, &reps[0], 30, &EnumConfig::default()).unwrap();
    let b = count_saws(&d, &reps[3], 30, &EnumConfig::default()).unwrap();
    let r = convergence_check(&a, &b, 0.1).unwrap();
    assert!(r.passed, "{r:?}");

    assert!(convergence_check(&a, &series(&l, 10)[0], 0.1).is_err());
}

#[test]
fn exact_targets() {
    assert!((ExactTarget::of(&fam("ladder")).unwrap().mu_exact - 1.6180339887).abs() < 1e-9);
    assert!(ExactTarget::of(&fam("decor3")).is_none());
}
