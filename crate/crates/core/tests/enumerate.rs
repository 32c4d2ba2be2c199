use std::collections::HashSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use sawkit_core::enumerate::*;
use sawkit_core::graph::*;
use sawkit_core::Error;

fn fam(spec: &str) -> Family {
    spec.parse().unwrap()
}

fn rep(f: &Family) -> VertexId {
    f.orbit_reps()[0].clone()
}

fn ints(s: &SawCountSeries) -> Vec<u64> {
    s.counts.iter().map(|c| c.try_into().unwrap()).collect()
}

/// Walks edge by edge on the rule itself, with no grouping or splitting.
fn brute(rule: &dyn GraphRule, v: &VertexId, avoid: Option<&EdgeRef>, n: usize) -> Vec<u64> {
    fn go(
        rule: &dyn GraphRule,
        v: &VertexId,
        avoid: Option<&EdgeRef>,
        depth: usize,
        n: usize,
        seen: &mut HashSet<VertexId>,
        out: &mut [u64],
    ) {
        out[depth] += 1;
        if depth == n {
            return;
        }
        for nb in rule.neighbors(v).unwrap() {
            if Some(&nb.edge) == avoid || seen.contains(&nb.vertex) {
                continue;
            }
            seen.insert(nb.vertex.clone());
            go(rule, &nb.vertex, avoid, depth + 1, n, seen, out);
            seen.remove(&nb.vertex);
        }
    }
    let mut out = vec![0; n + 1];
    let mut seen = HashSet::from([v.clone()]);
    go(rule, v, avoid, 0, n, &mut seen, &mut out);
    out
}

/// Longest continuation (capped) from the end of the current walk.
fn reach(rule: &dyn GraphRule, v: &VertexId, cap: usize, seen: &mut HashSet<VertexId>) -> usize {
    if cap == 0 {
        return 0;
    }
    let mut best = 0;
    for nb in rule.neighbors(v).unwrap() {
        if seen.insert(nb.vertex.clone()) {
            best = best.max(1 + reach(rule, &nb.vertex, cap - 1, seen));
            seen.remove(&nb.vertex);
        }
    }
    best
}

fn brute_extendable(rule: &dyn GraphRule, v: &VertexId, n: usize, d: usize) -> Vec<u64> {
    fn go(
        rule: &dyn GraphRule,
        v: &VertexId,
        depth: usize,
        n: usize,
        d: usize,
        seen: &mut HashSet<VertexId>,
        out: &mut [u64],
    ) {
        if reach(rule, v, d, seen) >= d {
            out[depth] += 1;
        }
        if depth == n {
            return;
        }
        for nb in rule.neighbors(v).unwrap() {
            if seen.insert(nb.vertex.clone()) {
                go(rule, &nb.vertex, depth + 1, n, d, seen, out);
                seen.remove(&nb.vertex);
            }
        }
    }
    let mut out = vec![0; n + 1];
    let mut seen = HashSet::from([v.clone()]);
    go(rule, v, 0, n, d, &mut seen, &mut out);
    out
}

fn cfg() -> EnumConfig {
    EnumConfig::default()
}

#[test]
fn tree_three() {
    let t = fam("tree:3");
    assert_eq!(ints(&count_saws(&t, &rep(&t), 3, &cfg()).unwrap()), [1, 3, 6, 12]);
}

#[test]
fn ladder_first_terms() {
    let l = fam("ladder");
    let s = count_saws(&l, &rep(&l), 4, &cfg()).unwrap();
    assert_eq!(ints(&s), [1, 3, 6, 12, 20]);
    assert!(!s.truncated);
    assert_eq!(s.computed_n(), Some(4));
}

#[test]
fn ladder_longer_series() {
    let l = fam("ladder");
    let s = count_saws(&l, &rep(&l), 26, &cfg()).unwrap();
    let expected: [u64; 27] = [
        1, 3, 6, 12, 20, 36, 58, 100, 160, 268, 430, 708, 1140, 1860, 3002, 4876, 7880, 12772, 20654, 33444, 54100,
        87564, 141666, 229252, 370920, 600196, 971118,
    ];
    assert_eq!(ints(&s), expected);
}

#[test]
fn loop_four_counts_parallel_edges() {
    let g = fam("loop:4");
    assert_eq!(ints(&count_saws(&g, &rep(&g), 3, &cfg()).unwrap()), [1, 4, 6, 12]);
}

#[test]
fn matches_brute_force_on_every_family() {
    let cases = [
        ("ladder", 9),
        ("hex", 9),
        ("loop:3", 9),
        ("loop:5", 7),
        ("tree:3", 7),
        ("decor3", 8),
        ("decor4", 7),
        ("interp:3:2", 8),
        ("interp:4:3", 7),
    ];
    for (spec, n) in cases {
        let f = fam(spec);
        for r in f.orbit_reps() {
            let got = ints(&count_saws(&f, &r, n, &cfg()).unwrap());
            assert_eq!(got, brute(&f, &r, None, n), "{spec} {r}");
        }
    }
}

#[test]
fn midedge_counts() {
    let t = fam("tree:3");
    let root = rep(&t);
    let e = t.neighbors(&root).unwrap()[0].edge.clone();
    let s = count_saws_midedge(&t, &e, 1, &cfg()).unwrap();
    assert_eq!(ints(&s), [1, 2]);
    assert!(matches!(s.root, Root::MidEdge(_)));

    let l = fam("ladder");
    let rung = l.neighbors(&rep(&l)).unwrap().into_iter().find(|n| n.vertex.coords() == [0, 1]).unwrap().edge;
    assert_eq!(ints(&count_saws_midedge(&l, &rung, 2, &cfg()).unwrap())[2], 4);

    let g = fam("loop:3");
    let par = g.neighbors(&rep(&g)).unwrap().into_iter().find(|n| n.edge.parallel_index() == 1).unwrap().edge;
    assert_eq!(ints(&count_saws_midedge(&g, &par, 2, &cfg()).unwrap())[2], 4);
}

#[test]
fn midedge_matches_sum_of_avoiding_oracles() {
    for spec in ["hex", "decor3", "loop:4", "interp:3:2"] {
        let f = fam(spec);
        let e = f.neighbors(&rep(&f)).unwrap()[1].edge.clone();
        let (a, b) = e.endpoints();
        let n = 7;
        let xa = brute(&f, a, Some(&e), n - 1);
        let xb = brute(&f, b, Some(&e), n - 1);
        let mut expected = vec![1];
        expected.extend(xa.iter().zip(&xb).map(|(x, y)| x + y));
        assert_eq!(ints(&count_saws_midedge(&f, &e, n, &cfg()).unwrap()), expected, "{spec}");
    }
}

#[test]
fn avoiding_counts() {
    let t = fam("tree:3");
    let root = rep(&t);
    let e = t.neighbors(&root).unwrap()[0].edge.clone();
    let s = count_saws_avoiding(&t, &root, &e, 2, &cfg()).unwrap();
    assert_eq!(ints(&s), [1, 2, 4]);
    assert_eq!(s.avoided_edge.as_ref(), Some(&e));

    let g = fam("loop:2");
    let e = g.neighbors(&rep(&g)).unwrap()[0].edge.clone();
    assert_eq!(ints(&count_saws_avoiding(&g, &rep(&g), &e, 6, &cfg()).unwrap()), [1; 7]);

    let h = fam("hex");
    let e = h.neighbors(&rep(&h)).unwrap()[0].edge.clone();
    let s = count_saws_avoiding(&h, &rep(&h), &e, 6, &cfg()).unwrap();
    assert_eq!(ints(&s)[6], 60);
    assert_eq!(ints(&s), brute(&h, &rep(&h), Some(&e), 6));
}

#[test]
fn avoiding_only_removes_one_parallel_copy() {
    let g = fam("loop:4");
    let v = rep(&g);
    for nb in g.neighbors(&v).unwrap() {
        let got = ints(&count_saws_avoiding(&g, &v, &nb.edge, 6, &cfg()).unwrap());
        assert_eq!(got, brute(&g, &v, Some(&nb.edge), 6), "{}", nb.edge);
    }
}

#[test]
fn avoiding_requires_incidence() {
    let l = fam("ladder");
    let far = VertexId::new(FamilyTag::Ladder, &[5, 0]);
    let e = l.neighbors(&far).unwrap()[0].edge.clone();
    assert!(matches!(
        count_saws_avoiding(&l, &rep(&l), &e, 3, &cfg()),
        Err(Error::NotIncident { .. })
    ));
}

#[test]
fn extendable_counts() {
    for spec in ["tree:3", "loop:4"] {
        let f = fam(spec);
        let all = count_saws(&f, &rep(&f), 6, &cfg()).unwrap();
        let ext = count_extendable(&f, &rep(&f), 6, 4, &cfg()).unwrap();
        assert_eq!(ext.counts, all.counts, "{spec}");
        assert_eq!(ext.extendable_lookahead, Some(4));
    }
    let d = fam("decor3");
    for r in d.orbit_reps() {
        let all = ints(&count_saws(&d, &r, 8, &cfg()).unwrap());
        let ext = ints(&count_extendable(&d, &r, 8, 6, &cfg()).unwrap());
        assert!(ext.iter().zip(&all).all(|(e, a)| e <= a));
        assert!(ext[8] < all[8], "{r}: {ext:?} vs {all:?}");
    }
    assert!(matches!(
        count_extendable(&d, &rep(&d), 3, 0, &cfg()),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn extendable_matches_brute_force() {
    for (spec, n, d) in [("decor3", 6, 4), ("decor4", 6, 3), ("hex", 6, 4), ("ladder", 7, 3), ("interp:3:2", 6, 3)] {
        let f = fam(spec);
        for r in f.orbit_reps() {
            let got = ints(&count_extendable(&f, &r, n, d, &cfg()).unwrap());
            assert_eq!(got, brute_extendable(&f, &r, n, d), "{spec} {r}");
        }
    }
}

#[test]
fn deterministic_across_thread_counts() {
    let h = fam("hex");
    let base = count_saws(&h, &rep(&h), 16, &cfg().with_threads(1)).unwrap();
    for t in [4, 8] {
        assert_eq!(count_saws(&h, &rep(&h), 16, &cfg().with_threads(t)).unwrap(), base);
    }
    let d = fam("decor3");
    let base = count_extendable(&d, &rep(&d), 10, 5, &cfg().with_threads(1)).unwrap();
    for t in [4, 8] {
        assert_eq!(count_extendable(&d, &rep(&d), 10, 5, &cfg().with_threads(t)).unwrap(), base);
    }
}

#[test]
fn budget_truncates_to_complete_prefix() {
    let h = fam("hex");
    let full = count_saws(&h, &rep(&h), 14, &cfg()).unwrap();
    let cut = count_saws(&h, &rep(&h), 14, &cfg().with_budget(2_000)).unwrap();
    assert!(cut.truncated);
    let k = cut.counts.len();
    assert!((2..15).contains(&k), "{k}");
    assert_eq!(&cut.counts[..], &full.counts[..k]);
}

#[test]
fn ball_limit_truncates_instead_of_growing() {
    let t = fam("tree:3");
    let cfg = EnumConfig {
        max_ball_vertices: 500,
        ..cfg()
    };
    let cut = count_saws(&t, &rep(&t), 20, &cfg).unwrap();
    assert!(cut.truncated);
    // sigma_k = 3 * 2^(k-1) on the 3-regular tree.
    assert_eq!(ints(&cut), (0..cut.counts.len()).map(|k| if k == 0 { 1 } else { 3 << (k - 1) }).collect::<Vec<u64>>());
    assert!(cut.counts.len() < 10);
}

#[test]
fn huge_counts_fall_back_to_big_integers() {
    // loop:64 has 63^k walks of each parity class; 63^25 overflows u128.
    let g = fam("loop:64");
    let s = count_saws(&g, &rep(&g), 50, &cfg()).unwrap();
    let sixty_three = BigUint::from(63u32);
    // sigma_n = 63^{ceil(n/2)} + 63^{floor(n/2)} for n >= 1.
    for n in 1..=50u32 {
        let expected = sixty_three.pow(n.div_ceil(2)) + sixty_three.pow(n / 2);
        assert_eq!(s.counts[n as usize], expected, "n={n}");
    }
}

#[test]
fn series_json_uses_decimal_strings() {
    let l = fam("ladder");
    let s = count_saws(&l, &rep(&l), 3, &cfg()).unwrap();
    let j = serde_json::to_value(&s).unwrap();
    assert_eq!(j["counts"], serde_json::json!(["1", "3", "6", "12"]));
    let back: SawCountSeries = serde_json::from_value(j).unwrap();
    assert_eq!(back, s);
}

#[test]
fn prefix_validation() {
    let l = fam("ladder");
    let v = rep(&l);
    let nb = l.neighbors(&v).unwrap();
    let mut p = SawPrefix::start(v.clone());
    p.vertices.push(nb[0].vertex.clone());
    p.edges.push(nb[0].edge.clone());
    assert!(p.validate(&l).is_ok());
    p.vertices.push(v.clone());
    p.edges.push(nb[0].edge.clone());
    assert!(p.validate(&l).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn counts_are_submultiplicative_and_bounded(idx in 0usize..6, n in 4usize..10) {
        let spec = ["ladder", "hex", "loop:3", "tree:3", "decor3", "interp:3:2"][idx];
        let f = fam(spec);
        let r = rep(&f);
        let s = count_saws(&f, &r, n, &cfg()).unwrap();
        let c = ints(&s);
        let delta = f.max_degree() as u64;
        prop_assert_eq!(c[0], 1);
        prop_assert_eq!(c[1], f.degree(&r).unwrap() as u64);
        for (k, &ck) in c.iter().enumerate().skip(1) {
            prop_assert!(ck <= delta * (delta - 1).pow(k as u32 - 1));
        }
        if f.transitivity() == Transitivity::VertexTransitive {
            for a in 1..n {
                prop_assert!(c[n] <= c[a] * c[n - a]);
            }
        }
    }

    #[test]
    fn extendable_never_exceeds_total(idx in 0usize..4, n in 2usize..7, d in 1usize..5) {
        let spec = ["ladder", "hex", "decor3", "decor4"][idx];
        let f = fam(spec);
        let r = rep(&f);
        let all = ints(&count_saws(&f, &r, n, &cfg()).unwrap());
        let ext = ints(&count_extendable(&f, &r, n, d, &cfg()).unwrap());
        for k in 0..=n {
            prop_assert!(ext[k] <= all[k]);
        }
    }
}
