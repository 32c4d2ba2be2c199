mod types {
    use sawkit_core::graph::*;

    #[test]
    fn edge_endpoints_are_unordered() {
        let a = VertexId::new(FamilyTag::Loop, &[0]);
        let b = VertexId::new(FamilyTag::Loop, &[1]);
        assert_eq!(EdgeRef::new(a.clone(), b.clone(), 2), EdgeRef::new(b.clone(), a.clone(), 2));
        assert_ne!(EdgeRef::new(a.clone(), b.clone(), 0), EdgeRef::new(a, b, 1));
    }

    #[test]
    fn loops_rejected() {
        let a = VertexId::new(FamilyTag::Loop, &[3]);
        assert!(EdgeRef::try_new(a.clone(), a, 0).is_err());
    }

    #[test]
    fn parse_round_trip() {
        let v = VertexId::parse(FamilyTag::Ladder, "(-3,1)").unwrap();
        assert_eq!(v.coords(), &[-3, 1]);
        assert_eq!(VertexId::parse(FamilyTag::Ladder, &v.to_string()).unwrap(), v);
        let root = VertexId::parse(FamilyTag::Tree, "()").unwrap();
        assert!(root.coords().is_empty());
        let e = EdgeRef::parse(FamilyTag::Loop, "1:0:2").unwrap();
        assert_eq!(e.parallel_index(), 2);
        assert_eq!(e.endpoints().0.coords(), &[0]);
        assert!(EdgeRef::parse(FamilyTag::Loop, "1").is_err());
        assert!(VertexId::parse(FamilyTag::Loop, "x").is_err());
    }

    #[test]
    fn directed_edge_requires_incidence() {
        let a = VertexId::new(FamilyTag::Loop, &[0]);
        let b = VertexId::new(FamilyTag::Loop, &[1]);
        let c = VertexId::new(FamilyTag::Loop, &[2]);
        let e = EdgeRef::new(a.clone(), b.clone(), 0);
        assert_eq!(DirectedEdge::new(a, e.clone()).unwrap().to(), &b);
        assert!(DirectedEdge::new(c, e).is_err());
    }
}

mod families {
    use sawkit_core::graph::*;
    use sawkit_core::Error;

    fn targets(f: &Family, coords: &[i64]) -> Vec<(Vec<i64>, u32)> {
        f.neighbors(&VertexId::new(f.tag(), coords))
            .unwrap()
            .into_iter()
            .map(|n| (n.vertex.coords().to_vec(), n.edge.parallel_index()))
            .collect()
    }

    #[test]
    fn tree_root_has_three_children() {
        let t = Family::tree(3).unwrap();
        assert_eq!(targets(&t, &[]), vec![(vec![0], 0), (vec![1], 0), (vec![2], 0)]);
        assert_eq!(targets(&t, &[2, 1]), vec![(vec![2], 0), (vec![2, 1, 0], 0), (vec![2, 1, 1], 0)]);
    }

    #[test]
    fn loop_graph_vertex_zero() {
        let g = Family::loop_graph(4).unwrap();
        assert_eq!(targets(&g, &[0]), vec![(vec![-1], 0), (vec![1], 0), (vec![1], 1), (vec![1], 2)]);
        assert_eq!(targets(&g, &[1]), vec![(vec![0], 0), (vec![0], 1), (vec![0], 2), (vec![2], 0)]);
    }

    #[test]
    fn ladder_adjacency() {
        assert_eq!(
            targets(&Family::Ladder, &[0, 0]),
            vec![(vec![-1, 0], 0), (vec![1, 0], 0), (vec![0, 1], 0)]
        );
    }

    #[test]
    fn interpolation_chain_shape() {
        // l = 2: root -1- (1,[0]) =3= (2,[0]) -1- ([0])
        let g = Family::interpolation(4, 2).unwrap();
        assert_eq!(targets(&g, &[0])[0], (vec![1, 0], 0));
        assert_eq!(
            targets(&g, &[1, 0]),
            vec![(vec![0], 0), (vec![2, 0], 0), (vec![2, 0], 1), (vec![2, 0], 2)]
        );
        assert_eq!(targets(&g, &[2, 0]).last().unwrap(), &(vec![0, 0], 0));
        // l = 1 is the tree.
        let t = Family::interpolation(3, 1).unwrap();
        assert_eq!(targets(&t, &[0, 1]), vec![(vec![0], 0), (vec![0, 1, 0], 0), (vec![0, 1, 1], 0)]);
    }

    #[test]
    fn malformed_vertices_rejected() {
        let cases: Vec<(Family, Vec<i64>)> = vec![
            (Family::Ladder, vec![0, 2]),
            (Family::Ladder, vec![0]),
            (Family::Hexagonal, vec![0, 0, 5]),
            (Family::tree(3).unwrap(), vec![3]),
            (Family::tree(3).unwrap(), vec![0, 2]),
            (Family::Decorated3, vec![0, 6]),
            (Family::interpolation(3, 2).unwrap(), vec![1]),
            (Family::interpolation(3, 2).unwrap(), vec![3, 0]),
        ];
        for (f, c) in cases {
            let err = f.neighbors(&VertexId::new(f.tag(), &c)).unwrap_err();
            assert!(matches!(err, Error::InvalidVertex { .. }), "{f} {c:?}");
        }
        let wrong_tag = VertexId::new(FamilyTag::Ladder, &[0]);
        assert!(Family::loop_graph(3).unwrap().neighbors(&wrong_tag).is_err());
    }

    #[test]
    fn spec_strings() {
        for s in ["ladder", "hex", "loop:4", "tree:3", "decor3", "decor4", "interp:3:2"] {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        for s in ["", "loop", "loop:1", "tree:x", "interp:3", "interp:3:0", "hexagon", "loop:4:1"] {
            assert!(s.parse::<Family>().is_err(), "{s}");
        }
    }

    #[test]
    fn metadata() {
        assert!(!Family::loop_graph(4).unwrap().is_simple());
        assert!(Family::loop_graph(2).unwrap().is_simple());
        assert!(!Family::tree(3).unwrap().has_cycle());
        assert_eq!(Family::Decorated4.transitivity(), Transitivity::QuasiTransitive);
        assert_eq!(Family::interpolation(3, 1).unwrap().transitivity(), Transitivity::VertexTransitive);
        assert_eq!(Family::interpolation(4, 3).unwrap().orbit_reps().len(), 3);
    }
}

mod ball {
    use sawkit_core::graph::*;
    use std::collections::{BTreeMap, BTreeSet};

    /// Independent breadth-first distance map, layer by layer.
    fn bfs_layers(rule: &dyn GraphRule, v: &VertexId, n: usize) -> BTreeMap<VertexId, usize> {
        let mut dist = BTreeMap::from([(v.clone(), 0)]);
        let mut frontier = BTreeSet::from([v.clone()]);
        for d in 1..=n {
            let mut next = BTreeSet::new();
            for u in &frontier {
                for nb in rule.neighbors(u).unwrap() {
                    if !dist.contains_key(&nb.vertex) {
                        next.insert(nb.vertex);
                    }
                }
            }
            for u in &next {
                dist.insert(u.clone(), d);
            }
            frontier = next;
        }
        dist
    }

    fn boundary_oracle(rule: &dyn GraphRule, layers: &BTreeMap<VertexId, usize>) -> usize {
        layers
            .keys()
            .flat_map(|u| rule.neighbors(u).unwrap())
            .filter(|nb| !layers.contains_key(&nb.vertex))
            .count()
    }

    #[test]
    fn tree_ball_radius_one() {
        let t = Family::tree(3).unwrap();
        let b = ball(&t, &t.orbit_reps()[0], 1).unwrap();
        assert_eq!(b.len(), 4);
        assert_eq!(b.boundary_edge_count(), 6);
    }

    #[test]
    fn ladder_ball_radius_one() {
        let b = ball(&Family::Ladder, &VertexId::new(sawkit_core::graph::FamilyTag::Ladder, &[0, 0]), 1).unwrap();
        assert_eq!(b.len(), 4);
        // (+-1, 0) each leave by 2 edges, (0, 1) by 2; (+-1, 0)-(+-1, 1) and
        // (0, 1)-(+-1, 1) all exit.
        assert_eq!(b.boundary_edge_count(), 6);
    }

    #[test]
    fn balls_match_bfs_oracle() {
        let families: Vec<Family> = vec![
            Family::Ladder,
            Family::Hexagonal,
            Family::loop_graph(4).unwrap(),
            Family::tree(3).unwrap(),
            Family::Decorated3,
            Family::Decorated4,
            Family::interpolation(3, 2).unwrap(),
        ];
        for f in &families {
            for rep in f.orbit_reps() {
                for n in 1..=4 {
                    let b = ball(f, &rep, n).unwrap();
                    let layers = bfs_layers(f, &rep, n);
                    assert_eq!(b.len(), layers.len(), "{f} {rep} n={n}");
                    for (i, v) in b.vertices().iter().enumerate() {
                        assert_eq!(layers.get(v), Some(&b.distance(i)));
                    }
                    assert_eq!(b.boundary_edge_count(), boundary_oracle(f, &layers));
                }
            }
        }
    }

    #[test]
    fn hexagonal_ball_radius_two() {
        let h = Family::Hexagonal;
        let b = ball(&h, &h.orbit_reps()[0], 2).unwrap();
        // 1 + 3 + 6 on the honeycomb.
        assert_eq!(b.len(), 10);
        assert_eq!(b.len(), bfs_layers(&h, &h.orbit_reps()[0], 2).len());
    }

    #[test]
    fn zero_radius_rejected() {
        assert!(ball(&Family::Ladder, &Family::Ladder.orbit_reps()[0], 0).is_err());
    }

    #[test]
    fn edges_listed_once() {
        let g = Family::loop_graph(3).unwrap();
        let b = ball(&g, &g.orbit_reps()[0], 2).unwrap();
        // vertices -2..=2: internal edges 1 + 2 + 1 + 2 and 1 + 2 into the boundary... counted directly
        let internal = b.edges().filter(|(_, e)| e.to != BallNode::Boundary).count();
        let boundary = b.edges().filter(|(_, e)| e.to == BallNode::Boundary).count();
        assert_eq!(boundary, b.boundary_edge_count());
        let degree_sum: usize = (0..b.len()).map(|i| b.adjacency(i).len()).sum();
        assert_eq!(2 * internal + boundary, degree_sum);
    }
}

mod symmetry {
    use sawkit_core::graph::*;
    use sawkit_core::Result;

    /// The ladder with the edge (0,0)-(1,0) reported only at (0,0).
    struct DropsReverse;

    impl GraphRule for DropsReverse {
        fn name(&self) -> String {
            "broken-ladder".into()
        }
        fn tag(&self) -> FamilyTag {
            FamilyTag::Ladder
        }
        fn max_degree(&self) -> usize {
            3
        }
        fn degree(&self, v: &VertexId) -> Result<usize> {
            Family::Ladder.degree(v)
        }
        fn neighbors(&self, v: &VertexId) -> Result<Vec<Neighbor>> {
            let mut out = Family::Ladder.neighbors(v)?;
            if v.coords() == [1, 0] {
                out.retain(|n| n.vertex.coords() != [0, 0]);
                out.push(Neighbor {
                    edge: sawkit_core::graph::EdgeRef::new(v.clone(), VertexId::new(FamilyTag::Ladder, &[1, 5]), 0),
                    vertex: VertexId::new(FamilyTag::Ladder, &[1, 5]),
                });
            }
            Ok(out)
        }
        fn orbit_reps(&self) -> Vec<VertexId> {
            Family::Ladder.orbit_reps()
        }
        fn transitivity(&self) -> Transitivity {
            Transitivity::VertexTransitive
        }
        fn is_simple(&self) -> bool {
            true
        }
        fn has_cycle(&self) -> bool {
            true
        }
    }

    #[test]
    fn loop_graph_passes() {
        let r = verify_symmetry(&Family::loop_graph(5).unwrap(), 6);
        assert!(r.passed, "{r:?}");
        assert_eq!(r.vertices_checked, 13);
    }

    #[test]
    fn hexagonal_passes() {
        let r = verify_symmetry(&Family::Hexagonal, 8);
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn all_families_pass_radius_ten() {
        for spec in ["ladder", "hex", "loop:2", "loop:3", "loop:6", "tree:3", "tree:4", "decor3", "decor4", "interp:3:1", "interp:3:2", "interp:4:3"] {
            let f: Family = spec.parse().unwrap();
            let radius = if spec.starts_with("tree") || spec.starts_with("interp") { 6 } else { 10 };
            let r = verify_symmetry(&f, radius);
            assert!(r.passed, "{spec}: {r:?}");
        }
    }

    #[test]
    fn broken_rule_reports_witness() {
        let r = verify_symmetry(&DropsReverse, 3);
        assert!(!r.passed);
        assert_eq!(
            r.violation,
            Some(SymmetryViolation::MissingReverse {
                vertex: "(0,0)".into(),
                edge: "(0,0)-(1,0)#0".into()
            })
        );
    }
}
