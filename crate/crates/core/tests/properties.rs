use circflow::certificates::{reverify, Certificate, Verdict};
use circflow::colorings::{parse_coloring, write_coloring, EdgeColoring};
use circflow::families::{complete_bipartite, petersen, prism};
use circflow::flows::{check_flow, parse_flow, write_flow, Orientation, RationalFlow};
use circflow::graph::{
    from_graph6, parse_graph, parse_matching_file, perfect_matchings, to_graph6, write_graph, write_matching, Matching,
    Multigraph,
};
use circflow::rational::{format_rational, parse_rational, Rational};
use proptest::prelude::*;

fn multigraph(n: usize, pairs: &[(usize, usize)]) -> Multigraph {
    let mut g = Multigraph::new();
    for v in 0..n {
        g.add_vertex(format!("v[{v}]")).unwrap();
    }
    for (i, &(u, v)) in pairs.iter().enumerate() {
        let (u, v) = (u % n, v % n);
        if u != v {
            g.add_edge(&format!("e{i}"), &format!("v[{u}]"), &format!("v[{v}]"))
                .unwrap();
        }
    }
    g
}

fn simple(n: usize, mask: u64) -> Multigraph {
    let mut g = Multigraph::new();
    for v in 0..n {
        g.add_vertex(format!("v{v}")).unwrap();
    }
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(&format!("e{u}_{v}"), &format!("v{u}"), &format!("v{v}"))
                    .unwrap();
            }
            bit += 1;
        }
    }
    g
}

fn sample_graph(which: u8) -> Multigraph {
    match which % 3 {
        0 => petersen(),
        1 => prism(4).unwrap(),
        _ => complete_bipartite(3).unwrap(),
    }
}

proptest! {
    #[test]
    fn rationals_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let x = Rational::new(p, q);
        let text = format_rational(&x);
        prop_assert_eq!(parse_rational(&text), Some(x));
        prop_assert_eq!(format_rational(&parse_rational(&text).unwrap()), text);
    }

    #[test]
    fn graph_text_round_trips(n in 2usize..10, pairs in prop::collection::vec((0usize..10, 0usize..10), 0..30)) {
        let g = multigraph(n, &pairs);
        let text = write_graph(&g);
        let h = parse_graph(&text).unwrap();
        prop_assert_eq!(write_graph(&h), text);
        prop_assert_eq!(h.content_hash(), g.content_hash());
    }

    #[test]
    fn graph6_round_trips(n in 1usize..12, mask in any::<u64>()) {
        let g = simple(n, mask);
        let code = to_graph6(&g).unwrap();
        let h = from_graph6(&code).unwrap();
        prop_assert_eq!(h.vertex_count(), n);
        prop_assert_eq!(h.edge_count(), g.edge_count());
        prop_assert_eq!(to_graph6(&h).unwrap(), code);
    }

    #[test]
    fn flow_files_round_trip(
        which in any::<u8>(),
        dirs in prop::collection::vec(any::<bool>(), 18),
        nums in prop::collection::vec(1i64..50, 18),
        dens in prop::collection::vec(1i64..7, 18),
    ) {
        let g = sample_graph(which);
        let m = g.edge_count();
        let orientation = Orientation { forward: dirs[..m].to_vec() };
        let values = (0..m).map(|e| Rational::new(nums[e], dens[e])).collect();
        let flow = RationalFlow::new(orientation, values, Rational::new(9, 2));
        let text = write_flow(&g, &flow);
        let back = parse_flow(&g, &text).unwrap();
        prop_assert_eq!(&back.orientation, &flow.orientation);
        prop_assert_eq!(&back.values, &flow.values);
        prop_assert_eq!(back.r, flow.r);
        prop_assert_eq!(write_flow(&g, &back), text);
    }

    #[test]
    fn flow_certificates_are_canonical_and_reverify(
        which in any::<u8>(),
        dirs in prop::collection::vec(any::<bool>(), 18),
        nums in prop::collection::vec(1i64..8, 18),
    ) {
        let g = sample_graph(which);
        let m = g.edge_count();
        let orientation = Orientation { forward: dirs[..m].to_vec() };
        let values = nums[..m].iter().map(|&x| Rational::from_integer(x)).collect();
        let flow = RationalFlow::new(orientation, values, Rational::from_integer(6));
        let violation = check_flow(&g, &flow).unwrap();
        let cert = Certificate::flow_valid(&g, &flow, violation.as_ref());
        let expected = if violation.is_none() { Verdict::Verified } else { Verdict::Refuted };
        prop_assert_eq!(cert.verdict, expected);
        let json = cert.to_json();
        let back = Certificate::from_json(&json).unwrap();
        prop_assert_eq!(back.to_json(), json);
        let rv = reverify(&back, &g).unwrap();
        prop_assert!(rv.ok, "{}", rv.detail);
    }

    #[test]
    fn coloring_files_round_trip(which in any::<u8>(), colors in prop::collection::vec(0u32..5, 18)) {
        let g = sample_graph(which);
        let c = EdgeColoring::proper(5, colors[..g.edge_count()].to_vec());
        let text = write_coloring(&g, &c);
        let back = parse_coloring(&g, &text).unwrap();
        prop_assert_eq!(write_coloring(&g, &back), text);
    }

    #[test]
    fn matching_copies_raise_every_degree(which in any::<u8>(), pick in any::<usize>(), k in 1usize..4) {
        let g = sample_graph(which);
        let all = perfect_matchings(&g);
        let m = &Matching::from_indices(&g, &all[pick % all.len()]);
        let text = write_matching(m);
        let back = parse_matching_file(&text).unwrap();
        prop_assert_eq!(write_matching(&back), text);
        let h = g.add_matching_copies(m, k).unwrap();
        prop_assert_eq!(h.regular_degree(), Some(3 + k));
        prop_assert_eq!(h.edge_count(), g.edge_count() + k * m.len());
        for id in m.ids() {
            prop_assert_eq!(h.copies_of(id).len(), k + 1);
        }
    }
}
