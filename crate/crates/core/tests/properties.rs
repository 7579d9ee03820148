use diffgraph::abelian::enumerate_specs;
use diffgraph::graph::{are_isomorphic, neighborhood_classes, shuffle};
use diffgraph::group_graphs::{difference_graph, difference_graph_fast};
use diffgraph::reconstruct::{extract_parameters, Branch};
use diffgraph::{parse_group_spec, reconstruct, GraphFile};
use proptest::prelude::*;

fn spec_index() -> impl Strategy<Value = usize> {
    0..enumerate_specs(300).len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reconstruction_ignores_labels(i in spec_index(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let spec = enumerate_specs(300)[i].clone();
        let d = difference_graph_fast(&spec).graph;
        let r1 = reconstruct(&shuffle(&d, s1).0, false).unwrap();
        let r2 = reconstruct(&shuffle(&d, s2).0, false).unwrap();
        prop_assert_eq!(&r1.spec, &spec);
        prop_assert_eq!(r1.branch, r2.branch);
        prop_assert_eq!(r1.params, r2.params);
        prop_assert_eq!(r1.order_counts_a, r2.order_counts_a);
        prop_assert_eq!(r1.order_counts_b, r2.order_counts_b);
    }

    #[test]
    fn spec_text_round_trips(i in spec_index()) {
        let spec = enumerate_specs(300)[i].clone();
        let text = spec.to_string();
        prop_assert_eq!(parse_group_spec(&text).unwrap(), spec.clone());
        let mut parts: Vec<&str> = text.split(';').collect();
        parts.reverse();
        prop_assert_eq!(parse_group_spec(&parts.join(";")).unwrap(), spec);
    }

    #[test]
    fn labeled_files_round_trip(i in spec_index()) {
        let d = difference_graph_fast(&enumerate_specs(300)[i]);
        let text = GraphFile::from_labeled(&d).write();
        let back = GraphFile::read(&text).unwrap();
        prop_assert_eq!(back.write(), text);
        prop_assert_eq!(back.labels.as_ref(), Some(&d.labels));
        prop_assert_eq!(back.graph(), d.graph);
    }

    #[test]
    fn shuffles_are_isomorphic(i in spec_index(), seed in any::<u64>()) {
        let g = difference_graph_fast(&enumerate_specs(300)[i]).graph;
        let (h, new_to_old) = shuffle(&g, seed);
        let map = are_isomorphic(&g, &h).unwrap();
        for (u, v) in g.edges() {
            prop_assert!(h.has_edge(map[u], map[v]));
        }
        for (new, &old) in new_to_old.iter().enumerate() {
            prop_assert_eq!(g.degree(old), h.degree(new));
        }
    }
}

#[test]
fn spec_examples() {
    let c12 = parse_group_spec("2:2;3:1").unwrap();
    for seed in [0, 17, 12345] {
        let (g, _) = shuffle(&difference_graph(&c12).unwrap().graph, seed);
        assert_eq!(reconstruct(&g, true).unwrap().spec, c12);
    }

    let c4c9 = parse_group_spec("2:2;3:2").unwrap();
    let r = reconstruct(&difference_graph(&c4c9).unwrap().graph, true).unwrap();
    assert_eq!(r.branch, Branch::General);
    let p = r.params.unwrap();
    assert_eq!(
        (p.p, p.q, p.n, p.m, p.k, p.l, p.r1, p.t1),
        (2, 3, 2, 2, 1, 1, 2, 2)
    );

    let g = difference_graph(&parse_group_spec("2:2,1;3:2").unwrap())
        .unwrap()
        .graph;
    let cp = neighborhood_classes(&g);
    let p = extract_parameters(&g, &cp).unwrap();
    let p = if p.p < p.q { p } else { p.swapped() };
    assert_eq!((p.n, p.k, p.r1, p.m, p.l, p.t1), (3, 2, 2, 2, 1, 2));
}

#[test]
fn distinct_specs_of_equal_order_have_distinct_graphs() {
    let a = difference_graph(&parse_group_spec("2:2;3:2").unwrap()).unwrap();
    let b = difference_graph(&parse_group_spec("2:1,1;3:2").unwrap()).unwrap();
    let c = difference_graph(&parse_group_spec("2:2;3:1,1").unwrap()).unwrap();
    assert!(are_isomorphic(&a.graph, &b.graph).is_none());
    assert!(are_isomorphic(&a.graph, &c.graph).is_none());
    assert!(are_isomorphic(&b.graph, &c.graph).is_none());
}
