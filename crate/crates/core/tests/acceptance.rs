use std::io::Write;

use diffgraph::abelian::{enumerate_specs, CyclicProduct};
use diffgraph::graph::{are_isomorphic, random_graph, SimpleGraph};
use diffgraph::group_graphs::{difference_graph, difference_graph_definitional};
use diffgraph::harness::{
    check_adjacency_lemma, check_adjacency_lemma_on, check_bipartite_criterion,
    check_class_formulas, check_class_formulas_on, check_cyclic_subgroups, check_injectivity,
    check_isolated_vertices, check_order_sequence_separation, check_partition_inversion,
    check_roundtrip, check_roundtrip_on, check_sdk_lemmas, check_strong_product,
    check_strong_product_groups, par_map, subject, sylow_specs, CheckReport,
};
use diffgraph::{parse_group_spec, reconstruct, Error, GroupSpec};

const SEEDS: [u64; 3] = [0, 1, 2];

/// Prints one line per criterion, bypassing test output capture.
fn verdict(n: u32, name: &str, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "acceptance {n:>2} {status} {name}");
    for f in failures.iter().take(5) {
        let _ = writeln!(out, "    {f}");
    }
    assert!(failures.is_empty(), "criterion {n} failed: {failures:?}");
}

fn failed(reports: impl IntoIterator<Item = CheckReport>) -> Vec<String> {
    reports
        .into_iter()
        .filter(|r| !r.passed())
        .map(|r| r.to_string())
        .collect()
}

fn specs(max_order: u64) -> Vec<GroupSpec> {
    enumerate_specs(max_order)
}

#[test]
fn a01_round_trip_up_to_1200() {
    let reports = par_map(&specs(1200), 0, |s| check_roundtrip(s, &SEEDS));
    assert!(reports.len() > 1000);
    verdict(
        1,
        "round-trip reconstruction, order <= 1200, 3 seeds",
        &failed(reports),
    );
}

#[test]
fn a02_injectivity_up_to_300() {
    let mut orders: Vec<u64> = specs(300).iter().map(|s| s.order()).collect();
    orders.dedup();
    let reports = par_map(&orders, 0, |&o| check_injectivity(o));
    verdict(2, "injectivity, order <= 300", &failed(reports));
}

#[test]
fn a03_c6_example() {
    let spec = parse_group_spec("2:1;3:1").unwrap();
    let d = difference_graph(&spec).unwrap();
    let mut failures = Vec::new();
    if d.graph.vertex_count() != 3 || d.graph.edge_count() != 2 {
        failures.push(format!(
            "{} vertices, {} edges",
            d.graph.vertex_count(),
            d.graph.edge_count()
        ));
    }
    if are_isomorphic(&d.graph, &SimpleGraph::path(3)).is_none() {
        failures.push("D(C_6) is not a path".into());
    }
    match reconstruct(&d.graph, true) {
        Ok(r) if r.spec == spec => {}
        other => failures.push(format!("reconstruct gave {other:?}")),
    }
    verdict(
        3,
        "D(C_6) is the 3-vertex path and reconstructs to 2:1;3:1",
        &failures,
    );
}

#[test]
fn a04_adjacency_and_vertex_set_up_to_400() {
    let reports = par_map(&specs(400), 0, |s| {
        [check_adjacency_lemma(s), check_isolated_vertices(s)]
    });
    verdict(
        4,
        "fast = definitional D(G) and isolated set, order <= 400",
        &failed(reports.into_iter().flatten()),
    );
}

#[test]
fn a05_class_formulas_up_to_1000() {
    let reports = par_map(&specs(1000), 0, check_class_formulas);
    verdict(
        5,
        "class sizes, largest classes and degrees, order <= 1000",
        &failed(reports),
    );
}

#[test]
fn a06_bipartite_criterion_up_to_1000() {
    let reports = par_map(&specs(1000), 0, check_bipartite_criterion);
    verdict(
        6,
        "bipartite iff r1 = 1 or t1 = 1, order <= 1000",
        &failed(reports),
    );
}

#[test]
fn a07_strong_product_up_to_400() {
    let mut reports = par_map(&specs(400), 0, |s| {
        check_strong_product(s.sylow_a(), s.sylow_b())
    });
    let c2 = CyclicProduct::new(vec![2]);
    reports.push(check_strong_product_groups(&c2, &c2, false));
    verdict(
        7,
        "enhanced power graph = strong product, C_2 x C_2 control",
        &failed(reports),
    );
}

#[test]
fn a08_cyclic_subgroup_counts_up_to_512() {
    let reports = par_map(&sylow_specs(512), 0, check_cyclic_subgroups);
    verdict(
        8,
        "cyclic subgroup counts, p-groups of order <= 512",
        &failed(reports),
    );
}

#[test]
fn a09_order_sequence_separation() {
    let reports = [
        check_order_sequence_separation(2000),
        check_partition_inversion(&[2, 3, 5], 10),
    ];
    verdict(
        9,
        "order counts separate specs <= 2000 and invert partitions <= 10",
        &failed(reports),
    );
}

#[test]
fn a10_sdk_lemmas_up_to_600() {
    let reports = par_map(&specs(600), 0, check_sdk_lemmas);
    verdict(
        10,
        "hull orientation, cyclic sides and SDK dichotomy, order <= 600",
        &failed(reports),
    );
}

#[test]
fn a11_negative_inputs() {
    let mut inputs: Vec<(String, SimpleGraph)> = (0..50u64)
        .map(|seed| {
            let n = 1 + (seed as usize * 37) % 60;
            let p = 0.05 + (seed % 10) as f64 * 0.09;
            (
                format!("random seed={seed} n={n} p={p:.2}"),
                random_graph(n, p, seed),
            )
        })
        .collect();
    inputs.push(("5-cycle".into(), SimpleGraph::cycle(5)));
    inputs.push(("triangle".into(), SimpleGraph::complete(3)));
    let mut failures = Vec::new();
    for (name, g) in &inputs {
        match reconstruct(g, true) {
            Err(Error::NotADifferenceGraph(_)) => {}
            Ok(r) => {
                // accepted: an independent construction must agree
                let d = difference_graph_definitional(&r.spec);
                if !r.validated || are_isomorphic(g, &d.graph).is_none() {
                    failures.push(format!(
                        "{name}: accepted as {} without a matching D(G)",
                        r.spec
                    ));
                }
            }
            Err(e) => failures.push(format!("{name}: unexpected error {e}")),
        }
    }
    verdict(
        11,
        "random graphs, 5-cycle and triangle are rejected or truly validated",
        &failures,
    );
}

#[test]
fn a12_fault_injection_c4_c9() {
    let spec = parse_group_spec("2:2;3:2").unwrap();
    let base = subject(&spec);
    let n = base.graph.vertex_count();
    assert_eq!(n, 23);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    assert_eq!(pairs.len(), 253);
    let undetected = par_map(&pairs, 0, |&(u, v)| {
        let mut l = base.clone();
        l.graph.toggle_edge(u, v);
        let caught = !check_adjacency_lemma_on(&spec, &l).passed()
            || !check_class_formulas_on(&spec, &l).passed()
            || !check_roundtrip_on(&spec, &l, &[0]).passed();
        (!caught).then(|| format!("flip ({u},{v}) passes every check"))
    });
    let failures: Vec<String> = undetected.into_iter().flatten().collect();
    verdict(
        12,
        "every single-pair flip in D(C_4 x C_9) is detected",
        &failures,
    );
}
