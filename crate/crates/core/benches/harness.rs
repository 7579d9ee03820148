use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use diffgraph::graph::shuffle;
use diffgraph::group_graphs::{difference_graph_definitional, difference_graph_fast};
use diffgraph::harness::{verify_range, Suite, VerifyOptions};
use diffgraph::{parse_group_spec, reconstruct};

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_range");
    group.sample_size(10);
    for max_order in [120u64, 300] {
        for (name, jobs) in [("sequential", 1), ("parallel", 0)] {
            let opts = VerifyOptions {
                suites: vec![Suite::Adjacency, Suite::ClassFormulas, Suite::Roundtrip],
                jobs,
                ..VerifyOptions::default()
            };
            group.bench_with_input(BenchmarkId::new(name, max_order), &max_order, |b, &m| {
                b.iter(|| verify_range(m, &opts))
            });
        }
    }
    group.finish();
}

fn constructions(c: &mut Criterion) {
    let mut group = c.benchmark_group("difference_graph");
    for text in ["2:2;3:2", "2:2,1;3:2,1", "2:3;3:2,1"] {
        let spec = parse_group_spec(text).unwrap();
        group.bench_with_input(BenchmarkId::new("fast", text), &spec, |b, s| {
            b.iter(|| difference_graph_fast(s))
        });
        group.bench_with_input(BenchmarkId::new("definitional", text), &spec, |b, s| {
            b.iter(|| difference_graph_definitional(s))
        });
    }
    group.finish();
}

fn reconstruction(c: &mut Criterion) {
    let mut group = c.benchmark_group("reconstruct");
    for text in ["2:2;3:2", "2:2,1;3:2,1", "2:3;3:2,1"] {
        let spec = parse_group_spec(text).unwrap();
        let (g, _) = shuffle(&difference_graph_fast(&spec).graph, 1);
        group.bench_with_input(BenchmarkId::new("unvalidated", text), &g, |b, g| {
            b.iter(|| reconstruct(g, false).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("validated", text), &g, |b, g| {
            b.iter(|| reconstruct(g, true).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, verify, constructions, reconstruction);
criterion_main!(benches);
