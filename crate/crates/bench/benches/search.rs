use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fmsched::brg::{build_brg, default_partition};
use fmsched::petri::DEFAULT_STATE_CAP;
use fmsched::search::{gfbs, oracle_optimal, BeamParams};
use fmsched_bench::{example_lot, random_nets, table3};

fn beam(c: &mut Criterion) {
    let mut group = c.benchmark_group("gfbs");
    let net = table3();
    let part = default_partition(&net);
    group.bench_function("table3/3x2", |b| {
        b.iter(|| gfbs(&net, &part, BeamParams::new(3, 2).unwrap()))
    });
    for lot in [1, 5, 10] {
        let net = example_lot(lot);
        let part = default_partition(&net);
        group.bench_with_input(BenchmarkId::new("example1/default", lot), &lot, |b, _| {
            b.iter(|| gfbs(&net, &part, BeamParams::default()))
        });
    }
    group.finish();
}

fn graphs(c: &mut Criterion) {
    let net = example_lot(2);
    let part = default_partition(&net);
    c.bench_function("brg/example1-lot2", |b| {
        b.iter(|| build_brg(&net, &part, DEFAULT_STATE_CAP).unwrap())
    });
}

fn oracle(c: &mut Criterion) {
    let nets = random_nets(10, 1);
    c.bench_function("oracle/random10", |b| {
        b.iter(|| {
            for n in &nets {
                oracle_optimal(n, DEFAULT_STATE_CAP).unwrap();
            }
        })
    });
}

criterion_group!(benches, beam, graphs, oracle);
criterion_main!(benches);
