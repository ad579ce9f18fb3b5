use std::hint::black_box;

use burnside_core::burnside::BurnsideRing;
use burnside_core::ring::RingSpec;
use burnside_core::separability::commutant_basis;
use burnside_core::{Config, Execution, Group, GroupSpec, SubgroupLattice};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn modes() -> [(&'static str, Config); 2] {
    [("sequential", Config::sequential()), ("parallel", Config { execution: Execution::Parallel, ..Config::default() })]
}

fn group(s: &str) -> Group {
    GroupSpec::parse(s).unwrap().build(&Config::default()).unwrap()
}

fn lattice(c: &mut Criterion) {
    let mut bench = c.benchmark_group("subgroup lattice");
    bench.sample_size(10);
    for s in ["S4", "S5"] {
        let g = group(s);
        for (mode, config) in modes() {
            bench.bench_with_input(BenchmarkId::new(mode, s), &g, |b, g| {
                b.iter(|| SubgroupLattice::new(black_box(g), &config).unwrap())
            });
        }
    }
    bench.finish();
}

fn burnside_ring(c: &mut Criterion) {
    let mut bench = c.benchmark_group("burnside ring");
    bench.sample_size(10);
    for s in ["S4", "prod(D8,C2)", "S5"] {
        let g = group(s);
        for (mode, config) in modes() {
            bench.bench_with_input(BenchmarkId::new(mode, s), &g, |b, g| {
                b.iter(|| BurnsideRing::new(black_box(g), &config).unwrap())
            });
        }
    }
    bench.finish();
}

fn commutant(c: &mut Criterion) {
    let mut bench = c.benchmark_group("commutant");
    bench.sample_size(10);
    for s in ["C3", "S3"] {
        let g = group(s);
        for (mode, config) in modes() {
            bench.bench_with_input(BenchmarkId::new(mode, s), &g, |b, g| {
                b.iter(|| commutant_basis(black_box(g), RingSpec::Rationals, &config).unwrap())
            });
        }
    }
    bench.finish();
}

criterion_group!(benches, lattice, burnside_ring, commutant);
criterion_main!(benches);
