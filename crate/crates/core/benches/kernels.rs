use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use edgesub::coefficient::coefficient_table;
use edgesub::fracture::DEFAULT_FRACTURE_BUDGET;
use edgesub::pattern::{count_exact_bruteforce, CountOptions, CountQuery};
use edgesub::tutte::{component_histogram, tutte_k_bruteforce_with, RationalPoint};
use edgesub::{Execution, Graph, GraphFamily, PropertySpec};

const MODES: [(&str, Execution); 2] = [("auto", Execution::Auto), ("sequential", Execution::Sequential)];

fn fam(s: &str) -> Graph {
    s.parse::<GraphFamily>().unwrap().generate().unwrap()
}

fn bruteforce_count(c: &mut Criterion) {
    let mut group = c.benchmark_group("bruteforce_count");
    group.sample_size(10);
    let q = CountQuery::new(PropertySpec::builtin("connected").unwrap(), 4, fam("petersen"));
    for (name, exec) in MODES {
        let opts = CountOptions { exec, ..CountOptions::default() };
        group.bench_with_input(BenchmarkId::new(name, "connected/petersen/k4"), &opts, |b, o| {
            b.iter(|| count_exact_bruteforce(&q, o).unwrap())
        });
    }
    group.finish();
}

fn coefficients(c: &mut Criterion) {
    let mut group = c.benchmark_group("coefficient_table");
    group.sample_size(10);
    let h = Arc::new(fam("c4"));
    let phi = PropertySpec::builtin("forest").unwrap();
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "forest/c4"), &exec, |b, &e| {
            b.iter(|| coefficient_table(&phi, &h, DEFAULT_FRACTURE_BUDGET, e).unwrap())
        });
    }
    group.finish();
}

fn tutte(c: &mut Criterion) {
    let mut group = c.benchmark_group("tutte_bruteforce");
    group.sample_size(10);
    let g = fam("k6");
    let p = RationalPoint::int(3, -2);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "k6/k5"), &exec, |b, &e| {
            b.iter(|| tutte_k_bruteforce_with(&g, 5, &p, u128::MAX, e).unwrap())
        });
        group.bench_with_input(BenchmarkId::new(format!("{name}-histogram"), "k6/k5"), &exec, |b, &e| {
            b.iter(|| component_histogram(&g, 5, u128::MAX, e).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bruteforce_count, coefficients, tutte);
criterion_main!(benches);
