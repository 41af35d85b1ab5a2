use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use liecoh::par::Parallelism;
use liecoh::suites::{self, default_alphas};

const MODES: [(&str, Parallelism); 2] = [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Parallel)];

fn cal_table(c: &mut Criterion) {
    let mut g = c.benchmark_group("cal_table_d4");
    let alphas = default_alphas();
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &m| {
            b.iter(|| suites::cal_checks(&[4], &alphas, m).unwrap())
        });
    }
    g.finish();
}

fn random_reps(c: &mut Criterion) {
    let mut g = c.benchmark_group("euler_40_trials");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &m| {
            b.iter(|| suites::euler_checks(7, 40, None, m).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("zsplit_10_trials");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &m| {
            b.iter(|| suites::zsplit_checks(7, 10, 5, None, m).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, cal_table, random_reps);
criterion_main!(benches);
