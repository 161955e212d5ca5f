//! Rayon pool against a single-thread run of the same data-parallel kernels.
//! Building with `--no-default-features` makes both arms sequential.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use liftcong::halfint::shimura_match;
use liftcong::lift::{lift_table, LiftSpec};
use liftcong::par;
use liftcong::qforms::HalfIntegralMatrix;
use liftcong::siegel::{density_profile, stabilization_bound};

fn density(c: &mut Criterion) {
    let t = HalfIntegralMatrix::from_2t(vec![vec![2, 1], vec![1, 2]]).unwrap();
    let p = 3;
    let nu = stabilization_bound(&t, p) + 1;
    let mut g = c.benchmark_group("density_profile");
    g.sample_size(10);
    g.bench_function(BenchmarkId::new("rayon", nu), |b| b.iter(|| density_profile(&t, p, nu).unwrap()));
    g.bench_function(BenchmarkId::new("sequential", nu), |b| {
        b.iter(|| par::sequential(|| density_profile(&t, p, nu).unwrap()))
    });
    g.finish();
}

fn lift(c: &mut Criterion) {
    let g = shimura_match(9, 400).unwrap().remove(0);
    let spec = LiftSpec::new(2, 10, g).unwrap();
    let bound = 200;
    let mut grp = c.benchmark_group("lift_table");
    grp.sample_size(10);
    grp.bench_function(BenchmarkId::new("rayon", bound), |b| b.iter(|| lift_table(&spec, bound).unwrap()));
    grp.bench_function(BenchmarkId::new("sequential", bound), |b| {
        b.iter(|| par::sequential(|| lift_table(&spec, bound).unwrap()))
    });
    grp.finish();
}

criterion_group!(benches, density, lift);
criterion_main!(benches);
