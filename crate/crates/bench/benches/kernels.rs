use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use qudit_entropy::entropy::{check_bipartite, check_paper_ssa, check_ssa_consistent, EntropyOptions};
use qudit_entropy::linalg::{eigvals_hermitian, HERMITIAN_TOL};
use qudit_entropy::partition::{BipartiteSplit, TripartiteSplit};
use qudit_entropy::toymodel::{toy_sweep, P_MAX};
use qudit_entropy_bench::states;

fn eigensolver(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigvals_hermitian");
    for dim in [4, 10, 12, 32] {
        let rho = states(dim, 1, 11).remove(0);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &rho, |b, rho| {
            b.iter(|| eigvals_hermitian(black_box(rho.matrix()), HERMITIAN_TOL).unwrap())
        });
    }
    group.finish();
}

fn inequality_checks(c: &mut Criterion) {
    let opts = EntropyOptions::default();
    let ten = states(10, 1, 3).remove(0);
    let twelve = states(12, 1, 4).remove(0);
    c.bench_function("check_bipartite (5,2)", |b| {
        b.iter(|| check_bipartite(black_box(&ten), BipartiteSplit::new(5, 2).unwrap(), &opts).unwrap())
    });
    c.bench_function("check_ssa_consistent (3,2,2)", |b| {
        b.iter(|| check_ssa_consistent(black_box(&twelve), TripartiteSplit::new(3, 2, 2).unwrap(), &opts).unwrap())
    });
    c.bench_function("check_paper_ssa", |b| b.iter(|| check_paper_ssa(black_box(&ten), &opts).unwrap()));
}

fn sweep(c: &mut Criterion) {
    let opts = EntropyOptions::default();
    c.bench_function("toy_sweep 200", |b| b.iter(|| toy_sweep(0.0, P_MAX, 200, &opts).unwrap()));
}

criterion_group!(benches, eigensolver, inequality_checks, sweep);
criterion_main!(benches);
