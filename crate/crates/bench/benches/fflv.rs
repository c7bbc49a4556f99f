use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fflv_core::characters::{qchar_branching, qchar_polytope};
use fflv_core::marked_poset::{chain_point_count, fflv_marked_poset};
use fflv_core::straightening::{straighten, straightening_paths, straightening_sweep, violating_exponents};
use fflv_core::{enumerate, inequalities, DominantWeight, Family};

fn lattice_points(c: &mut Criterion) {
    let mut g = c.benchmark_group("lattice_points");
    for (n, m) in [(2, vec![2, 2]), (3, vec![1, 1, 1]), (3, vec![2, 1, 1])] {
        let lam = DominantWeight::new(m);
        let id = format!("odd n={n} λ=({lam})");
        let sys = inequalities(Family::Odd, n, &lam).unwrap();
        g.bench_function(BenchmarkId::new("enumerate", &id), |b| b.iter(|| enumerate(black_box(&sys)).len()));
        g.bench_function(BenchmarkId::new("count", &id), |b| b.iter(|| black_box(&sys).count()));
        let poset = fflv_marked_poset(Family::Odd, n, &lam).unwrap();
        g.bench_function(BenchmarkId::new("chain_count", &id), |b| {
            b.iter(|| chain_point_count(black_box(&poset)).unwrap())
        });
    }
    g.finish();
}

fn characters(c: &mut Criterion) {
    let mut g = c.benchmark_group("characters");
    g.sample_size(20);
    for (n, m) in [(2, vec![2, 2]), (3, vec![1, 1, 1])] {
        let lam = DominantWeight::new(m);
        let id = format!("n={n} λ=({lam})");
        g.bench_function(BenchmarkId::new("polytope", &id), |b| {
            b.iter(|| qchar_polytope(Family::Odd, n, black_box(&lam)).unwrap())
        });
        g.bench_function(BenchmarkId::new("branching", &id), |b| {
            b.iter(|| qchar_branching(n, black_box(&lam)).unwrap())
        });
    }
    g.finish();
}

fn straightening(c: &mut Criterion) {
    let mut g = c.benchmark_group("straightening");
    g.sample_size(10);
    let lam = DominantWeight::new(vec![2, 2, 2]);
    let paths = straightening_paths(3).unwrap();
    let path = paths.last().unwrap();
    let s = violating_exponents(&lam, path).into_iter().next().unwrap();
    g.bench_function("straighten n=3", |b| b.iter(|| straighten(&lam, black_box(&s), path).unwrap()));
    g.bench_function("sweep n=2 m≤2", |b| b.iter(|| straightening_sweep(2, 2).unwrap().len()));
    g.finish();
}

criterion_group!(benches, lattice_points, characters, straightening);
criterion_main!(benches);
