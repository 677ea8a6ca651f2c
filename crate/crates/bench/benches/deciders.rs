use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use measiso_bench::{complete, square_ladder};
use measiso_core::generate::{random_relabel, random_two_isomorphic};
use measiso_core::{
    canonical_form, cycle_isomorphic, enumerate_cycles, graph_isomorphic, is_member,
    sample_measurement_set, two_isomorphic_search, RealizeOptions, SearchOptions,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn canonical(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical_form");
    for n in [5, 7, 9] {
        let g = complete(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| canonical_form(g))
        });
    }
    group.finish();
}

fn isomorphism(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut group = c.benchmark_group("graph_isomorphic");
    for k in [3, 5, 7] {
        let g = square_ladder(k);
        let (h, _) = random_relabel(&mut rng, &g);
        group.bench_with_input(BenchmarkId::from_parameter(k), &(g, h), |b, (g, h)| {
            b.iter(|| graph_isomorphic(g, h))
        });
    }
    group.finish();
}

fn cycles(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_cycles");
    for n in [5, 6, 7] {
        let g = complete(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| enumerate_cycles(g).unwrap())
        });
    }
    group.finish();
}

fn two_iso(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut group = c.benchmark_group("two_isomorphism");
    group.sample_size(20);
    for k in [2, 3, 4] {
        let g = square_ladder(k);
        let (h, _) = random_two_isomorphic(&mut rng, &g, 3);
        group.bench_with_input(BenchmarkId::new("cycle", k), &(&g, &h), |b, (g, h)| {
            b.iter(|| cycle_isomorphic(g, h).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("orbit", k), &(&g, &h), |b, (g, h)| {
            b.iter(|| two_isomorphic_search(g, h, &SearchOptions::orbit_complete()))
        });
    }
    group.finish();
}

fn membership(c: &mut Criterion) {
    let g = complete(4);
    let targets = sample_measurement_set(&g, 2, 8, 3, 1.0);
    let mut group = c.benchmark_group("is_member_k4");
    group.sample_size(20);
    for d in [2, 3] {
        group.bench_with_input(BenchmarkId::from_parameter(d), &targets, |b, targets| {
            b.iter(|| {
                for t in targets {
                    is_member(&g, t, d, &RealizeOptions::default()).unwrap();
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, canonical, isomorphism, cycles, two_iso, membership);
criterion_main!(benches);
