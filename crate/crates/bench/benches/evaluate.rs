use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use posfo_bench::{alternating_chain, host, random_sentences};
use posfo_core::eval::evaluate_naive;
use posfo_core::evaluate;
use std::hint::black_box;

fn chain(c: &mut Criterion) {
    let mut group = c.benchmark_group("alternating-chain");
    let h = host("H5");
    for n in [4, 8, 12] {
        let phi = alternating_chain(n);
        group.bench_with_input(BenchmarkId::new("memoized", n), &phi, |b, phi| {
            b.iter(|| evaluate(black_box(&h), phi).unwrap())
        });
        if n <= 8 {
            group.bench_with_input(BenchmarkId::new("naive", n), &phi, |b, phi| {
                b.iter(|| evaluate_naive(black_box(&h), phi).unwrap())
            });
        }
    }
    group.finish();
}

fn random(c: &mut Criterion) {
    let sentences = random_sentences(6, 200);
    let h = host("H7bar");
    c.bench_function("random-200-sentences-6q", |b| {
        b.iter(|| sentences.iter().filter(|f| evaluate(black_box(&h), f).unwrap()).count())
    });
}

criterion_group!(benches, chain, random);
criterion_main!(benches);
