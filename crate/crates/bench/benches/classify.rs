use criterion::{criterion_group, criterion_main, Criterion};
use posfo_core::classify::{classification_table, cross_check_table, semantic_class};
use posfo_core::{classify_digraph, Digraph};
use std::hint::black_box;

fn atlas(c: &mut Criterion) {
    let all: Vec<Digraph> = Digraph::all(3).collect();
    c.bench_function("decision-tree-512", |b| {
        b.iter(|| {
            all.iter()
                .filter(|h| classify_digraph(black_box(h)).unwrap().verdict.short_name() == "L")
                .count()
        })
    });
    c.bench_function("semantic-512", |b| {
        b.iter(|| {
            all.iter()
                .filter(|h| semantic_class(black_box(h)).short_name() == "L")
                .count()
        })
    });
    c.bench_function("certificate-check-512", |b| {
        b.iter(|| {
            all.iter()
                .all(|h| classify_digraph(h).unwrap().check(&h.to_structure()).is_ok())
        })
    });
}

fn table(c: &mut Criterion) {
    let mut group = c.benchmark_group("table");
    group.sample_size(10);
    group.bench_function("size-3", |b| b.iter(|| classification_table(3, false).unwrap().len()));
    group.bench_function("cross-check-size-3", |b| b.iter(|| cross_check_table(3).unwrap().len()));
    group.finish();
}

criterion_group!(benches, atlas, table);
criterion_main!(benches);
