use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use wallenius::{log_likelihood, pmf, pmf_oracle, DrawOutcome, WeightVector};
use wallenius_bench::{dataset3, urn3, weights3};

fn bench_pmf(c: &mut Criterion) {
    let urn = urn3();
    let w = weights3();
    let x = DrawOutcome::new(vec![5, 3, 2]);
    c.bench_function("pmf_3cat_n10", |b| {
        b.iter(|| pmf(black_box(&urn), black_box(&w), black_box(&x)).unwrap())
    });

    let one_sided = DrawOutcome::new(vec![10, 0, 0]);
    c.bench_function("pmf_single_category_closed_form", |b| {
        b.iter(|| pmf(black_box(&urn), black_box(&w), black_box(&one_sided)).unwrap())
    });

    c.bench_function("pmf_oracle_3cat_n10", |b| {
        b.iter(|| pmf_oracle(black_box(&urn), black_box(&w), black_box(&x)).unwrap())
    });

    let data = dataset3(200);
    c.bench_function("loglik_200_tables", |b| {
        let probe = WeightVector::new(vec![0.45, 0.35, 0.2]).unwrap();
        b.iter(|| log_likelihood(black_box(&data), black_box(&probe)).unwrap())
    });
}

criterion_group!(benches, bench_pmf);
criterion_main!(benches);
