use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use vigor_core::sample;
use vigor_core::twogen::default_pipeline;
use vigor_core::words::{default_blocks, first_relation, pingpong_pair};
use vigor_core::Arity;

fn arithmetic(c: &mut Criterion) {
    let a = Arity::new(2).unwrap();
    let mut rng = sample::rng(1);
    let f = sample::element(&mut rng, a, 6, 6);
    let g = sample::element(&mut rng, a, 6, 6);
    let s = sample::clopen(&mut rng, a, 5, 6);

    c.bench_function("compose", |b| b.iter(|| black_box(&f).compose(black_box(&g)).unwrap()));
    c.bench_function("invert", |b| b.iter(|| black_box(&f).invert()));
    c.bench_function("image", |b| b.iter(|| black_box(&f).image(black_box(&s)).unwrap()));
    c.bench_function("support", |b| b.iter(|| black_box(&f).support()));
    c.bench_function("order", |b| b.iter(|| black_box(&f).order(10_000)));
    c.bench_function("clopen union", |b| {
        b.iter_batched(
            || sample::clopen(&mut rng, a, 6, 8),
            |x| x.union(&s).unwrap(),
            BatchSize::SmallInput,
        )
    });
    c.bench_function("complement", |b| b.iter(|| black_box(&s).complement()));
}

fn freeness(c: &mut Criterion) {
    let a = Arity::new(2).unwrap();
    let cert = pingpong_pair(&default_blocks(a), 0).unwrap();
    let mut group = c.benchmark_group("freeness");
    group.sample_size(10);
    group.bench_function("reduced words to length 6", |b| {
        b.iter(|| first_relation(&cert.gamma, &cert.partner, 6).unwrap())
    });
    group.finish();
}

fn pipeline(c: &mut Criterion) {
    let a = Arity::new(2).unwrap();
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    group.bench_function("two generators, order 2", |b| b.iter(|| default_pipeline(a, 2, 2, 6).unwrap()));
    group.finish();
}

criterion_group!(benches, arithmetic, freeness, pipeline);
criterion_main!(benches);
