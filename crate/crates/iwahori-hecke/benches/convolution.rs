use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use exact_arith::par::Strategy;
use iwahori_hecke::operators::expand_operator;
use iwahori_hecke::relations::verify_gritsenko_with;
use iwahori_hecke::{HeckeOperatorTag, Level};

fn convolution(c: &mut Criterion) {
    let level = Level::new(3, 3, 1).unwrap();
    let vp = expand_operator(HeckeOperatorTag::VP, &level).unwrap();
    let t1 = expand_operator(HeckeOperatorTag::T(1), &level).unwrap();
    let mut group = c.benchmark_group("convolve_vp_t1_n3_p3");
    for strategy in [Strategy::Sequential, Strategy::Parallel] {
        group.bench_function(format!("{strategy:?}"), |b| {
            b.iter(|| black_box(vp.convolve_with(&t1, strategy).unwrap()))
        });
    }
    group.finish();

    let level = Level::new(3, 2, 1).unwrap();
    let mut group = c.benchmark_group("gritsenko_n3_p2");
    group.sample_size(10);
    for strategy in [Strategy::Sequential, Strategy::Parallel] {
        group.bench_function(format!("{strategy:?}"), |b| {
            b.iter(|| black_box(verify_gritsenko_with(&level, strategy).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, convolution);
criterion_main!(benches);
