//! Benchmarks for the data-parallel sweeps: axiom checking, the two
//! routes of the structure-condition equivalence, and grid enumeration.
//!
//! The same suite measures the sequential fallback when built without
//! the default feature:
//!
//! ```text
//! cargo bench -p rbhom-core                           # rayon sweeps
//! cargo bench -p rbhom-core --no-default-features     # sequential
//! ```

use criterion::{criterion_group, criterion_main, Criterion};
use rbhom_core::flag::{enumerate_flags, FlagGrid};
use rbhom_core::sample;
use rbhom_core::{HomAlgebra, Scalar};
use std::hint::black_box;

fn dim_four_algebra() -> HomAlgebra {
    let rb = HomAlgebra::direct_product(&sample::base_r(), &sample::base_b()).unwrap();
    HomAlgebra::direct_product(&sample::algebra_e(), &rb).unwrap()
}

fn bench_check_algebra(c: &mut Criterion) {
    let alg = dim_four_algebra();
    assert!(alg.check_algebra().is_empty());
    c.bench_function("check_algebra/dim4", |b| {
        b.iter(|| black_box(black_box(&alg).check_algebra().is_empty()))
    });
}

fn bench_structure_condition_routes(c: &mut Criterion) {
    let datum = sample::direct_sum_datum(&sample::algebra_e(), &sample::algebra_e());
    c.bench_function("structure_conditions/direct/2+2", |b| {
        b.iter(|| black_box(black_box(&datum).structure_conditions().is_empty()))
    });
    c.bench_function("structure_conditions/product_oracle/2+2", |b| {
        b.iter(|| {
            let product = black_box(&datum).build_unified_product();
            black_box(product.algebra.check_algebra().is_empty())
        })
    });
}

fn bench_oracle_sweep(c: &mut Criterion) {
    let mut rng = sample::rng(0xbe9c);
    let datums: Vec<_> = (0..16).map(|_| sample::random_datum(&mut rng)).collect();
    c.bench_function("oracle_sweep/16_datums", |b| {
        b.iter(|| {
            for datum in &datums {
                let direct = datum.structure_conditions().is_empty();
                let via = datum.build_unified_product().algebra.check_algebra().is_empty();
                assert_eq!(direct, via);
            }
        })
    });
}

fn bench_enumeration(c: &mut Criterion) {
    let base = sample::base_r();
    let zero_one = vec![Scalar::zero(), Scalar::one()];
    let neg_l = vec![-&Scalar::lambda()];
    let grid = FlagGrid {
        l: zero_one.clone(),
        r: zero_one.clone(),
        t_r: zero_one.clone(),
        t_l: zero_one.clone(),
        a1: zero_one.clone(),
        k1: zero_one.clone(),
        b: vec![zero_one.clone(), zero_one.clone()],
        kfam: vec![neg_l.clone(), neg_l],
        a2: zero_one.clone(),
        k2: zero_one,
    };
    c.bench_function("enumerate_flags/1024_points", |b| {
        b.iter(|| black_box(enumerate_flags(&base, &grid).unwrap().len()))
    });
}

criterion_group!(
    benches,
    bench_check_algebra,
    bench_structure_condition_routes,
    bench_oracle_sweep,
    bench_enumeration
);
criterion_main!(benches);
