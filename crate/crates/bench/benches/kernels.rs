use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mirrorwave_bench::{default_grid, figure5_moving, figure5_sudden, near_limit};
use mirrorwave_core::analysis::{main_fringe_refined, profile, POINTS_PER_FRINGE};
use mirrorwave_core::specialfn::{faddeeva, fresnel};
use mirrorwave_core::waves::{moshinsky, psi_moving, MoshinskyArgs};
use mirrorwave_core::PhysicalContext;
use num_complex::Complex64;

fn special_functions(c: &mut Criterion) {
    let mut g = c.benchmark_group("faddeeva");
    for (label, z) in [
        ("series", Complex64::new(0.7, 0.4)),
        ("extended_series", Complex64::new(3.5, 0.6)),
        ("continued_fraction", Complex64::new(9.0, 9.0)),
        ("lower_half_plane", Complex64::new(1.5, -0.8)),
    ] {
        g.bench_with_input(BenchmarkId::from_parameter(label), &z, |b, z| b.iter(|| faddeeva(black_box(*z))));
    }
    g.finish();
    c.bench_function("fresnel", |b| b.iter(|| fresnel(black_box(1.3))));
}

fn wavefunctions(c: &mut Criterion) {
    let ctx = PhysicalContext::rb87();
    let args = MoshinskyArgs::new(-20e-6, 1.37e7, 0.01, ctx).unwrap();
    c.bench_function("moshinsky", |b| b.iter(|| moshinsky(black_box(&args))));
    let s = figure5_moving();
    c.bench_function("psi_moving", |b| b.iter(|| psi_moving(black_box(-20e-6), &s)));
    for (label, s) in [("moving", figure5_moving()), ("sudden", figure5_sudden())] {
        let xs = default_grid(&s, 2000);
        c.bench_function(&format!("profile_2000_{label}"), |b| b.iter(|| profile(&s, black_box(&xs))));
    }
}

fn fringes(c: &mut Criterion) {
    let s = near_limit();
    c.bench_function("main_fringe_refined", |b| b.iter(|| main_fringe_refined(black_box(&s), POINTS_PER_FRINGE)));
}

criterion_group!(benches, special_functions, wavefunctions, fringes);
criterion_main!(benches);
