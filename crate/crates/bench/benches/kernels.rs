use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use weylbach::catalog::{FubiniStudy, ProductSpheres};
use weylbach::hirzebruch::compare_across_structures;
use weylbach::jet::{Jet, Jet4};
use weylbach::quadrature::calabi_energy_numeric;
use weylbach::{CohomologyClass, MetricChart};

fn jets(c: &mut Criterion) {
    let x = Jet4::variable(0.3, 0, 4);
    let y = Jet4::variable(-0.7, 1, 4);
    c.bench_function("jet4_mul", |b| b.iter(|| black_box(x) * black_box(y)));
    let z: Jet<126> = Jet::variable(0.2, 2, 5);
    c.bench_function("jet5_mul", |b| b.iter(|| black_box(z) * black_box(z)));
}

fn curvature(c: &mut Criterion) {
    let fs = FubiniStudy { scale: 1.0 };
    let x = [0.3, -0.2, 0.5, 0.1];
    c.bench_function("curvature_stack_fubini_study", |b| {
        b.iter(|| MetricChart::new(&fs, 0).curvature_stack(black_box(&x)).unwrap())
    });
    c.bench_function("bach_divergence_fubini_study", |b| {
        b.iter(|| MetricChart::new(&fs, 0).bach_divergence(black_box(&x)).unwrap())
    });
}

fn energies(c: &mut Criterion) {
    let mut group = c.benchmark_group("quadrature");
    group.sample_size(10);
    let g = ProductSpheres { r1: 1.0, r2: 2f64.sqrt() };
    group.bench_function("calabi_product_n8", |b| b.iter(|| calabi_energy_numeric(black_box(&g), 8).unwrap()));
    group.finish();

    let class = CohomologyClass::from_integers(1, 7, 300);
    c.bench_function("compare_many_structures", |b| b.iter(|| compare_across_structures(black_box(&class)).unwrap()));
}

criterion_group!(benches, jets, curvature, energies);
criterion_main!(benches);
