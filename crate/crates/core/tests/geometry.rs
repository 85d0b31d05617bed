#![allow(clippy::needless_range_loop)]

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use weylbach::catalog::{catalog, make_bump, make_product_spheres, ProductSpheres, RoundSphere4};
use weylbach::field::random_samples;
use weylbach::jet::Jet;
use weylbach::linalg::{self, Mat4};
use weylbach::manifold::{AmbientPerturbation, Conformal, Perturbed, ScalarField};
use weylbach::quadrature::gauss_legendre;
use weylbach::tensor::forms::endo_form;
use weylbach::tensor::{exterior_derivative, DiffStrategy, MetricChart};
use weylbach::{CatalogGeometry, Geometry};

fn perturbed_product(seed: u64, amplitude: f64) -> Perturbed<ProductSpheres, AmbientPerturbation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Perturbed {
        base: ProductSpheres { r1: 1.0, r2: 2f64.sqrt() },
        direction: AmbientPerturbation::random(6, 1.0, &mut rng),
        t: amplitude,
    }
}

#[test]
fn catalog_scalar_curvature_matches_declared_constants() {
    for entry in catalog() {
        for (patch, x) in random_samples(&entry.geometry, 20, 1) {
            let st = MetricChart::new(&entry.geometry, patch).curvature_stack(&x).unwrap();
            let declared = entry.constants.scalar;
            assert!((st.scalar - declared).abs() <= 1e-9 * declared.abs().max(1.0), "{}: {} vs {declared}", entry.name, st.scalar);
            if entry.constants.is_einstein {
                let r0 = st.trace_free_ricci();
                assert!(linalg::norm(&r0, &st.inverse) <= 1e-8 * declared.abs().max(1.0), "{}", entry.name);
            }
        }
    }
}

/// `max |∇ω|` and `max |dω|` over a random sample.
fn kahler_form_defects(g: &CatalogGeometry) -> (f64, f64) {
    let j = g.complex_structure().unwrap();
    let (mut nabla, mut d): (f64, f64) = (0.0, 0.0);
    for (patch, x) in random_samples(g, 20, 2) {
        let chart = MetricChart::new(g, patch);
        let metric = chart.metric_jets::<5>(&x, 1).unwrap();
        let omega: Mat4<Jet<5>> = endo_form(&metric, &j);
        let gamma = chart.curvature_stack(&x).unwrap().christoffel;
        let w = linalg::values(&omega);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let mut v = omega[b][c].derivative(a).value();
                    for e in 0..4 {
                        v -= gamma[e][a][b] * w[e][c] + gamma[e][a][c] * w[b][e];
                    }
                    nabla = nabla.max(v.abs());
                }
            }
        }
        for comp in exterior_derivative(&omega) {
            d = d.max(comp.value().abs());
        }
    }
    (nabla, d)
}

#[test]
fn kahler_entries_have_parallel_closed_forms() {
    for entry in catalog().into_iter().filter(|e| e.is_kahler()) {
        let (nabla, d) = kahler_form_defects(&entry.geometry);
        assert!(nabla <= 1e-8, "{}: nabla omega {nabla}", entry.name);
        assert!(d <= 1e-9, "{}: d omega {d}", entry.name);
    }
}

#[test]
fn product_factor_areas() {
    // area of the first factor from its block of the metric on the chart plane,
    // with ρ = tan(πs/2)
    let (s, w) = gauss_legendre(48, 0.0, 1.0);
    for (r1, r2) in [(1.0, 1.0), (1.0, 2f64.sqrt()), (0.7, 2.5)] {
        let entry = make_product_spheres(r1, r2).unwrap();
        let (a1, a2) = entry.constants.areas.unwrap();
        for (factor, radius, expected) in [(0, r1, a1), (1, r2, a2)] {
            let mut area = 0.0;
            for (si, wi) in s.iter().zip(&w) {
                let rho = (PI * si / 2.0).tan();
                let mut x = [0.0; 4];
                x[2 * factor] = rho;
                let g: Mat4<f64> = entry.geometry.metric(0, &x);
                let (i, k) = (2 * factor, 2 * factor + 1);
                let det = g[i][i] * g[k][k] - g[i][k] * g[k][i];
                area += wi * det.sqrt() * rho * 2.0 * PI * (PI / 2.0) * (1.0 + rho * rho);
            }
            assert!((area - expected).abs() <= 1e-8 * expected, "{area} vs {expected}");
            assert!((expected - 4.0 * PI * radius * radius).abs() < 1e-12 * expected);
        }
    }
}

#[test]
fn curvature_is_chart_independent() {
    let geometries = [CatalogGeometry::Sphere4(RoundSphere4 { radius: 1.0 }), CatalogGeometry::Product(ProductSpheres { r1: 1.0, r2: 2.0 })];
    for g in geometries {
        let mut compared = 0;
        let atlas = g.atlas();
        for (patch, x) in random_samples(&g, 10, 3) {
            let p = atlas.embed(patch, &x);
            let other = (0..atlas.patch_count()).filter(|q| *q != patch).find_map(|q| atlas.chart_coords(q, &p).map(|y| (q, y)));
            let Some((q, y)) = other.filter(|(_, y)| y.iter().all(|v| v.abs() < 3.0)) else { continue };
            let a = MetricChart::new(&g, patch).curvature_stack(&x).unwrap();
            let b = MetricChart::new(&g, q).curvature_stack(&y).unwrap();
            assert!((a.scalar - b.scalar).abs() < 1e-9);
            assert!((a.weyl_norm_sq() - b.weyl_norm_sq()).abs() < 1e-9);
            assert!((a.weyl_plus_norm_sq() - b.weyl_plus_norm_sq()).abs() < 1e-9);
            assert!((a.bach_norm() - b.bach_norm()).abs() < 1e-9);
            compared += 1;
        }
        assert!(compared >= 3, "only {compared} points lie in two charts");
    }
}

#[test]
fn riemann_symmetries_on_a_generic_metric() {
    let g = perturbed_product(4, 0.1);
    for (patch, x) in random_samples(&g, 5, 4) {
        let st = MetricChart::new(&g, patch).curvature_stack(&x).unwrap();
        let r = |a, b, c, d| st.riemann.get(a, b, c, d);
        let unit = st.riemann.max_abs();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let v = r(a, b, c, d);
                        assert!((v + r(b, a, c, d)).abs() <= 1e-12 * unit);
                        assert!((v - r(c, d, a, b)).abs() <= 1e-12 * unit);
                        assert!((v + r(a, c, d, b) + r(a, d, b, c)).abs() <= 1e-12 * unit);
                    }
                }
            }
        }
        // W = W⁺ + W⁻, and both halves are trace-free
        let split_defect = (0..256).map(|i| (st.weyl_plus.c[i] + st.weyl_minus.c[i] - st.weyl.c[i]).abs()).fold(0.0, f64::max);
        assert!(split_defect <= 1e-12 * unit);
        let tr = st.weyl_plus.ricci_contraction(&st.inverse);
        assert!(linalg::max_abs(&tr) <= 1e-10 * unit);
        // |W|² = |W⁺|² + |W⁻|²
        let split = st.weyl_plus.norm_sq(&st.inverse) + st.weyl_minus.norm_sq(&st.inverse);
        assert!((split - st.weyl_norm_sq()).abs() <= 1e-10 * st.weyl_norm_sq().max(1.0));
    }
}

#[test]
fn bach_is_symmetric_trace_free_and_divergence_free() {
    let g = perturbed_product(5, 0.1);
    for (patch, x) in random_samples(&g, 3, 5) {
        let chart = MetricChart::new(&g, patch);
        let st = chart.curvature_stack(&x).unwrap();
        let unit = linalg::max_abs(&st.bach);
        assert!(unit > 1e-3, "perturbation should break Bach-flatness");
        assert!(linalg::max_abs(&linalg::sub(&st.bach, &linalg::transpose(&st.bach))) <= 1e-10 * unit);
        assert!(linalg::trace(&st.bach, &st.inverse).abs() <= 1e-10 * unit);
        let div = chart.bach_divergence(&x).unwrap();
        assert!(div.iter().all(|v| v.abs() <= 1e-8 * unit.max(st.riemann_norm_sq())), "{div:?}");
    }
}

#[test]
fn weyl_tensor_is_conformally_covariant() {
    let base = ProductSpheres { r1: 1.0, r2: 2f64.sqrt() };
    let atlas = base.atlas();
    let (patch0, x0) = random_samples(&base, 1, 6)[0];
    let u = make_bump(0.5, atlas.embed(patch0, &x0), 1.5).unwrap();
    let rescaled = Conformal { base, factor: u.clone() };
    for (patch, x) in random_samples(&base, 10, 7).into_iter().chain([(patch0, x0)]) {
        let uv: f64 = u.value(atlas, patch, &x);
        let w = MetricChart::new(&base, patch).curvature_stack(&x).unwrap().weyl;
        let wu = MetricChart::new(&rescaled, patch).curvature_stack(&x).unwrap().weyl;
        for (a, b) in w.c.iter().zip(&wu.c) {
            assert!((uv * a - b).abs() <= 1e-10 * w.max_abs().max(1.0));
        }
    }
}

#[test]
fn finite_differences_agree_with_jets() {
    let g = perturbed_product(8, 0.05);
    for (patch, x) in random_samples(&g, 3, 8) {
        let jets = MetricChart::new(&g, patch).curvature_stack(&x).unwrap();
        let fd = MetricChart::new(&g, patch).with_strategy(DiffStrategy::finite_difference()).curvature_stack(&x).unwrap();
        assert!((jets.scalar - fd.scalar).abs() <= 1e-7 * jets.scalar.abs());
        let unit = linalg::max_abs(&jets.bach);
        assert!(linalg::max_abs(&linalg::sub(&jets.bach, &fd.bach)) <= 1e-4 * unit);
    }
}
