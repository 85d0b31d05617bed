//! Deterministic integration of pointwise densities over the model manifolds.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Mat4};
use crate::manifold::{Atlas, Geometry, Node, SymmetricField};
use crate::tensor::{CurvatureJets, MetricChart};

/// Default per-axis node count.
pub const DEFAULT_RESOLUTION: usize = 24;

/// Conventions shared by every reported integral.
pub const CONVENTION: &str = "dmu = sqrt(det g) d^4x; |W|^2 = (1/4) W_abcd W^abcd";

/// Gauss–Legendre nodes and weights on `[a, b]`.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            dp = n as f64 * (z * p - p0) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        xs[i] = mid - half * z;
        xs[n - 1 - i] = mid + half * z;
        ws[i] = half * w;
        ws[n - 1 - i] = half * w;
    }
    (xs, ws)
}

/// A tensor-product quadrature grid over one of the model manifolds.
#[derive(Clone, Debug)]
pub struct QuadratureGrid {
    pub nodes: Vec<Node>,
    pub resolution: usize,
    pub scheme: &'static str,
}

impl QuadratureGrid {
    pub fn new(atlas: Atlas, resolution: usize) -> Self {
        let scheme = match atlas {
            Atlas::Sphere4 => "Gauss-Legendre in height and Hopf radius, trapezoid in Hopf angles",
            Atlas::SpherePair => "Gauss-Legendre in cos(theta), trapezoid in phi, per factor",
            Atlas::ComplexProjective => "Gauss-Legendre in |z|^2/(1+|z|^2) and Hopf radius, trapezoid in angles",
            Atlas::Torus => "trapezoid",
        };
        Self { nodes: atlas.nodes(resolution), resolution, scheme }
    }
}

/// Result of a numerical integral.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub value: f64,
    /// `|I(N) − I(N/2)|`.
    pub error_estimate: f64,
    pub nodes: usize,
    pub convention: String,
}

/// Which part of the Weyl tensor an energy integrates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeylPart {
    Full,
    Plus,
}

fn sum_over<G, F>(geometry: &G, density: &F, resolution: usize) -> Result<(f64, usize)>
where
    G: Geometry,
    F: Fn(usize, &[f64; 4]) -> Result<f64> + Sync,
{
    let grid = QuadratureGrid::new(geometry.atlas(), resolution);
    let terms: Vec<Result<f64>> = grid
        .nodes
        .par_iter()
        .map(|node| {
            let g = geometry.metric(node.patch, &node.x);
            let f = density(node.patch, &node.x)?;
            if !f.is_finite() {
                return Err(Error::NonFiniteDensity);
            }
            Ok(node.weight * f * linalg::determinant(&g).sqrt())
        })
        .collect();
    let mut total = 0.0;
    for t in terms {
        total += t?;
    }
    Ok((total, grid.nodes.len()))
}

/// `∫ f dμ_g` at `resolution` nodes per axis, with the error estimated
/// against the half-resolution grid.
pub fn integrate<G, F>(geometry: &G, density: F, resolution: usize) -> Result<EnergyReport>
where
    G: Geometry,
    F: Fn(usize, &[f64; 4]) -> Result<f64> + Sync,
{
    if resolution < 4 {
        return Err(Error::InvalidParameter(format!("resolution {resolution} is below 4")));
    }
    let (value, nodes) = sum_over(geometry, &density, resolution)?;
    let (coarse, _) = sum_over(geometry, &density, resolution / 2)?;
    Ok(EnergyReport { value, error_estimate: (value - coarse).abs(), nodes, convention: CONVENTION.to_string() })
}

/// Total volume.
pub fn volume<G: Geometry>(geometry: &G, resolution: usize) -> Result<EnergyReport> {
    integrate(geometry, |_, _| Ok(1.0), resolution)
}

fn curvature_at<G: Geometry>(geometry: &G, patch: usize, x: &[f64; 4]) -> Result<CurvatureJets<15>> {
    MetricChart::new(geometry, patch).curvature_jets::<15>(x, 2)
}

/// Calabi energy `∫ s² dμ`.
pub fn calabi_energy_numeric<G: Geometry>(geometry: &G, resolution: usize) -> Result<EnergyReport> {
    integrate(
        geometry,
        |patch, x| {
            let s = curvature_at(geometry, patch, x)?.scalar.value();
            Ok(s * s)
        },
        resolution,
    )
}

/// Pointwise `|W|²` or `|W⁺|²`.
pub fn weyl_density<G: Geometry>(geometry: &G, which: WeylPart, patch: usize, x: &[f64; 4]) -> Result<f64> {
    let cj = curvature_at(geometry, patch, x)?;
    let w = cj.weyl_values();
    let ginv = cj.inverse_values();
    Ok(match which {
        WeylPart::Full => w.norm_sq(&ginv),
        WeylPart::Plus => {
            let (plus, _) = crate::tensor::curvature::self_dual_parts(&w, &cj.metric_values(), &ginv);
            plus.norm_sq(&ginv)
        }
    })
}

/// Weyl energy `∫ |W|² dμ` or `∫ |W⁺|² dμ`.
pub fn weyl_energy_numeric<G: Geometry>(geometry: &G, which: WeylPart, resolution: usize) -> Result<EnergyReport> {
    integrate(geometry, |patch, x| weyl_density(geometry, which, patch, x), resolution)
}

/// Bach tensor at a chart point.
pub fn bach_at<G: Geometry>(geometry: &G, patch: usize, x: &[f64; 4]) -> Result<Mat4<f64>> {
    Ok(MetricChart::new(geometry, patch).curvature_stack(x)?.bach)
}

/// `∫ ⟨h, B⟩ dμ` for a symmetric field `h`.
pub fn bach_pairing<G: Geometry, H: SymmetricField>(geometry: &G, h: &H, resolution: usize) -> Result<EnergyReport> {
    integrate(
        geometry,
        |patch, x| {
            let st = MetricChart::new(geometry, patch).curvature_stack(x)?;
            let hv = h.value::<f64, G>(geometry, patch, x);
            Ok(linalg::inner(&hv, &st.bach, &st.inverse))
        },
        resolution,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{FlatTorus, ProductSpheres, RoundSphere4};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let (x, w) = gauss_legendre(5, 0.0, 2.0);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(9)).sum();
        assert_relative_eq!(s, 2f64.powi(10) / 10.0, max_relative = 1e-14);
        let (x, w) = gauss_legendre(4, -1.0, 1.0);
        assert_relative_eq!(w.iter().sum::<f64>(), 2.0, epsilon = 1e-15);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
        let (x, _) = gauss_legendre(3, -1.0, 1.0);
        assert_relative_eq!(x[1], 0.0, epsilon = 1e-16);
    }

    #[test]
    fn volumes() {
        let v = volume(&ProductSpheres { r1: 1.0, r2: 1.0 }, 12).unwrap();
        assert_relative_eq!(v.value, 16.0 * PI * PI, max_relative = 1e-10);
        let v = volume(&RoundSphere4 { radius: 1.0 }, 12).unwrap();
        assert_relative_eq!(v.value, 8.0 * PI * PI / 3.0, max_relative = 1e-10);
        let v = volume(&FlatTorus, 4).unwrap();
        assert_relative_eq!(v.value, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn zero_density_and_non_finite() {
        let z = integrate(&FlatTorus, |_, _| Ok(0.0), 4).unwrap();
        assert_eq!(z.value, 0.0);
        let e = integrate(&FlatTorus, |_, _| Ok(f64::NAN), 4);
        assert!(matches!(e, Err(Error::NonFiniteDensity)));
    }

    #[test]
    fn report_serializes() {
        let r = EnergyReport { value: 1.5, error_estimate: 0.0, nodes: 3, convention: CONVENTION.into() };
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["nodes"], 3);
        assert_eq!(v["value"], 1.5);
    }
}
