use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::jet::{coeff_count, coordinates, multi_indices, Jet, Jet1, Jet5};
use crate::linalg::{self, Mat4};
use crate::manifold::{Domain, Geometry};
use crate::tensor::curvature::{CurvatureJets, CurvatureStack};

/// Default finite-difference step, relative to the chart's length scale.
pub const DEFAULT_FD_STEP: f64 = 1e-2;

/// How metric derivatives are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum DiffStrategy {
    /// Forward-mode Taylor jets; exact up to rounding.
    #[default]
    Jet,
    /// Sixth-order central differences with one Richardson level.
    FiniteDifference { step: f64 },
}

impl DiffStrategy {
    pub fn finite_difference() -> Self {
        DiffStrategy::FiniteDifference { step: DEFAULT_FD_STEP }
    }
}

/// One chart of a geometry's atlas, with a differentiation strategy.
#[derive(Clone, Copy, Debug)]
pub struct MetricChart<'g, G> {
    pub geometry: &'g G,
    pub patch: usize,
    pub domain: Domain,
    pub strategy: DiffStrategy,
}

impl<'g, G: Geometry> MetricChart<'g, G> {
    pub fn new(geometry: &'g G, patch: usize) -> Self {
        let domain = geometry.atlas().domain(patch);
        Self { geometry, patch, domain, strategy: DiffStrategy::Jet }
    }

    pub fn with_strategy(mut self, strategy: DiffStrategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn metric_at(&self, x: &[f64; 4]) -> Mat4<f64> {
        self.geometry.metric(self.patch, x)
    }

    fn padding(&self, order: usize) -> f64 {
        match self.strategy {
            DiffStrategy::Jet => 0.0,
            DiffStrategy::FiniteDifference { step } => step * self.domain.scale * stencil_half_width(order) as f64,
        }
    }

    /// Metric components and their derivatives up to `order`, as Taylor jets.
    pub fn metric_jets<const K: usize>(&self, x: &[f64; 4], order: usize) -> Result<Mat4<Jet<K>>> {
        if order > Jet::<K>::CAPACITY_ORDER {
            return Err(Error::UnsupportedOrder(order));
        }
        if !self.domain.contains(x, self.padding(order)) {
            return Err(Error::OutOfDomain(*x));
        }
        let g = match self.strategy {
            DiffStrategy::Jet => self.geometry.metric(self.patch, &coordinates::<K>(x, order)),
            DiffStrategy::FiniteDifference { step } => {
                finite_difference_jets(|p| self.metric_at(p), x, order, step * self.domain.scale)
            }
        };
        if g.iter().flatten().any(|v| v.coefficients().iter().any(|c| !c.is_finite())) {
            return Err(Error::NonFinite);
        }
        Ok(g)
    }

    /// Positivity check: smallest eigenvalue above `1e-12 · tr g`.
    pub fn check_positive(&self, x: &[f64; 4]) -> Result<()> {
        let g = self.metric_at(x);
        let tr: f64 = (0..4).map(|a| g[a][a]).sum();
        if linalg::min_eigenvalue(&g) > 1e-12 * tr.abs() && tr.is_finite() {
            Ok(())
        } else {
            Err(Error::NotPositiveDefinite(*x))
        }
    }

    /// Curvature jets from metric jets of the given order (2 through 5).
    pub fn curvature_jets<const K: usize>(&self, x: &[f64; 4], order: usize) -> Result<CurvatureJets<K>> {
        self.check_positive(x)?;
        Ok(CurvatureJets::from_metric(self.metric_jets::<K>(x, order)?))
    }

    /// Full curvature stack (through the Bach tensor) at `x`.
    pub fn curvature_stack(&self, x: &[f64; 4]) -> Result<CurvatureStack> {
        self.curvature_jets::<70>(x, 4)?.stack()
    }

    /// `∇^i B_ij`, from fifth-order metric jets.
    pub fn bach_divergence(&self, x: &[f64; 4]) -> Result<[f64; 4]> {
        let cj = self.curvature_jets::<126>(x, 5)?;
        let b = cj.bach().ok_or(Error::UnsupportedOrder(5))?;
        let ginv: Mat4<Jet1> = linalg::map(&cj.inverse, |v: &Jet5| v.resize());
        let gam: [[[Jet1; 4]; 4]; 4] =
            std::array::from_fn(|k| std::array::from_fn(|i| std::array::from_fn(|j| cj.christoffel[k][i][j].resize())));
        let mut out = [0.0; 4];
        for (j, slot) in out.iter_mut().enumerate() {
            let mut s = 0.0;
            for i in 0..4 {
                for k in 0..4 {
                    let mut cov = b[i][j].derivative(k).value();
                    for l in 0..4 {
                        cov -= gam[l][k][i].value() * b[l][j].value() + gam[l][k][j].value() * b[i][l].value();
                    }
                    s += ginv[i][k].value() * cov;
                }
            }
            *slot = s;
        }
        Ok(out)
    }
}

fn stencil_half_width(order: usize) -> usize {
    if order == 0 {
        0
    } else {
        order.div_ceil(2) + 2
    }
}

/// Fornberg's finite-difference weights for the `m`-th derivative at 0 on
/// the integer nodes `-p..=p`.
pub fn central_weights(m: usize, p: usize) -> Vec<f64> {
    let nodes: Vec<f64> = (-(p as i64)..=p as i64).map(|v| v as f64).collect();
    let n = nodes.len();
    // c[j][k]: weight of node j for derivative k
    let mut c = vec![vec![0.0; m + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0];
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i];
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

/// Taylor jets of a matrix-valued function from tensor-product central
/// stencils at steps `h` and `h/2`, combined by one Richardson step.
fn finite_difference_jets<const K: usize>(
    f: impl Fn(&[f64; 4]) -> Mat4<f64>,
    x: &[f64; 4],
    order: usize,
    h: f64,
) -> Mat4<Jet<K>> {
    let half = h / 2.0;
    let mut cache: HashMap<[i32; 4], Mat4<f64>> = HashMap::new();
    let mut eval = |m: [i32; 4]| -> Mat4<f64> {
        *cache.entry(m).or_insert_with(|| {
            let p: [f64; 4] = std::array::from_fn(|a| x[a] + half * m[a] as f64);
            f(&p)
        })
    };
    let weights: Vec<Vec<f64>> = (0..=order).map(|m| central_weights(m, stencil_half_width(m))).collect();

    let mut derivative = |alpha: &[u8; 4], spacing: i32, step: f64| -> Mat4<f64> {
        let mut acc = [[0.0; 4]; 4];
        let axes: Vec<(usize, i32, &Vec<f64>)> = (0..4)
            .map(|a| {
                let m = alpha[a] as usize;
                (a, stencil_half_width(m) as i32, &weights[m])
            })
            .collect();
        let mut idx = [0i32; 4];
        for (a, p, _) in &axes {
            idx[*a] = -p;
        }
        loop {
            let mut w = 1.0;
            for (a, p, ws) in &axes {
                w *= ws[(idx[*a] + p) as usize];
            }
            if w != 0.0 {
                let m: [i32; 4] = std::array::from_fn(|a| idx[a] * spacing);
                let v = eval(m);
                for i in 0..4 {
                    for j in 0..4 {
                        acc[i][j] += w * v[i][j];
                    }
                }
            }
            // odometer
            let mut a = 0;
            loop {
                if a == 4 {
                    let deg: i32 = alpha.iter().map(|&e| e as i32).sum();
                    let scale = step.powi(deg);
                    return std::array::from_fn(|i| std::array::from_fn(|j| acc[i][j] / scale));
                }
                let p = axes[a].1;
                if idx[a] < p {
                    idx[a] += 1;
                    break;
                }
                idx[a] = -p;
                a += 1;
            }
        }
    };

    let alphas = multi_indices(order);
    let mut coeffs = vec![[[0.0; 4]; 4]; coeff_count(order)];
    for (n, alpha) in alphas.iter().enumerate() {
        let coarse = derivative(alpha, 2, h);
        let fine = derivative(alpha, 1, half);
        let fact: f64 = alpha.iter().map(|&e| (1..=e as usize).product::<usize>() as f64).product();
        for i in 0..4 {
            for j in 0..4 {
                let v = if alpha.iter().all(|&e| e == 0) {
                    fine[i][j]
                } else {
                    (64.0 * fine[i][j] - coarse[i][j]) / 63.0
                };
                coeffs[n][i][j] = v / fact;
            }
        }
    }
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let c: Vec<f64> = coeffs.iter().map(|m| m[i][j]).collect();
            Jet::from_coefficients(order, &c)
        })
    })
}
