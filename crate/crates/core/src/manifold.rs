//! Oriented atlases of the compact model manifolds, the [`Geometry`] trait
//! for metrics written against them, and manifold-level fields (conformal
//! factors, symmetric perturbations) that pull back through the ambient
//! embedding so that they are globally smooth.

use std::f64::consts::PI;

use crate::jet::Scalar;
use crate::linalg::{self, Mat4};
use crate::quadrature::gauss_legendre;

/// Axis-aligned coordinate box of a chart, with a characteristic length used
/// to scale finite-difference steps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Domain {
    pub lo: [f64; 4],
    pub hi: [f64; 4],
    pub scale: f64,
}

impl Domain {
    pub fn cube(half_width: f64, scale: f64) -> Self {
        Self { lo: [-half_width; 4], hi: [half_width; 4], scale }
    }

    /// True when the box of half-width `pad` around `x` lies inside the domain.
    pub fn contains(&self, x: &[f64; 4], pad: f64) -> bool {
        (0..4).all(|a| x[a] - pad >= self.lo[a] && x[a] + pad <= self.hi[a])
    }
}

/// A quadrature node in chart coordinates. `weight` is the Lebesgue weight in
/// the chart, so `Σ weight · f(x) · √det g(x)` approximates `∫ f dμ_g`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Node {
    pub patch: usize,
    pub x: [f64; 4],
    pub weight: f64,
}

/// The model manifolds, each with a fixed oriented atlas and an embedding in
/// Euclidean space.
///
/// Sphere charts are stereographic from the north pole (patch 0) or from
/// the south pole composed with a reflection of the last coordinate (patch 1),
/// so that transition maps preserve orientation and, on `S²`, are holomorphic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atlas {
    /// `S⁴ ⊂ ℝ⁵`, two patches.
    Sphere4,
    /// `S² × S² ⊂ ℝ³ × ℝ³`, patch `2·a + b` for factor patches `a`, `b`.
    SpherePair,
    /// `ℂP²` on the affine chart `[1 : z₁ : z₂]`, embedded as the rank-one
    /// projector `ZZ*/|Z|²` in ℝ⁹.
    ComplexProjective,
    /// `ℝ⁴/ℤ⁴` embedded in ℝ⁸ by `(cos 2πx, sin 2πx)` per axis.
    Torus,
}

/// Stereographic map of the unit `S^n` for the given patch; returns ambient
/// coordinates (`n + 1` of them).
fn stereo_embed<S: Scalar>(patch: usize, y: &[S]) -> Vec<S> {
    let n = y.len();
    let mut r2 = S::zero();
    for v in y {
        r2 += *v * *v;
    }
    let inv = (S::one() + r2).recip();
    let mut p: Vec<S> = y.iter().map(|v| (*v * inv).scale(2.0)).collect();
    if patch == 1 {
        p[n - 1] = -p[n - 1];
        p.push((S::one() - r2) * inv);
    } else {
        p.push((r2 - S::one()) * inv);
    }
    p
}

/// Jacobian `∂p^A/∂y^a` of [`stereo_embed`], row per ambient coordinate.
fn stereo_jacobian<S: Scalar>(patch: usize, y: &[S]) -> Vec<Vec<S>> {
    let n = y.len();
    let mut r2 = S::zero();
    for v in y {
        r2 += *v * *v;
    }
    let inv = (S::one() + r2).recip();
    let inv2 = inv * inv;
    let mut rows = Vec::with_capacity(n + 1);
    for i in 0..n {
        let sign = if patch == 1 && i == n - 1 { -1.0 } else { 1.0 };
        let row = (0..n)
            .map(|a| {
                let mut v = (y[i] * y[a] * inv2).scale(-4.0);
                if a == i {
                    v += inv.scale(2.0);
                }
                v.scale(sign)
            })
            .collect();
        rows.push(row);
    }
    let last_sign = if patch == 1 { -4.0 } else { 4.0 };
    rows.push((0..n).map(|a| (y[a] * inv2).scale(last_sign)).collect());
    rows
}

fn stereo_chart(patch: usize, p: &[f64]) -> Vec<f64> {
    let n = p.len() - 1;
    let pole = p[n];
    if patch == 1 {
        let mut y: Vec<f64> = p[..n].iter().map(|v| v / (1.0 + pole)).collect();
        y[n - 1] = -y[n - 1];
        y
    } else {
        p[..n].iter().map(|v| v / (1.0 - pole)).collect()
    }
}

/// √det of the unit-sphere metric `4/(1+|y|²)² δ` in dimension `n`.
fn stereo_density(y: &[f64]) -> f64 {
    let r2: f64 = y.iter().map(|v| v * v).sum();
    (2.0 / (1.0 + r2)).powi(y.len() as i32)
}

/// Gauss–Legendre in `cos θ` times the periodic trapezoid rule in `φ` on the
/// unit `S²`: (patch, chart point, chart weight).
fn sphere2_nodes(n: usize) -> Vec<(usize, [f64; 2], f64)> {
    let (zs, wz) = gauss_legendre(n, -1.0, 1.0);
    let mut out = Vec::with_capacity(n * n);
    for (z, w) in zs.iter().zip(&wz) {
        let rho = (1.0 - z * z).sqrt();
        for j in 0..n {
            let phi = 2.0 * PI * j as f64 / n as f64;
            let p = [rho * phi.cos(), rho * phi.sin(), *z];
            let patch = if *z < 0.0 { 0 } else { 1 };
            let y = stereo_chart(patch, &p);
            let weight = w * (2.0 * PI / n as f64) / stereo_density(&y);
            out.push((patch, [y[0], y[1]], weight));
        }
    }
    out
}

impl Atlas {
    pub fn patch_count(&self) -> usize {
        match self {
            Atlas::Sphere4 => 2,
            Atlas::SpherePair => 4,
            Atlas::ComplexProjective | Atlas::Torus => 1,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            Atlas::Sphere4 => 5,
            Atlas::SpherePair => 6,
            Atlas::ComplexProjective => 9,
            Atlas::Torus => 8,
        }
    }

    pub fn domain(&self, _patch: usize) -> Domain {
        match self {
            Atlas::Sphere4 | Atlas::SpherePair => Domain::cube(4.0, 1.0),
            Atlas::ComplexProjective => Domain::cube(1e4, 1.0),
            Atlas::Torus => Domain::cube(1e4, 1.0),
        }
    }

    /// Ambient coordinates of a chart point.
    pub fn embed<S: Scalar>(&self, patch: usize, x: &[S; 4]) -> Vec<S> {
        match self {
            Atlas::Sphere4 => stereo_embed(patch, x),
            Atlas::SpherePair => {
                let mut p = stereo_embed(patch / 2, &x[..2]);
                p.extend(stereo_embed(patch % 2, &x[2..]));
                p
            }
            Atlas::ComplexProjective => {
                let norm = S::one() + x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
                let inv = norm.recip();
                // Z = (1, z1, z2); P_ij = Z_i conj(Z_j) / |Z|²
                let re = [S::one(), x[0], x[2]];
                let im = [S::zero(), x[1], x[3]];
                let mut p = Vec::with_capacity(9);
                for i in 0..3 {
                    p.push((re[i] * re[i] + im[i] * im[i]) * inv);
                }
                for i in 0..3 {
                    for j in i + 1..3 {
                        p.push((re[i] * re[j] + im[i] * im[j]) * inv);
                        p.push((im[i] * re[j] - re[i] * im[j]) * inv);
                    }
                }
                p
            }
            Atlas::Torus => {
                let mut p = Vec::with_capacity(8);
                for v in x {
                    let angle = v.scale(2.0 * PI);
                    p.push(angle.cos());
                    p.push(angle.sin());
                }
                p
            }
        }
    }

    /// Jacobian of [`Atlas::embed`] (ambient rows × 4 chart columns), when
    /// available in closed form.
    pub fn embed_jacobian<S: Scalar>(&self, patch: usize, x: &[S; 4]) -> Option<Vec<[S; 4]>> {
        let widen = |rows: Vec<Vec<S>>, offset: usize| -> Vec<[S; 4]> {
            rows.into_iter()
                .map(|r| {
                    let mut full = [S::zero(); 4];
                    for (k, v) in r.into_iter().enumerate() {
                        full[offset + k] = v;
                    }
                    full
                })
                .collect()
        };
        match self {
            Atlas::Sphere4 => Some(widen(stereo_jacobian(patch, x), 0)),
            Atlas::SpherePair => {
                let mut rows = widen(stereo_jacobian(patch / 2, &x[..2]), 0);
                rows.extend(widen(stereo_jacobian(patch % 2, &x[2..]), 2));
                Some(rows)
            }
            Atlas::Torus => {
                let mut rows = Vec::with_capacity(8);
                for (a, v) in x.iter().enumerate() {
                    let angle = v.scale(2.0 * PI);
                    let mut c = [S::zero(); 4];
                    c[a] = (-angle.sin()).scale(2.0 * PI);
                    let mut s = [S::zero(); 4];
                    s[a] = angle.cos().scale(2.0 * PI);
                    rows.push(c);
                    rows.push(s);
                }
                Some(rows)
            }
            Atlas::ComplexProjective => None,
        }
    }

    /// Chart coordinates of an ambient point in a given patch, if the point
    /// is not that patch's pole.
    pub fn chart_coords(&self, patch: usize, p: &[f64]) -> Option<[f64; 4]> {
        match self {
            Atlas::Sphere4 => {
                let pole = if patch == 0 { 1.0 } else { -1.0 };
                if (p[4] - pole).abs() < 1e-12 {
                    return None;
                }
                let y = stereo_chart(patch, p);
                Some([y[0], y[1], y[2], y[3]])
            }
            Atlas::SpherePair => {
                let (a, b) = (patch / 2, patch % 2);
                let pa = if a == 0 { 1.0 } else { -1.0 };
                let pb = if b == 0 { 1.0 } else { -1.0 };
                if (p[2] - pa).abs() < 1e-12 || (p[5] - pb).abs() < 1e-12 {
                    return None;
                }
                let y1 = stereo_chart(a, &p[..3]);
                let y2 = stereo_chart(b, &p[3..]);
                Some([y1[0], y1[1], y2[0], y2[1]])
            }
            Atlas::ComplexProjective => {
                let p00 = p[0];
                if p00 < 1e-12 {
                    return None;
                }
                // P_0j = conj(z_j)/|Z|²
                Some([p[3] / p00, -p[4] / p00, p[5] / p00, -p[6] / p00])
            }
            Atlas::Torus => {
                let mut x = [0.0; 4];
                for a in 0..4 {
                    x[a] = p[2 * a + 1].atan2(p[2 * a]) / (2.0 * PI);
                }
                Some(x)
            }
        }
    }

    /// Patch whose pole is farthest from `p`, with the chart coordinates.
    pub fn locate(&self, p: &[f64]) -> (usize, [f64; 4]) {
        let patch = match self {
            Atlas::Sphere4 => usize::from(p[4] >= 0.0),
            Atlas::SpherePair => 2 * usize::from(p[2] >= 0.0) + usize::from(p[5] >= 0.0),
            Atlas::ComplexProjective | Atlas::Torus => 0,
        };
        let x = self.chart_coords(patch, p).expect("point away from the pole");
        (patch, x)
    }

    /// A point drawn uniformly (for the round metric on sphere factors) and
    /// returned in the chart that [`Atlas::locate`] assigns to it.
    pub fn random_point<R: rand::Rng>(&self, rng: &mut R) -> (usize, [f64; 4]) {
        match self {
            Atlas::Sphere4 => self.locate(&random_unit(5, rng)),
            Atlas::SpherePair => {
                let mut p = random_unit(3, rng);
                p.extend(random_unit(3, rng));
                self.locate(&p)
            }
            Atlas::ComplexProjective => {
                // the line through a uniform unit vector of C³, in the affine chart when it fits
                loop {
                    let v = random_unit(6, rng);
                    let den = v[0] * v[0] + v[1] * v[1];
                    if den < 1e-2 {
                        continue;
                    }
                    // z_j = w_j / w_0
                    let div = |re: f64, im: f64| ((re * v[0] + im * v[1]) / den, (im * v[0] - re * v[1]) / den);
                    let (a1, b1) = div(v[2], v[3]);
                    let (a2, b2) = div(v[4], v[5]);
                    return (0, [a1, b1, a2, b2]);
                }
            }
            Atlas::Torus => (0, std::array::from_fn(|_| rng.gen_range(0.0..1.0))),
        }
    }

    /// Deterministic tensor-product quadrature nodes; `n` nodes per angular axis.
    pub fn nodes(&self, n: usize) -> Vec<Node> {
        assert!(n >= 2, "resolution must be at least 2");
        match self {
            Atlas::SpherePair => {
                let s2 = sphere2_nodes(n);
                let mut out = Vec::with_capacity(s2.len() * s2.len());
                for (pa, ya, wa) in &s2 {
                    for (pb, yb, wb) in &s2 {
                        out.push(Node { patch: 2 * pa + pb, x: [ya[0], ya[1], yb[0], yb[1]], weight: wa * wb });
                    }
                }
                out
            }
            Atlas::Sphere4 => {
                let (ts, wt) = gauss_legendre(n, -1.0, 1.0);
                let (ss, ws) = gauss_legendre(n, 0.0, 1.0);
                let dxi = 2.0 * PI / n as f64;
                let mut out = Vec::with_capacity(n.pow(4));
                for (t, w_t) in ts.iter().zip(&wt) {
                    let rho = (1.0 - t * t).sqrt();
                    for (s, w_s) in ss.iter().zip(&ws) {
                        for i in 0..n {
                            let xi1 = dxi * i as f64;
                            for j in 0..n {
                                let xi2 = dxi * j as f64;
                                let q = [
                                    (1.0 - s).sqrt() * xi1.cos(),
                                    (1.0 - s).sqrt() * xi1.sin(),
                                    s.sqrt() * xi2.cos(),
                                    s.sqrt() * xi2.sin(),
                                ];
                                let p = [rho * q[0], rho * q[1], rho * q[2], rho * q[3], *t];
                                let (patch, x) = self.locate(&p);
                                let angular = w_t * (1.0 - t * t) * w_s * 0.5 * dxi * dxi;
                                out.push(Node { patch, x, weight: angular / stereo_density(&x) });
                            }
                        }
                    }
                }
                out
            }
            Atlas::ComplexProjective => {
                let (ts, wt) = gauss_legendre(n, 0.0, 1.0);
                let (ss, ws) = gauss_legendre(n, 0.0, 1.0);
                let dxi = 2.0 * PI / n as f64;
                let mut out = Vec::with_capacity(n.pow(4));
                for (t, w_t) in ts.iter().zip(&wt) {
                    let rho = (t / (1.0 - t)).sqrt();
                    let radial = w_t * t / (2.0 * (1.0 - t).powi(3));
                    for (s, w_s) in ss.iter().zip(&ws) {
                        for i in 0..n {
                            let xi1 = dxi * i as f64;
                            for j in 0..n {
                                let xi2 = dxi * j as f64;
                                let a = rho * (1.0 - s).sqrt();
                                let b = rho * s.sqrt();
                                let x = [a * xi1.cos(), a * xi1.sin(), b * xi2.cos(), b * xi2.sin()];
                                out.push(Node { patch: 0, x, weight: radial * w_s * 0.5 * dxi * dxi });
                            }
                        }
                    }
                }
                out
            }
            Atlas::Torus => {
                let h = 1.0 / n as f64;
                let mut out = Vec::with_capacity(n.pow(4));
                for i in 0..n.pow(4) {
                    let x = [
                        (i % n) as f64 * h,
                        ((i / n) % n) as f64 * h,
                        ((i / n / n) % n) as f64 * h,
                        (i / n / n / n) as f64 * h,
                    ];
                    out.push(Node { patch: 0, x, weight: h.powi(4) });
                }
                out
            }
        }
    }
}

/// The standard complex structure `J∂₀ = ∂₁, J∂₂ = ∂₃` as the matrix
/// `J[c][a] = J^c_a`.
pub fn standard_complex_structure() -> Mat4<f64> {
    let mut j = [[0.0; 4]; 4];
    j[1][0] = 1.0;
    j[0][1] = -1.0;
    j[3][2] = 1.0;
    j[2][3] = -1.0;
    j
}

fn random_unit<R: rand::Rng>(dim: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r2: f64 = v.iter().map(|c| c * c).sum();
        if r2 > 1e-4 && r2 <= 1.0 {
            let r = r2.sqrt();
            return v.into_iter().map(|c| c / r).collect();
        }
    }
}

/// A Riemannian metric on one of the model manifolds, written in the charts
/// of its [`Atlas`].
pub trait Geometry: Send + Sync {
    fn atlas(&self) -> Atlas;

    /// Metric components `g_ab` at chart point `x` of `patch`.
    fn metric<S: Scalar>(&self, patch: usize, x: &[S; 4]) -> Mat4<S>;

    /// A parallel, metric-compatible complex structure, constant in every
    /// chart, when the metric is Kähler.
    fn complex_structure(&self) -> Option<Mat4<f64>> {
        None
    }

    /// True when the metric is a conformal rescaling of a Kähler metric for
    /// the returned complex structure, but not itself Kähler.
    fn is_conformally_kahler_only(&self) -> bool {
        false
    }
}

impl<G: Geometry> Geometry for &G {
    fn atlas(&self) -> Atlas {
        (**self).atlas()
    }
    fn metric<S: Scalar>(&self, patch: usize, x: &[S; 4]) -> Mat4<S> {
        (**self).metric(patch, x)
    }
    fn complex_structure(&self) -> Option<Mat4<f64>> {
        (**self).complex_structure()
    }
    fn is_conformally_kahler_only(&self) -> bool {
        (**self).is_conformally_kahler_only()
    }
}

/// A smooth function on a model manifold.
pub trait ScalarField: Send + Sync {
    fn value<S: Scalar>(&self, atlas: Atlas, patch: usize, x: &[S; 4]) -> S;
}

/// A smooth symmetric 2-tensor field; may depend on the base metric.
pub trait SymmetricField: Send + Sync {
    fn value<S: Scalar, G: Geometry>(&self, base: &G, patch: usize, x: &[S; 4]) -> Mat4<S>;
}

/// `1 + amplitude · β(|p − center|² / width²)` with the compactly supported
/// bump `β(τ) = exp(1 − 1/(1 − τ))` for `τ < 1`, zero otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct Bump {
    pub amplitude: f64,
    pub center: Vec<f64>,
    pub width: f64,
}

impl ScalarField for Bump {
    fn value<S: Scalar>(&self, atlas: Atlas, patch: usize, x: &[S; 4]) -> S {
        let p = atlas.embed(patch, x);
        let mut tau = S::zero();
        for (pa, ca) in p.iter().zip(&self.center) {
            let d = *pa - S::cst(*ca);
            tau += d * d;
        }
        let tau = tau.scale(1.0 / (self.width * self.width));
        if tau.value() >= 1.0 {
            return S::one();
        }
        let beta = (S::one() - (S::one() - tau).recip()).exp();
        S::one() + beta.scale(self.amplitude)
    }
}

/// A constant positive factor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantFactor(pub f64);

impl ScalarField for ConstantFactor {
    fn value<S: Scalar>(&self, _atlas: Atlas, _patch: usize, _x: &[S; 4]) -> S {
        S::cst(self.0)
    }
}

/// The metric `u · g`.
#[derive(Clone, Debug, PartialEq)]
pub struct Conformal<G, U> {
    pub base: G,
    pub factor: U,
}

impl<G: Geometry, U: ScalarField> Geometry for Conformal<G, U> {
    fn atlas(&self) -> Atlas {
        self.base.atlas()
    }
    fn metric<S: Scalar>(&self, patch: usize, x: &[S; 4]) -> Mat4<S> {
        let u = self.factor.value(self.base.atlas(), patch, x);
        linalg::scale(&self.base.metric(patch, x), u)
    }
    fn complex_structure(&self) -> Option<Mat4<f64>> {
        self.base.complex_structure()
    }
    fn is_conformally_kahler_only(&self) -> bool {
        self.base.complex_structure().is_some()
    }
}

/// The metric `g + t·h`.
#[derive(Clone, Debug, PartialEq)]
pub struct Perturbed<G, H> {
    pub base: G,
    pub direction: H,
    pub t: f64,
}

impl<G: Geometry, H: SymmetricField> Geometry for Perturbed<G, H> {
    fn atlas(&self) -> Atlas {
        self.base.atlas()
    }
    fn metric<S: Scalar>(&self, patch: usize, x: &[S; 4]) -> Mat4<S> {
        let g = self.base.metric(patch, x);
        let h = self.direction.value(&self.base, patch, x);
        linalg::add(&g, &linalg::scale(&h, S::cst(self.t)))
    }
}

/// `h = g`, the infinitesimal conformal direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricDirection;

impl SymmetricField for MetricDirection {
    fn value<S: Scalar, G: Geometry>(&self, base: &G, patch: usize, x: &[S; 4]) -> Mat4<S> {
        base.metric(patch, x)
    }
}

/// Pullback of an ambient symmetric field `H(p) = A + Σ_C p_C L_C` through the
/// embedding; globally smooth on the manifold.
#[derive(Clone, Debug, PartialEq)]
pub struct AmbientPerturbation {
    pub dim: usize,
    /// Row-major symmetric `dim × dim` constant part.
    pub constant: Vec<f64>,
    /// `linear[C]` is a row-major symmetric `dim × dim` matrix.
    pub linear: Vec<Vec<f64>>,
}

impl AmbientPerturbation {
    /// Random symmetric coefficients uniform in `[-amplitude, amplitude]`.
    pub fn random<R: rand::Rng>(dim: usize, amplitude: f64, rng: &mut R) -> Self {
        let sym = |rng: &mut R| {
            let mut m = vec![0.0; dim * dim];
            for i in 0..dim {
                for j in i..dim {
                    let v = rng.gen_range(-amplitude..=amplitude);
                    m[i * dim + j] = v;
                    m[j * dim + i] = v;
                }
            }
            m
        };
        let constant = sym(rng);
        let linear = (0..dim).map(|_| sym(rng)).collect();
        Self { dim, constant, linear }
    }
}

impl SymmetricField for AmbientPerturbation {
    fn value<S: Scalar, G: Geometry>(&self, base: &G, patch: usize, x: &[S; 4]) -> Mat4<S> {
        let atlas = base.atlas();
        let p = atlas.embed(patch, x);
        let jac = atlas
            .embed_jacobian(patch, x)
            .expect("ambient perturbations need a closed-form embedding Jacobian");
        let d = self.dim;
        assert_eq!(d, p.len(), "perturbation dimension does not match the embedding");
        let mut ambient = vec![S::zero(); d * d];
        for i in 0..d {
            for j in i..d {
                let mut v = S::cst(self.constant[i * d + j]);
                for (c, pc) in p.iter().enumerate() {
                    v += pc.scale(self.linear[c][i * d + j]);
                }
                ambient[i * d + j] = v;
                ambient[j * d + i] = v;
            }
        }
        let mut h = linalg::zeros::<S>();
        for a in 0..4 {
            for b in a..4 {
                let mut s = S::zero();
                for i in 0..d {
                    let ja = jac[i][a];
                    let mut inner = S::zero();
                    for j in 0..d {
                        inner += ambient[i * d + j] * jac[j][b];
                    }
                    s += ja * inner;
                }
                h[a][b] = s;
                h[b][a] = s;
            }
        }
        h
    }
}
