//! Einstein–Maxwell and Bach–Merkulov residuals, Kähler solutions, conformal
//! rescaling and the first-variation test for the Weyl energy.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::{Jet, Jet1, Scalar};
use crate::linalg::{self, Mat4};
use crate::manifold::{Conformal, Geometry, Node, Perturbed, ScalarField, SymmetricField};
use crate::quadrature::{self, EnergyReport, QuadratureGrid, WeylPart};
use crate::tensor::forms::{endo_form, exterior_derivative, hodge_star, selfdual_split, Orientation};
use crate::tensor::{f_compose_f, trace_free_part, CurvatureJets, MetricChart, TwoForm};

/// A point of a chart at which residuals are sampled.
pub type SamplePoint = (usize, [f64; 4]);

/// Coefficient of `ρ̊` in a Kähler-type field.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Coefficient {
    Constant(f64),
    /// `c · s` with `s` the scalar curvature of the source metric.
    ScalarMultiple(f64),
}

impl Coefficient {
    fn is_zero(&self) -> bool {
        matches!(self, Coefficient::Constant(c) | Coefficient::ScalarMultiple(c) if *c == 0.0)
    }
}

/// How the 2-form `F` is produced at a chart point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum FieldSource {
    Zero,
    /// Constant components in every chart.
    Constant(TwoForm),
    /// `x_axis · form` in chart coordinates.
    Linear { axis: usize, form: TwoForm },
    /// `a·ω + b·ρ̊ + c·ψ` built from the source metric and its complex
    /// structure, with `ρ̊ = r̊(J·,·)` and `ψ = B(J·,·)`.
    Kahler { omega: f64, rho0: Coefficient, psi: f64 },
}

/// A metric together with a 2-form field.
///
/// The field is computed from `source`, which stays fixed under
/// [`conformal_rescale`]; the equations are evaluated for `geometry`.
#[derive(Clone, Debug)]
pub struct FieldConfiguration<G, B = G> {
    pub geometry: G,
    pub source: B,
    pub field: FieldSource,
}

impl<G: Geometry + Clone> FieldConfiguration<G, G> {
    pub fn new(geometry: G, field: FieldSource) -> Self {
        Self { source: geometry.clone(), geometry, field }
    }
}

impl<G: Geometry, B: Geometry> FieldConfiguration<G, B> {
    pub fn with_field(&self, field: FieldSource) -> Self
    where
        G: Clone,
        B: Clone,
    {
        Self { geometry: self.geometry.clone(), source: self.source.clone(), field }
    }

    /// The complex structure of the source metric, when it is Kähler.
    pub fn complex_structure(&self) -> Option<Mat4<f64>> {
        if self.source.is_conformally_kahler_only() {
            None
        } else {
            self.source.complex_structure()
        }
    }

    /// Jets of `F_ab` of the requested order (0 or 1).
    pub fn field_jets(&self, patch: usize, x: &[f64; 4], order: usize) -> Result<Mat4<Jet1>> {
        if order > 1 {
            return Err(Error::UnsupportedOrder(order));
        }
        let constant = |f: &TwoForm| linalg::map(&f.to_matrix(), |v: &f64| Jet1::constant(*v).truncate(order));
        match &self.field {
            FieldSource::Zero => Ok(constant(&TwoForm::default())),
            FieldSource::Constant(f) => Ok(constant(f)),
            FieldSource::Linear { axis, form } => {
                if *axis > 3 {
                    return Err(Error::InvalidParameter(format!("axis {axis} out of range")));
                }
                let xa = Jet1::variable(x[*axis], *axis, order);
                Ok(linalg::map(&form.to_matrix(), |v: &f64| xa.scale(*v)))
            }
            FieldSource::Kahler { omega, rho0, psi } => {
                let j = self.complex_structure().ok_or(Error::MissingKahlerData)?;
                let extra = if *psi != 0.0 {
                    4
                } else if !rho0.is_zero() {
                    2
                } else {
                    0
                };
                let chart = MetricChart::new(&self.source, patch);
                chart.check_positive(x)?;
                let g: Mat4<Jet<126>> = chart.metric_jets(x, order + extra)?;
                let mut f = linalg::scale(&endo_form(&g, &j), Jet::constant(*omega));
                if extra > 0 {
                    let cj = CurvatureJets::from_metric(g);
                    if !rho0.is_zero() {
                        let r0 = trace_free_part(&cj.ricci, &cj.metric, &cj.inverse);
                        let coeff = match rho0 {
                            Coefficient::Constant(c) => Jet::constant(*c),
                            Coefficient::ScalarMultiple(c) => cj.scalar.scale(*c),
                        };
                        f = linalg::add(&f, &linalg::scale(&endo_form(&r0, &j), coeff));
                    }
                    if *psi != 0.0 {
                        let b = cj.bach().ok_or(Error::UnsupportedOrder(order + extra))?;
                        let b: Mat4<Jet<126>> = linalg::map(&b, |v: &Jet1| v.resize());
                        f = linalg::add(&f, &linalg::scale(&endo_form(&b, &j), Jet::constant(*psi)));
                    }
                }
                Ok(linalg::map(&f, |v: &Jet<126>| v.truncate(order).resize()))
            }
        }
    }

    /// `F` at a chart point.
    pub fn field_at(&self, patch: usize, x: &[f64; 4]) -> Result<TwoForm> {
        Ok(TwoForm::from_matrix(&linalg::values(&self.field_jets(patch, x, 0)?)))
    }

    /// Checks antisymmetry of `F` and, for Kähler fields, `J² = −id` and
    /// `g(J·,J·) = g` at the given points.
    pub fn validate(&self, points: &[SamplePoint]) -> Result<()> {
        for (patch, x) in points {
            let f = linalg::values(&self.field_jets(*patch, x, 0)?);
            let scale = linalg::max_abs(&f).max(1.0);
            if (0..4).any(|a| (0..4).any(|b| (f[a][b] + f[b][a]).abs() > 1e-12 * scale)) {
                return Err(Error::Domain("field is not antisymmetric".into()));
            }
            if let Some(j) = self.complex_structure() {
                let g = self.source.metric(*patch, x);
                crate::tensor::two_form_from_endo(&g, &j, &g)?;
            }
        }
        Ok(())
    }
}

/// Max and RMS of a pointwise residual.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub max: f64,
    pub rms: f64,
    pub points: usize,
    pub normalized: bool,
}

impl ResidualReport {
    fn from_values(values: &[f64], normalized: bool) -> Self {
        let max = values.iter().fold(0.0f64, |m, v| m.max(*v));
        let rms = if values.is_empty() {
            0.0
        } else {
            (values.iter().map(|v| v * v).sum::<f64>() / values.len() as f64).sqrt()
        };
        Self { max, rms, points: values.len(), normalized }
    }
}

/// Maximal metric norms of `dF` and `d*F` over the sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarmonicReport {
    pub closed: f64,
    pub coclosed: f64,
}

/// Residual of one of the field equations, raw and scale-normalized, with
/// the harmonicity of `F`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquationReport {
    pub normalized: ResidualReport,
    pub raw: ResidualReport,
    pub harmonic: HarmonicReport,
}

impl EquationReport {
    /// Largest of the normalized equation residual and the harmonicity residuals.
    pub fn worst(&self) -> f64 {
        self.normalized.max.max(self.harmonic.closed).max(self.harmonic.coclosed)
    }
}

fn over_points<T: Send>(points: &[SamplePoint], f: impl Fn(usize, &[f64; 4]) -> Result<T> + Sync) -> Result<Vec<T>> {
    points.par_iter().map(|(p, x)| f(*p, x)).collect()
}

fn equation_report(
    pairs: Vec<(f64, f64)>,
    harmonic: HarmonicReport,
) -> EquationReport {
    let raw: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let norm: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    EquationReport {
        normalized: ResidualReport::from_values(&norm, true),
        raw: ResidualReport::from_values(&raw, false),
        harmonic,
    }
}

/// `[r + F∘F]₀` over the sample, normalized by `‖r‖` at each point.
pub fn em_residual<G: Geometry, B: Geometry>(
    cfg: &FieldConfiguration<G, B>,
    points: &[SamplePoint],
) -> Result<EquationReport> {
    let pairs = over_points(points, |patch, x| {
        let cj = MetricChart::new(&cfg.geometry, patch).curvature_jets::<15>(x, 2)?;
        let (g, ginv, ric) = (cj.metric_values(), cj.inverse_values(), cj.ricci_values());
        let f = linalg::values(&cfg.field_jets(patch, x, 0)?);
        let e = trace_free_part(&linalg::add(&ric, &f_compose_f(&f, &ginv)), &g, &ginv);
        let raw = linalg::norm(&e, &ginv);
        let scale = linalg::norm(&ric, &ginv);
        Ok((raw, if scale > 0.0 { raw / scale } else { raw }))
    })?;
    Ok(equation_report(pairs, harmonic_residual(cfg, points)?))
}

/// `B + [F∘F]₀` over the sample, normalized by `‖B‖` where it is
/// significant and by `|Rm|²` otherwise.
pub fn bm_residual<G: Geometry, B: Geometry>(
    cfg: &FieldConfiguration<G, B>,
    points: &[SamplePoint],
) -> Result<EquationReport> {
    let pairs = over_points(points, |patch, x| {
        let st = MetricChart::new(&cfg.geometry, patch).curvature_stack(x)?;
        let f = linalg::values(&cfg.field_jets(patch, x, 0)?);
        let e = linalg::add(&st.bach, &trace_free_part(&f_compose_f(&f, &st.inverse), &st.metric, &st.inverse));
        let raw = linalg::norm(&e, &st.inverse);
        let rm = st.riemann_norm_sq();
        let b = st.bach_norm();
        let scale = if b > 1e-6 * rm { b } else { rm };
        Ok((raw, if scale > 0.0 { raw / scale } else { raw }))
    })?;
    Ok(equation_report(pairs, harmonic_residual(cfg, points)?))
}

/// Metric norm `|α|² = (1/6) α_abc α^abc` of a 3-form given by its
/// components on `012, 013, 023, 123`.
fn three_form_norm(alpha: &[f64; 4], ginv: &Mat4<f64>) -> f64 {
    const TRIPLES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let mut full = [[[0.0; 4]; 4]; 4];
    for (k, t) in TRIPLES.iter().enumerate() {
        for perm in [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]] {
            let sign = if perm == [0, 1, 2] || perm == [1, 2, 0] || perm == [2, 0, 1] { 1.0 } else { -1.0 };
            full[t[perm[0]]][t[perm[1]]][t[perm[2]]] = sign * alpha[k];
        }
    }
    let mut s = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                if full[a][b][c] == 0.0 {
                    continue;
                }
                let mut up = 0.0;
                for d in 0..4 {
                    for e in 0..4 {
                        for f in 0..4 {
                            up += ginv[a][d] * ginv[b][e] * ginv[c][f] * full[d][e][f];
                        }
                    }
                }
                s += full[a][b][c] * up;
            }
        }
    }
    (s / 6.0).max(0.0).sqrt()
}

/// Largest metric norms of `dF` and `d*F` over the sample.
pub fn harmonic_residual<G: Geometry, B: Geometry>(
    cfg: &FieldConfiguration<G, B>,
    points: &[SamplePoint],
) -> Result<HarmonicReport> {
    let vals = over_points(points, |patch, x| {
        let f = cfg.field_jets(patch, x, 1)?;
        let chart = MetricChart::new(&cfg.geometry, patch);
        chart.check_positive(x)?;
        let g: Mat4<Jet1> = chart.metric_jets(x, 1)?;
        let ginv = linalg::inverse(&g);
        let star = hodge_star(&f, &g, &ginv, Orientation::Positive);
        let gv = linalg::values(&ginv);
        let d = exterior_derivative(&f).map(|v| v.value());
        let ds = exterior_derivative(&star).map(|v| v.value());
        Ok((three_form_norm(&d, &gv), three_form_norm(&ds, &gv)))
    })?;
    Ok(HarmonicReport {
        closed: vals.iter().fold(0.0, |m, v| m.max(v.0)),
        coclosed: vals.iter().fold(0.0, |m, v| m.max(v.1)),
    })
}

/// Relative spread (standard deviation over mean) of the scalar curvature.
pub fn scalar_spread<G: Geometry>(geometry: &G, points: &[SamplePoint]) -> Result<f64> {
    let s = over_points(points, |patch, x| {
        Ok(MetricChart::new(geometry, patch).curvature_jets::<15>(x, 2)?.scalar.value())
    })?;
    let n = s.len().max(1) as f64;
    let mean = s.iter().sum::<f64>() / n;
    let var = s.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    Ok(if mean != 0.0 { var.sqrt() / mean.abs() } else { var.sqrt() })
}

/// `F = ω + ½ρ̊` for a constant-scalar-curvature Kähler source.
pub fn maxwell_field_csck<G: Geometry + Clone, B: Geometry + Clone>(
    cfg: &FieldConfiguration<G, B>,
    points: &[SamplePoint],
) -> Result<FieldConfiguration<G, B>> {
    if cfg.complex_structure().is_none() {
        return Err(Error::MissingKahlerData);
    }
    let spread = scalar_spread(&cfg.source, points)?;
    if spread > 1e-8 {
        return Err(Error::NonConstantScalar(spread));
    }
    Ok(cfg.with_field(FieldSource::Kahler { omega: 1.0, rho0: Coefficient::Constant(0.5), psi: 0.0 }))
}

/// `F = ω + ½ψ` with `ψ = B(J·,·)`, for an extremal Kähler source.
pub fn maxwell_field_extremal<G: Geometry + Clone, B: Geometry + Clone>(
    cfg: &FieldConfiguration<G, B>,
) -> Result<FieldConfiguration<G, B>> {
    if cfg.complex_structure().is_none() {
        return Err(Error::MissingKahlerData);
    }
    Ok(cfg.with_field(FieldSource::Kahler { omega: 1.0, rho0: Coefficient::Constant(0.0), psi: 0.5 }))
}

/// The pair `(u·g, F)` with the same field.
pub fn conformal_rescale<G: Geometry + Clone, B: Geometry + Clone, U: ScalarField + Clone>(
    cfg: &FieldConfiguration<G, B>,
    u: U,
    check_resolution: usize,
) -> Result<FieldConfiguration<Conformal<G, U>, B>> {
    let atlas = cfg.geometry.atlas();
    for node in QuadratureGrid::new(atlas, check_resolution).nodes {
        let v: f64 = u.value(atlas, node.patch, &node.x);
        if v.is_nan() || v <= 0.0 {
            return Err(Error::InvalidParameter(format!("conformal factor {v} is not positive")));
        }
    }
    Ok(FieldConfiguration {
        geometry: Conformal { base: cfg.geometry.clone(), factor: u },
        source: cfg.source.clone(),
        field: cfg.field,
    })
}

/// `2 F⁺∘F⁻`, the trace-free part of `F∘F` in dimension four.
pub fn mixed_composition(f: &TwoForm, g: &Mat4<f64>) -> Mat4<f64> {
    let ginv = linalg::inverse(g);
    let (p, m) = selfdual_split(f, g, Orientation::Positive);
    linalg::scale(&linalg::matmul(&linalg::matmul(&p.to_matrix(), &ginv), &m.to_matrix()), 2.0)
}

/// Outcome of the first-variation test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariationReport {
    /// `(𝒲(g + th) − 𝒲(g − th)) / 2t`.
    pub derivative: f64,
    /// `∫ ⟨h, B⟩ dμ`.
    pub pairing: f64,
    pub discrepancy: f64,
    /// `∫ |h| |B| dμ`.
    pub scale: f64,
}

/// Compares the central difference of the Weyl energy along `h` with
/// `∫⟨h, B⟩ dμ`, all integrals at the given resolution.
pub fn weyl_first_variation_check<G, H>(geometry: &G, h: &H, t: f64, resolution: usize) -> Result<VariationReport>
where
    G: Geometry + Clone,
    H: SymmetricField + Clone,
{
    let grid = QuadratureGrid::new(geometry.atlas(), resolution);
    for sign in [1.0, -1.0] {
        let p = Perturbed { base: geometry.clone(), direction: h.clone(), t: sign * t };
        for node in &grid.nodes {
            MetricChart::new(&p, node.patch).check_positive(&node.x)?;
        }
    }
    let energy = |s: f64| -> Result<f64> {
        let p = Perturbed { base: geometry.clone(), direction: h.clone(), t: s };
        Ok(quadrature::weyl_energy_numeric(&p, WeylPart::Full, resolution)?.value)
    };
    let derivative = (energy(t)? - energy(-t)?) / (2.0 * t);
    let (pairing, scale) = pairing_and_scale(geometry, h, &grid.nodes)?;
    Ok(VariationReport { derivative, pairing, discrepancy: (derivative - pairing).abs(), scale })
}

fn pairing_and_scale<G: Geometry, H: SymmetricField>(geometry: &G, h: &H, nodes: &[Node]) -> Result<(f64, f64)> {
    let terms: Vec<Result<(f64, f64)>> = nodes
        .par_iter()
        .map(|node| {
            let st = MetricChart::new(geometry, node.patch).curvature_stack(&node.x)?;
            let hv = h.value::<f64, G>(geometry, node.patch, &node.x);
            let w = node.weight * linalg::determinant(&st.metric).sqrt();
            Ok((
                w * linalg::inner(&hv, &st.bach, &st.inverse),
                w * linalg::norm(&hv, &st.inverse) * st.bach_norm(),
            ))
        })
        .collect();
    let (mut a, mut b) = (0.0, 0.0);
    for t in terms {
        let (x, y) = t?;
        a += x;
        b += y;
    }
    Ok((a, b))
}

/// `∫ ⟨h, B⟩ dμ` as an energy report.
pub fn bach_pairing<G: Geometry, H: SymmetricField>(geometry: &G, h: &H, resolution: usize) -> Result<EnergyReport> {
    quadrature::bach_pairing(geometry, h, resolution)
}

/// Deterministic sample of `count` random points.
pub fn random_samples<G: Geometry>(geometry: &G, count: usize, seed: u64) -> Vec<SamplePoint> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| geometry.atlas().random_point(&mut rng)).collect()
}

/// The quadrature nodes of the given resolution, as sample points.
pub fn grid_samples<G: Geometry>(geometry: &G, resolution: usize) -> Vec<SamplePoint> {
    QuadratureGrid::new(geometry.atlas(), resolution).nodes.into_iter().map(|n| (n.patch, n.x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{FlatTorus, FubiniStudy, ProductSpheres, RoundSphere4};
    use crate::manifold::{standard_complex_structure, ConstantFactor};
    use approx::assert_relative_eq;

    fn product() -> ProductSpheres {
        ProductSpheres { r1: 1.0, r2: 2f64.sqrt() }
    }

    #[test]
    fn einstein_maxwell_on_product() {
        let pts = random_samples(&product(), 8, 1);
        let cfg = maxwell_field_csck(&FieldConfiguration::new(product(), FieldSource::Zero), &pts).unwrap();
        let r = em_residual(&cfg, &pts).unwrap();
        assert!(r.worst() < 1e-7, "{r:?}");
        let omega = cfg.with_field(FieldSource::Kahler { omega: 1.0, rho0: Coefficient::Constant(0.0), psi: 0.0 });
        assert!(em_residual(&omega, &pts).unwrap().normalized.max > 1e-2);
    }

    #[test]
    fn anti_self_dual_rho0() {
        let cfg = FieldConfiguration::new(
            product(),
            FieldSource::Kahler { omega: 0.0, rho0: Coefficient::Constant(1.0), psi: 0.0 },
        );
        let x = [0.3, -0.2, 0.1, 0.4];
        let f = cfg.field_at(0, &x).unwrap();
        let (plus, minus) = selfdual_split(&f, &product().metric(0, &x), Orientation::Positive);
        assert!(plus.max_abs() < 1e-12 * minus.max_abs());
    }

    #[test]
    fn round_sphere_with_zero_field() {
        let s = RoundSphere4 { radius: 1.0 };
        let pts = random_samples(&s, 5, 2);
        let r = em_residual(&FieldConfiguration::new(s, FieldSource::Zero), &pts).unwrap();
        assert!(r.normalized.max < 1e-12);
    }

    #[test]
    fn fubini_study_bach_merkulov_with_kahler_form() {
        let fs = FubiniStudy { scale: 1.0 };
        let pts = random_samples(&fs, 4, 3);
        let cfg = FieldConfiguration::new(fs, FieldSource::Kahler { omega: 1.0, rho0: Coefficient::Constant(0.0), psi: 0.0 });
        let r = bm_residual(&cfg, &pts).unwrap();
        assert!(r.normalized.max < 1e-8, "{r:?}");
        assert!(r.harmonic.closed < 1e-7 && r.harmonic.coclosed < 1e-7);
    }

    #[test]
    fn harmonicity_on_flat_chart() {
        let pts = vec![(0, [0.1, 0.2, 0.3, 0.4]), (0, [0.5, 0.5, 0.5, 0.5])];
        let f = TwoForm { c: [1.0, 0.5, 0.0, 0.0, 0.0, 2.0] };
        let r = harmonic_residual(&FieldConfiguration::new(FlatTorus, FieldSource::Constant(f)), &pts).unwrap();
        assert_eq!(r, HarmonicReport { closed: 0.0, coclosed: 0.0 });
        let e12 = TwoForm { c: [0.0, 0.0, 0.0, 1.0, 0.0, 0.0] };
        let cfg = FieldConfiguration::new(FlatTorus, FieldSource::Linear { axis: 0, form: e12 });
        let r = harmonic_residual(&cfg, &pts).unwrap();
        assert_relative_eq!(r.closed, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn missing_kahler_data() {
        let cfg = FieldConfiguration::new(FlatTorus, FieldSource::Zero);
        assert!(matches!(maxwell_field_csck(&cfg, &[(0, [0.1; 4])]), Err(Error::MissingKahlerData)));
        assert!(matches!(maxwell_field_extremal(&cfg), Err(Error::MissingKahlerData)));
    }

    #[test]
    fn constant_rescale_of_bach() {
        let cfg = FieldConfiguration::new(product(), FieldSource::Zero);
        let scaled = conformal_rescale(&cfg, ConstantFactor(2.5), 4).unwrap();
        let x = [0.3, -0.2, 0.1, 0.4];
        let b = MetricChart::new(&product(), 0).curvature_stack(&x).unwrap().bach;
        let bs = MetricChart::new(&scaled.geometry, 0).curvature_stack(&x).unwrap().bach;
        for i in 0..4 {
            for j in 0..4 {
                assert!((bs[i][j] - b[i][j] / 2.5).abs() < 1e-10);
            }
        }
        assert!(conformal_rescale(&cfg, ConstantFactor(-1.0), 4).is_err());
    }

    #[test]
    fn mixed_composition_identity() {
        let g = product().metric(0, &[0.3, 0.1, -0.4, 0.2]);
        let ginv = linalg::inverse(&g);
        let f = TwoForm { c: [0.3, -1.2, 0.5, 0.8, 0.1, -0.6] };
        let lhs = trace_free_part(&f_compose_f(&f.to_matrix(), &ginv), &g, &ginv);
        let rhs = mixed_composition(&f, &g);
        assert!(linalg::max_abs(&linalg::sub(&lhs, &rhs)) < 1e-12);
    }

    #[test]
    fn validate_checks_structure() {
        let cfg = FieldConfiguration::new(product(), FieldSource::Kahler { omega: 1.0, rho0: Coefficient::Constant(0.0), psi: 0.0 });
        cfg.validate(&random_samples(&product(), 3, 4)).unwrap();
        assert_eq!(cfg.complex_structure(), Some(standard_complex_structure()));
    }
}
