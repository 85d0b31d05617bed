//! Residual and property suites run by `verify`.

use serde_json::{json, Value};
use weylbach::catalog::{lookup, make_bump, CatalogEntry};
use weylbach::field::{
    bm_residual, conformal_rescale, em_residual, maxwell_field_csck, maxwell_field_extremal, random_samples,
    FieldConfiguration, SamplePoint,
};
use weylbach::linalg::{self, Mat4};
use weylbach::manifold::{Bump, Conformal, ScalarField};
use weylbach::quadrature::{volume, weyl_energy_numeric};
use weylbach::tensor::forms::{hodge_star_2form, Orientation};
use weylbach::tensor::two_form_from_endo;
use weylbach::{CatalogGeometry, FieldSource, Geometry, MetricChart, Result, WeylPart};

use crate::output::{num, CommandResult, Csv, Status};
use crate::Suite;

/// Number of random sample points per suite.
const SAMPLES: usize = 20;

struct Check {
    name: &'static str,
    value: f64,
    tolerance: f64,
}

impl Check {
    fn pass(&self) -> bool {
        self.value <= self.tolerance
    }
}

struct Run {
    checks: Vec<Check>,
    info: Vec<(&'static str, Value)>,
    override_tol: Option<f64>,
}

impl Run {
    fn check(&mut self, name: &'static str, value: f64, default_tol: f64) {
        let tolerance = self.override_tol.unwrap_or(default_tol);
        // NaN never passes
        let value = if value.is_nan() { f64::INFINITY } else { value };
        self.checks.push(Check { name, value, tolerance });
    }

    fn info(&mut self, name: &'static str, value: Value) {
        self.info.push((name, value));
    }
}

pub struct VerifyOptions {
    pub resolution: usize,
    pub tolerance: Option<f64>,
    pub seed: u64,
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Em => "em",
        Suite::Bm => "bm",
        Suite::Conformal => "conformal",
        Suite::Curvature => "curvature",
    }
}

pub fn verify(suite: Suite, entry_name: &str, opts: &VerifyOptions) -> Result<CommandResult> {
    let entry = lookup(entry_name)?;
    let points = random_samples(&entry.geometry, SAMPLES, opts.seed);
    let mut run = Run { checks: Vec::new(), info: Vec::new(), override_tol: opts.tolerance };
    match suite {
        Suite::Em => em_suite(&entry, &points, &mut run)?,
        Suite::Bm => bm_suite(&entry, &points, &mut run)?,
        Suite::Conformal => conformal_suite(&entry, &points, opts, &mut run)?,
        Suite::Curvature => curvature_suite(&entry, &points, opts, &mut run)?,
    }

    let failed: Vec<&str> = run.checks.iter().filter(|c| !c.pass()).map(|c| c.name).collect();
    let status = if failed.is_empty() { Status::Ok } else { Status::Violation };
    let mut csv = Csv::new(&["check", "value", "tolerance", "pass"]);
    for c in &run.checks {
        csv.push(vec![c.name.into(), num(c.value), num(c.tolerance), c.pass().to_string()]);
    }
    let rows: Vec<Value> = run
        .checks
        .iter()
        .map(|c| json!({"check": c.name, "value": finite_or_null(c.value), "tolerance": c.tolerance, "pass": c.pass()}))
        .collect();
    let info: serde_json::Map<String, Value> = run.info.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    let mut log = vec![format!(
        "suite {} on {entry_name}: {} of {} checks pass ({} sample points, seed {})",
        suite_name(suite),
        run.checks.len() - failed.len(),
        run.checks.len(),
        points.len(),
        opts.seed
    )];
    if !failed.is_empty() {
        log.push(format!("violations: {}", failed.join(", ")));
    }
    Ok(CommandResult {
        status,
        json: json!({
            "command": "verify",
            "suite": suite_name(suite),
            "entry": entry_name,
            "resolution": opts.resolution,
            "seed": opts.seed,
            "samples": points.len(),
            "checks": rows,
            "info": info,
        }),
        csv,
        log,
    })
}

fn finite_or_null(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

/// The Maxwell field used by a suite: `ω + ½ρ̊` (Einstein–Maxwell) or
/// `ω + ½ψ` (Bach–Merkulov) on Kähler entries, zero otherwise.
fn source_field(
    entry: &CatalogEntry,
    points: &[SamplePoint],
    suite: Suite,
    run: &mut Run,
) -> Result<FieldConfiguration<CatalogGeometry>> {
    let base = FieldConfiguration::new(entry.geometry, FieldSource::Zero);
    if !entry.is_kahler() {
        run.info("field", json!("zero"));
        return Ok(base);
    }
    Ok(if suite == Suite::Em {
        run.info("field", json!("omega + rho0/2"));
        maxwell_field_csck(&base, points)?
    } else {
        run.info("field", json!("omega + psi/2"));
        maxwell_field_extremal(&base)?
    })
}

fn em_suite(entry: &CatalogEntry, points: &[SamplePoint], run: &mut Run) -> Result<()> {
    let cfg = source_field(entry, points, Suite::Em, run)?;
    let r = em_residual(&cfg, points)?;
    run.check("em-residual", r.normalized.max, 1e-6);
    run.check("field-closed", r.harmonic.closed, 1e-6);
    run.check("field-coclosed", r.harmonic.coclosed, 1e-6);
    run.info("em-residual-rms", json!(r.normalized.rms));
    Ok(())
}

fn bm_suite(entry: &CatalogEntry, points: &[SamplePoint], run: &mut Run) -> Result<()> {
    let cfg = source_field(entry, points, Suite::Bm, run)?;
    let r = bm_residual(&cfg, points)?;
    run.check("bm-residual", r.normalized.max, 1e-6);
    run.check("field-closed", r.harmonic.closed, 1e-6);
    run.check("field-coclosed", r.harmonic.coclosed, 1e-6);

    if let Some(j) = entry.geometry.complex_structure() {
        let mut asd: f64 = 0.0;
        let mut ratio = None;
        for (patch, x) in points {
            let st = MetricChart::new(&entry.geometry, *patch).curvature_stack(x)?;
            if st.bach_norm() <= 1e-10 * st.riemann_norm_sq() {
                // Bach-flat here; ψ vanishes up to rounding
                continue;
            }
            let psi = two_form_from_endo(&st.bach, &j, &st.metric)?;
            let star = hodge_star_2form(&psi, &st.metric, Orientation::Positive);
            asd = asd.max(star.add(&psi).max_abs() / psi.max_abs());
            let r0 = st.trace_free_ricci();
            let r0_sq = linalg::inner(&r0, &r0, &st.inverse);
            if ratio.is_none() && r0_sq > 1e-12 * st.scalar * st.scalar {
                ratio = Some(linalg::inner(&st.bach, &r0, &st.inverse) / (st.scalar * r0_sq));
            }
        }
        run.check("psi-anti-self-dual", asd, 1e-8);
        if let Some(v) = ratio {
            run.info("bach-over-s-ricci0", json!(v));
        }
    }
    Ok(())
}

fn curvature_suite(entry: &CatalogEntry, points: &[SamplePoint], opts: &VerifyOptions, run: &mut Run) -> Result<()> {
    let g = &entry.geometry;
    let kahler = entry.is_kahler();
    let declared = entry.constants.scalar;
    let (mut sym, mut bianchi, mut scalar, mut weyl_trace, mut bach_shape, mut bach_flat, mut kw) =
        (0f64, 0f64, 0f64, 0f64, 0f64, 0f64, 0f64);
    for (patch, x) in points {
        let st = MetricChart::new(g, *patch).curvature_stack(x)?;
        let rm = st.riemann.max_abs();
        let unit = if rm > 0.0 { rm } else { 1.0 };
        let r = |a, b, c, d| st.riemann.get(a, b, c, d);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let v = r(a, b, c, d);
                        let s = (v + r(b, a, c, d)).abs().max((v + r(a, b, d, c)).abs()).max((v - r(c, d, a, b)).abs());
                        sym = sym.max(s / unit);
                        bianchi = bianchi.max((v + r(a, c, d, b) + r(a, d, b, c)).abs() / unit);
                    }
                }
            }
        }
        scalar = scalar.max((st.scalar - declared).abs() / declared.abs().max(1.0));
        weyl_trace = weyl_trace.max(linalg::max_abs(&st.weyl.ricci_contraction(&st.inverse)) / unit);

        let rm2 = st.riemann_norm_sq();
        let bach_unit = linalg::max_abs(&st.bach).max(rm2).max(f64::MIN_POSITIVE);
        let asym = linalg::max_abs(&linalg::sub(&st.bach, &linalg::transpose(&st.bach)));
        let trace = linalg::trace(&st.bach, &st.inverse).abs();
        bach_shape = bach_shape.max(asym.max(trace) / bach_unit);
        if entry.constants.is_einstein {
            let b = st.bach_norm();
            bach_flat = bach_flat.max(if rm2 > 0.0 { b / rm2 } else { b });
        }
        if kahler && st.scalar != 0.0 {
            let target = st.scalar * st.scalar / 24.0;
            kw = kw.max((st.weyl_plus_norm_sq() - target).abs() / target);
        }
    }
    run.check("riemann-symmetries", sym, 1e-10);
    run.check("first-bianchi", bianchi, 1e-10);
    run.check("scalar-matches-catalog", scalar, 1e-9);
    run.check("weyl-trace-free", weyl_trace, 1e-10);
    run.check("bach-symmetric-trace-free", bach_shape, 1e-8);
    if entry.constants.is_einstein {
        run.check("bach-flat", bach_flat, 1e-7);
    }
    if kahler {
        run.check("kahler-weyl-identity", kw, 1e-7);
    }
    let v = volume(g, opts.resolution)?;
    run.check("volume", (v.value - entry.constants.volume).abs() / entry.constants.volume, 1e-8);
    run.info("volume", json!(v.value));
    Ok(())
}

fn conformal_suite(entry: &CatalogEntry, points: &[SamplePoint], opts: &VerifyOptions, run: &mut Run) -> Result<()> {
    let g = entry.geometry;
    let atlas = g.atlas();
    let (p0, x0) = points[0];
    let center: Vec<f64> = atlas.embed(p0, &x0);
    let u = make_bump(0.3, center.clone(), 1.2)?;
    run.info("bump", json!({"amplitude": u.amplitude, "width": u.width, "center": center}));
    let ug = Conformal { base: g, factor: u.clone() };

    let active: Vec<SamplePoint> = random_samples(&g, 50 * SAMPLES, opts.seed.wrapping_add(1))
        .into_iter()
        .filter(|(p, x)| factor(&u, &g, *p, x) > 1.0 + 1e-3)
        .take(SAMPLES)
        .collect();
    let sample: Vec<SamplePoint> = points.iter().copied().chain(active.iter().copied()).collect();
    run.info("points-in-support", json!(active.len()));

    let (mut vol_law, mut bach_law) = (0f64, 0f64);
    for (patch, x) in &sample {
        let uv = factor(&u, &g, *patch, x);
        let m: Mat4<f64> = g.metric(*patch, x);
        let mu: Mat4<f64> = ug.metric(*patch, x);
        let expect = uv * uv * linalg::determinant(&m).sqrt();
        vol_law = vol_law.max((linalg::determinant(&mu).sqrt() - expect).abs() / expect);

        let b = MetricChart::new(&g, *patch).curvature_stack(x)?.bach;
        let su = MetricChart::new(&ug, *patch).curvature_stack(x)?;
        let expect = linalg::scale(&b, 1.0 / uv);
        let unit = linalg::max_abs(&expect).max(su.riemann_norm_sq());
        let diff = linalg::max_abs(&linalg::sub(&su.bach, &expect));
        bach_law = bach_law.max(if unit > 0.0 { diff / unit } else { diff });
    }
    run.check("volume-form-weight", vol_law, 1e-12);
    run.check("bach-weight", bach_law, 1e-5);

    let w = weyl_energy_numeric(&g, WeylPart::Full, opts.resolution)?.value;
    let wu = weyl_energy_numeric(&ug, WeylPart::Full, opts.resolution)?.value;
    run.check("weyl-energy-invariance", (wu - w).abs() / w.abs().max(1.0), 1e-5);
    run.info("weyl-energy", json!({"g": w, "ug": wu}));

    let cfg = source_field(entry, points, Suite::Bm, run)?;
    let moved = conformal_rescale(&cfg, u, opts.resolution.min(12))?;
    run.check("bm-transport", bm_residual(&moved, &sample)?.worst(), 1e-5);
    Ok(())
}

fn factor(u: &Bump, g: &CatalogGeometry, patch: usize, x: &[f64; 4]) -> f64 {
    u.value(g.atlas(), patch, x)
}
