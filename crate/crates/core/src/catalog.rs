//! Closed-form test geometries: round `S⁴`, Fubini–Study `ℂP²`, products of
//! round 2-spheres and the flat torus.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::Scalar;
use crate::linalg::{self, Mat4};
use crate::manifold::{standard_complex_structure, Atlas, Bump, Geometry};

/// Round `S⁴` of the given radius: `4R²/(1+|y|²)² δ` in both stereographic charts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoundSphere4 {
    pub radius: f64,
}

impl Geometry for RoundSphere4 {
    fn atlas(&self) -> Atlas {
        Atlas::Sphere4
    }
    fn metric<S: Scalar>(&self, _patch: usize, x: &[S; 4]) -> Mat4<S> {
        let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
        let f = (S::one() + r2).recip().square().scale(4.0 * self.radius * self.radius);
        linalg::scale(&linalg::identity(), f)
    }
}

/// Fubini–Study metric on `ℂP²` in the affine chart, scaled so that it equals
/// `scale · δ` at the origin. Einstein with `Ric = (6/scale) g`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FubiniStudy {
    pub scale: f64,
}

impl Geometry for FubiniStudy {
    fn atlas(&self) -> Atlas {
        Atlas::ComplexProjective
    }
    fn metric<S: Scalar>(&self, _patch: usize, x: &[S; 4]) -> Mat4<S> {
        // h_jk = δ_jk/N − conj(z_j) z_k/N², N = 1 + |z|², z_j = a_j + i b_j
        let a = [x[0], x[2]];
        let b = [x[1], x[3]];
        let n = S::one() + x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
        let inv = n.recip();
        let inv2 = inv * inv;
        let mut g = linalg::zeros::<S>();
        for j in 0..2 {
            for k in 0..2 {
                let mut re = (a[j] * a[k] + b[j] * b[k]) * (-inv2);
                if j == k {
                    re += inv;
                }
                let im = (a[j] * b[k] - b[j] * a[k]) * (-inv2);
                g[2 * j][2 * k] = re.scale(self.scale);
                g[2 * j + 1][2 * k + 1] = re.scale(self.scale);
                g[2 * j][2 * k + 1] = im.scale(self.scale);
                g[2 * j + 1][2 * k] = (-im).scale(self.scale);
            }
        }
        g
    }
    fn complex_structure(&self) -> Option<Mat4<f64>> {
        Some(standard_complex_structure())
    }
}

/// `S²(r₁) × S²(r₂)` with the product of the factors' standard complex
/// structures; Kähler with constant scalar curvature `2/r₁² + 2/r₂²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductSpheres {
    pub r1: f64,
    pub r2: f64,
}

impl Geometry for ProductSpheres {
    fn atlas(&self) -> Atlas {
        Atlas::SpherePair
    }
    fn metric<S: Scalar>(&self, _patch: usize, x: &[S; 4]) -> Mat4<S> {
        let f1 = (S::one() + x[0] * x[0] + x[1] * x[1]).recip().square().scale(4.0 * self.r1 * self.r1);
        let f2 = (S::one() + x[2] * x[2] + x[3] * x[3]).recip().square().scale(4.0 * self.r2 * self.r2);
        let mut g = linalg::zeros::<S>();
        g[0][0] = f1;
        g[1][1] = f1;
        g[2][2] = f2;
        g[3][3] = f2;
        g
    }
    fn complex_structure(&self) -> Option<Mat4<f64>> {
        Some(standard_complex_structure())
    }
}

/// The unit flat torus `ℝ⁴/ℤ⁴`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlatTorus;

impl Geometry for FlatTorus {
    fn atlas(&self) -> Atlas {
        Atlas::Torus
    }
    fn metric<S: Scalar>(&self, _patch: usize, _x: &[S; 4]) -> Mat4<S> {
        linalg::identity()
    }
}

/// Any catalog geometry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CatalogGeometry {
    Sphere4(RoundSphere4),
    FubiniStudy(FubiniStudy),
    Product(ProductSpheres),
    Flat(FlatTorus),
}

impl Geometry for CatalogGeometry {
    fn atlas(&self) -> Atlas {
        match self {
            Self::Sphere4(g) => g.atlas(),
            Self::FubiniStudy(g) => g.atlas(),
            Self::Product(g) => g.atlas(),
            Self::Flat(g) => g.atlas(),
        }
    }
    fn metric<S: Scalar>(&self, patch: usize, x: &[S; 4]) -> Mat4<S> {
        match self {
            Self::Sphere4(g) => g.metric(patch, x),
            Self::FubiniStudy(g) => g.metric(patch, x),
            Self::Product(g) => g.metric(patch, x),
            Self::Flat(g) => g.metric(patch, x),
        }
    }
    fn complex_structure(&self) -> Option<Mat4<f64>> {
        match self {
            Self::Sphere4(g) => g.complex_structure(),
            Self::FubiniStudy(g) => g.complex_structure(),
            Self::Product(g) => g.complex_structure(),
            Self::Flat(g) => g.complex_structure(),
        }
    }
}

/// Closed-form constants of a catalog entry.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KnownConstants {
    pub scalar: f64,
    pub volume: f64,
    /// Areas of the two factors, for products.
    pub areas: Option<(f64, f64)>,
    pub is_einstein: bool,
    pub is_csck: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub geometry: CatalogGeometry,
    pub constants: KnownConstants,
}

impl CatalogEntry {
    pub fn is_kahler(&self) -> bool {
        self.geometry.complex_structure().is_some()
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")))
    }
}

pub fn make_sphere4(radius: f64) -> Result<CatalogEntry> {
    positive("radius", radius)?;
    Ok(CatalogEntry {
        name: format!("sphere4-{radius}"),
        geometry: CatalogGeometry::Sphere4(RoundSphere4 { radius }),
        constants: KnownConstants {
            scalar: 12.0 / (radius * radius),
            volume: 8.0 * PI * PI / 3.0 * radius.powi(4),
            areas: None,
            is_einstein: true,
            is_csck: false,
        },
    })
}

pub fn make_fubini_study(scale: f64) -> Result<CatalogEntry> {
    positive("scale", scale)?;
    Ok(CatalogEntry {
        name: format!("fubini-study-{scale}"),
        geometry: CatalogGeometry::FubiniStudy(FubiniStudy { scale }),
        constants: KnownConstants {
            scalar: 24.0 / scale,
            volume: PI * PI / 2.0 * scale * scale,
            areas: None,
            is_einstein: true,
            is_csck: true,
        },
    })
}

pub fn make_product_spheres(r1: f64, r2: f64) -> Result<CatalogEntry> {
    positive("r1", r1)?;
    positive("r2", r2)?;
    let (a1, a2) = (4.0 * PI * r1 * r1, 4.0 * PI * r2 * r2);
    Ok(CatalogEntry {
        name: format!("product-{r1}-{r2}"),
        geometry: CatalogGeometry::Product(ProductSpheres { r1, r2 }),
        constants: KnownConstants {
            scalar: 2.0 / (r1 * r1) + 2.0 / (r2 * r2),
            volume: a1 * a2,
            areas: Some((a1, a2)),
            is_einstein: (r1 - r2).abs() <= 1e-12 * r1.max(r2),
            is_csck: true,
        },
    })
}

pub fn make_flat_chart() -> Result<CatalogEntry> {
    Ok(CatalogEntry {
        name: "flat".into(),
        geometry: CatalogGeometry::Flat(FlatTorus),
        constants: KnownConstants { scalar: 0.0, volume: 1.0, areas: None, is_einstein: true, is_csck: false },
    })
}

/// Conformal bump factor; see [`Bump`].
pub fn make_bump(amplitude: f64, center: Vec<f64>, width: f64) -> Result<Bump> {
    positive("width", width)?;
    if amplitude <= -1.0 || !amplitude.is_finite() {
        return Err(Error::InvalidParameter(format!("bump amplitude must exceed -1, got {amplitude}")));
    }
    if center.is_empty() {
        return Err(Error::InvalidParameter("bump center is empty".into()));
    }
    Ok(Bump { amplitude, center, width })
}

/// Named entries referenced by the command line.
pub fn catalog() -> Vec<CatalogEntry> {
    let named = |mut e: CatalogEntry, name: &str| {
        e.name = name.to_string();
        e
    };
    vec![
        named(make_sphere4(1.0).expect("valid"), "sphere4"),
        named(make_fubini_study(1.0).expect("valid"), "fubini-study"),
        named(make_product_spheres(1.0, 1.0).expect("valid"), "product-1-1"),
        named(make_product_spheres(1.0, 2f64.sqrt()).expect("valid"), "product-1-sqrt2"),
        named(make_flat_chart().expect("valid"), "flat"),
    ]
}

pub fn lookup(name: &str) -> Result<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}
