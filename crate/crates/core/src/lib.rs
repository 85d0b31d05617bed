//! Curvature, field equations and energies on compact four-manifolds.
//!
//! * [`jet`]: truncated Taylor arithmetic used to differentiate metrics exactly
//! * [`tensor`]: curvature through the Bach tensor, and pointwise 2-form algebra
//! * [`manifold`] and [`catalog`]: atlases of the model manifolds and closed-form metrics
//! * [`quadrature`]: volumes and curvature energies
//! * [`field`]: Einstein–Maxwell and Bach–Merkulov residuals, conformal rescaling
//! * [`lattice`] and [`hirzebruch`]: exact cohomology of Hirzebruch surfaces and
//!   the Calabi energies of their extremal metrics

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod error;
pub mod field;
pub mod hirzebruch;
pub mod jet;
pub mod lattice;
pub mod linalg;
pub mod manifold;
pub mod quadrature;
pub mod tensor;

pub use catalog::{catalog, lookup, CatalogEntry, CatalogGeometry};
pub use error::{Error, Result};
pub use field::{FieldConfiguration, FieldSource, ResidualReport};
pub use hirzebruch::EnergyComparison;
pub use jet::{Jet, Scalar};
pub use lattice::{CohomologyClass, HomologyCycle, Rational};
pub use linalg::Mat4;
pub use manifold::{Atlas, Geometry};
pub use quadrature::{EnergyReport, QuadratureGrid, WeylPart};
pub use tensor::{CurvatureStack, DiffStrategy, MetricChart, TwoForm};

/// Formats a float rounded to twelve significant digits, in its shortest
/// form; magnitudes outside `[1e-4, 1e15)` use exponent notation.
pub fn format_float(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let x: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    if x == 0.0 || (1e-4..1e15).contains(&x.abs()) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}
