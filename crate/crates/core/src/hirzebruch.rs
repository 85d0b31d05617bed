//! Calabi energies of extremal Kähler metrics on Hirzebruch surfaces and
//! their comparison across the complex structures compatible with a class.
//!
//! For the class `4π𝔠ₖ + 2π(a + k)𝔣` the extremal metric has Calabi energy
//! `12π (a³ + 4a² + (4 + k²)a − 4k²) / (3a² − k²)`; the value depends on a
//! class only through `a = 2q/p − k`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{self, change_basis, compatible_structures, format_rational, integer, CohomologyClass, Rational};

/// The Calabi energy divided by `π`, exactly.
pub fn calabi_energy_over_pi(a: &Rational, k: u32) -> Result<Rational> {
    let kk = integer(k.into());
    if a <= &kk || !a.is_positive() {
        return Err(Error::Domain(format!("a-parameter {a} must exceed k = {k}")));
    }
    let k2 = &kk * &kk;
    let a2 = a * a;
    let num = &a2 * a + integer(4) * &a2 + (integer(4) + &k2) * a - integer(4) * &k2;
    let den = integer(3) * &a2 - &k2;
    Ok(integer(12) * num / den)
}

/// `12π (a³ + 4a² + (4 + k²)a − 4k²) / (3a² − k²)`, requiring `a > k`.
pub fn calabi_energy_hs(a: &Rational, k: u32) -> Result<f64> {
    Ok(lattice::to_f64(&calabi_energy_over_pi(a, k)?) * PI)
}

/// Exact energy over `π` of the extremal metric in a Kähler class.
pub fn calabi_energy_class_over_pi(class: &CohomologyClass) -> Result<Rational> {
    if !lattice::is_kahler(class) {
        return Err(lattice::not_kahler(class));
    }
    calabi_energy_over_pi(&class.a_parameter()?, class.k)
}

/// Calabi energy of the extremal metric in a Kähler class.
pub fn calabi_energy_class(class: &CohomologyClass) -> Result<f64> {
    Ok(lattice::to_f64(&calabi_energy_class_over_pi(class)?) * PI)
}

/// One complex structure compatible with the compared class.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub n: u32,
    pub class: CohomologyClass,
    #[serde(serialize_with = "ser_rational")]
    pub a: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub energy_over_pi: Rational,
    pub energy: f64,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// Energies of the extremal metrics in one class for every compatible `𝔽ₙ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnergyComparison {
    pub class: CohomologyClass,
    pub rows: Vec<ComparisonRow>,
}

impl EnergyComparison {
    /// Whether the energies are pairwise distinct; `None` with fewer than two rows.
    pub fn distinct_energies(&self) -> Option<bool> {
        if self.rows.len() < 2 {
            return None;
        }
        let mut e: Vec<&Rational> = self.rows.iter().map(|r| &r.energy_over_pi).collect();
        e.sort();
        Some(e.windows(2).all(|w| w[0] != w[1]))
    }

    /// The row of least energy (first by `n` among ties).
    pub fn minimizer(&self) -> Option<&ComparisonRow> {
        self.rows.iter().min_by(|x, y| x.energy_over_pi.cmp(&y.energy_over_pi))
    }

    /// CSV with columns `n,p,q,a,energy_over_pi`; the energy column holds the
    /// exact rational, followed by its decimal value.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,p,q,a,energy_over_pi,energy_over_pi_float\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.n,
                format_rational(&r.class.p),
                format_rational(&r.class.q),
                format_rational(&r.a),
                format_rational(&r.energy_over_pi),
                crate::format_float(lattice::to_f64(&r.energy_over_pi)),
            );
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "n": r.n,
                    "class": r.class,
                    "a": format_rational(&r.a),
                    "energy_over_pi": format_rational(&r.energy_over_pi),
                    "energy_over_pi_float": lattice::to_f64(&r.energy_over_pi),
                    "energy": r.energy,
                })
            })
            .collect();
        serde_json::json!({
            "class": self.class,
            "rows": rows,
            "distinct_energies": self.distinct_energies(),
        })
    }
}

/// Rows for every `n` in [`compatible_structures`], sorted by `n`.
pub fn compare_across_structures(class: &CohomologyClass) -> Result<EnergyComparison> {
    let rows = compatible_structures(class)?
        .into_iter()
        .map(|n| {
            let in_n = change_basis(class, n)?;
            let a = in_n.a_parameter()?;
            let energy_over_pi = calabi_energy_class_over_pi(&in_n)?;
            let energy = lattice::to_f64(&energy_over_pi) * PI;
            Ok(ComparisonRow { n, class: in_n, a, energy_over_pi, energy })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EnergyComparison { class: class.clone(), rows })
}
