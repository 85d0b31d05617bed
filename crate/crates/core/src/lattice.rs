//! Exact arithmetic on `H²(𝔽ₖ; ℝ)` in the basis `(𝔠ₖ, 𝔣)` dual to the
//! negative section `Cₖ` and the fiber `F`.
//!
//! The intersection form has matrix `[[−k, 1], [1, 0]]`. Bases of different
//! Hirzebruch models of the same parity are related by the shear
//! `𝔠ₖ = 𝔠ₙ + (n − k)/2 · 𝔣`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"num/den"`, an integer, or a finite decimal such as `"-2.75"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: '{s}'"));
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) || int.contains('/') {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let whole = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac = BigInt::from_str(frac).map_err(|_| bad())?;
        let frac = if negative { -frac } else { frac };
        return Ok(Rational::new(whole * &scale + frac, scale));
    }
    let r = Rational::from_str(s).map_err(|_| bad())?;
    Ok(r)
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Canonical `"num/den"` form (denominator always present).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// The class `p·𝔠ₖ + q·𝔣` on `𝔽ₖ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyClass {
    pub k: u32,
    pub p: Rational,
    pub q: Rational,
}

impl CohomologyClass {
    pub fn new(k: u32, p: Rational, q: Rational) -> Self {
        Self { k, p, q }
    }

    pub fn from_integers(k: u32, p: i64, q: i64) -> Self {
        Self::new(k, integer(p), integer(q))
    }

    /// The section class `𝔠ₖ`.
    pub fn section(k: u32) -> Self {
        Self::from_integers(k, 1, 0)
    }

    /// The fiber class `𝔣`.
    pub fn fiber(k: u32) -> Self {
        Self::from_integers(k, 0, 1)
    }

    pub fn scale(&self, lambda: &Rational) -> Self {
        Self::new(self.k, &self.p * lambda, &self.q * lambda)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_basis(self, other)?;
        Ok(Self::new(self.k, &self.p + &other.p, &self.q + &other.q))
    }

    /// The normalized parameter `a = 2q/p − k`; invariant under basis change and scaling.
    pub fn a_parameter(&self) -> Result<Rational> {
        if self.p.is_zero() {
            return Err(Error::Domain("a-parameter needs p ≠ 0".into()));
        }
        Ok(integer(2) * &self.q / &self.p - integer(self.k.into()))
    }

    /// Parses `"k,p,q"` with rational `p`, `q`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected 'k,p,q', got '{s}'")));
        }
        let k = parts[0].trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad Hirzebruch index '{}'", parts[0])))?;
        Ok(Self::new(k, parse_rational(parts[1])?, parse_rational(parts[2])?))
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})c_{} + ({})f", self.p, self.k, self.q)
    }
}

#[derive(Serialize, Deserialize)]
struct ClassRepr {
    k: u32,
    p: String,
    q: String,
}

impl Serialize for CohomologyClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ClassRepr { k: self.k, p: format_rational(&self.p), q: format_rational(&self.q) }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CohomologyClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let r = ClassRepr::deserialize(deserializer)?;
        let p = parse_rational(&r.p).map_err(D::Error::custom)?;
        let q = parse_rational(&r.q).map_err(D::Error::custom)?;
        Ok(Self::new(r.k, p, q))
    }
}

/// The cycle `c·Cₖ + f·F`, Poincaré dual to the class `(c, f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyCycle {
    pub k: u32,
    pub coeff_c: Rational,
    pub coeff_f: Rational,
}

impl HomologyCycle {
    pub fn dual(&self) -> CohomologyClass {
        CohomologyClass::new(self.k, self.coeff_c.clone(), self.coeff_f.clone())
    }

    /// Pairing `⟨A, cycle⟩ = A · PD(cycle)`.
    pub fn evaluate(&self, class: &CohomologyClass) -> Result<Rational> {
        intersect(class, &self.dual())
    }
}

fn same_basis(a: &CohomologyClass, b: &CohomologyClass) -> Result<()> {
    if a.k != b.k {
        return Err(Error::BasisMismatch(a.k, b.k));
    }
    Ok(())
}

/// `A·B = p_A q_B + q_A p_B − k p_A p_B`.
pub fn intersect(a: &CohomologyClass, b: &CohomologyClass) -> Result<Rational> {
    same_basis(a, b)?;
    let k = integer(a.k.into());
    Ok(&a.p * &b.q + &a.q * &b.p - k * &a.p * &b.p)
}

/// Rewrites `A` in the basis of `𝔽ₙ`; requires `n ≡ k (mod 2)`.
pub fn change_basis(a: &CohomologyClass, n: u32) -> Result<CohomologyClass> {
    if !(n + a.k).is_multiple_of(2) {
        return Err(Error::Parity { from: a.k, to: n });
    }
    let shift = rational(i64::from(n) - i64::from(a.k), 2);
    Ok(CohomologyClass::new(n, a.p.clone(), &a.p * shift + &a.q))
}

/// Kähler cone of `𝔽ₖ`: `p > 0` and `q > k·p`.
pub fn is_kahler(a: &CohomologyClass) -> bool {
    a.p.is_positive() && a.q > integer(a.k.into()) * &a.p
}

/// All `n ≥ 0` with `n ≡ k (mod 2)` and `n < 2q/p − k`, increasing.
pub fn compatible_structures(a: &CohomologyClass) -> Result<Vec<u32>> {
    if !is_kahler(a) {
        return Err(not_kahler(a));
    }
    let bound = integer(2) * &a.q / &a.p - integer(a.k.into());
    let mut out = Vec::new();
    let mut n = a.k % 2;
    while integer(n.into()) < bound {
        out.push(n);
        n += 2;
    }
    Ok(out)
}

pub(crate) fn not_kahler(a: &CohomologyClass) -> Error {
    Error::NotKahler { k: a.k, p: a.p.to_string(), q: a.q.to_string() }
}

/// `c₁(𝔽ₖ) = 2𝔠ₖ + (k + 2)𝔣`.
///
/// Writing the canonical class as `K = x·Cₖ + y·F`, adjunction on the fiber
/// (`F·F = 0`, genus 0) gives `K·F = x = −2`, and on the section
/// (`Cₖ·Cₖ = −k`, genus 0) gives `K·Cₖ = −k·x + y = k − 2`, so `y = −k − 2`.
pub fn first_chern(k: u32) -> CohomologyClass {
    CohomologyClass::from_integers(k, 2, i64::from(k) + 2)
}

/// `(c₁·A)² / (A·A)` as an exact rational.
pub fn lebrun_ratio(a: &CohomologyClass) -> Result<Rational> {
    let self_int = intersect(a, a)?;
    if !self_int.is_positive() {
        return Err(Error::DegenerateClass(self_int.to_string()));
    }
    let c1 = intersect(&first_chern(a.k), a)?;
    Ok(&c1 * &c1 / self_int)
}

/// `32π² (c₁·A)² / (A·A)`.
pub fn lebrun_bound(a: &CohomologyClass) -> Result<f64> {
    Ok(32.0 * std::f64::consts::PI.powi(2) * to_f64(&lebrun_ratio(a)?))
}

/// Convenience check used by tests and the command line: intersection numbers
/// of all pairs agree before and after a basis change.
pub fn preserves_intersections(classes: &[CohomologyClass], n: u32) -> Result<bool> {
    for a in classes {
        for b in classes {
            let before = intersect(a, b)?;
            let after = intersect(&change_basis(a, n)?, &change_basis(b, n)?)?;
            if before != after {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
