//! Truncated multivariate Taylor arithmetic in four variables.
//!
//! A [`Jet`] holds the Taylor coefficients `c_α = ∂^α f / α!` of a scalar
//! function around a base point, for all multi-indices `|α| ≤ ord`. The
//! storage capacity `K` is a type parameter (1, 5, 15, 35, 70 or 126
//! coefficients, i.e. orders 0 through 5); the truncation order is carried at
//! runtime and never exceeds the capacity. Binary operations truncate to the
//! smaller order of their operands, so constants (which carry the full
//! capacity order) never limit precision.
//!
//! Monomials are stored in graded order, so a jet of order `o` only touches
//! the first `N(o)` coefficients and all tables are prefix-truncatable.

use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

/// Highest derivative order supported by the shared tables.
pub const MAX_ORDER: usize = 5;

/// Number of monomials of degree ≤ `order` in four variables.
pub const fn coeff_count(order: usize) -> usize {
    // C(order + 4, 4)
    (order + 1) * (order + 2) * (order + 3) * (order + 4) / 24
}

/// Largest order whose coefficients fit in capacity `k`.
pub const fn capacity_order(k: usize) -> usize {
    let mut o = 0;
    while o < MAX_ORDER && coeff_count(o + 1) <= k {
        o += 1;
    }
    o
}

/// Value plus gradient.
pub type Jet1 = Jet<5>;
/// Up to second derivatives.
pub type Jet2 = Jet<15>;
/// Up to third derivatives.
pub type Jet3 = Jet<35>;
/// Up to fourth derivatives.
pub type Jet4 = Jet<70>;
/// Up to fifth derivatives.
pub type Jet5 = Jet<126>;

struct Tables {
    monomials: Vec<[u8; 4]>,
    /// `mul[..mul_end[o]]` contains every (i, j, k) with `k` of degree ≤ o.
    mul: Vec<(u16, u16, u16)>,
    mul_end: [usize; MAX_ORDER + 1],
    /// `shift[axis][i]` = index of `monomials[i] + e_axis` (for degree < MAX_ORDER).
    shift: [Vec<u16>; 4],
    /// `α!` for every monomial.
    factorial_weight: Vec<f64>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut monomials = Vec::with_capacity(coeff_count(MAX_ORDER));
        for deg in 0..=MAX_ORDER as u8 {
            for a in (0..=deg).rev() {
                for b in (0..=deg - a).rev() {
                    for c in (0..=deg - a - b).rev() {
                        monomials.push([a, b, c, deg - a - b - c]);
                    }
                }
            }
        }
        let index_of = |m: [u8; 4]| monomials.iter().position(|x| *x == m);

        let mut mul = Vec::new();
        let mut mul_end = [0; MAX_ORDER + 1];
        for deg in 0..=MAX_ORDER {
            for (k, mk) in monomials.iter().enumerate() {
                if degree(mk) != deg {
                    continue;
                }
                for (i, mi) in monomials.iter().enumerate() {
                    if (0..4).all(|a| mi[a] <= mk[a]) {
                        let mj = [mk[0] - mi[0], mk[1] - mi[1], mk[2] - mi[2], mk[3] - mi[3]];
                        let j = index_of(mj).expect("complement monomial");
                        mul.push((i as u16, j as u16, k as u16));
                    }
                }
            }
            mul_end[deg] = mul.len();
        }

        let shift = std::array::from_fn(|axis| {
            monomials
                .iter()
                .take(coeff_count(MAX_ORDER - 1))
                .map(|m| {
                    let mut up = *m;
                    up[axis] += 1;
                    index_of(up).expect("shifted monomial") as u16
                })
                .collect()
        });

        let factorial_weight = monomials
            .iter()
            .map(|m| m.iter().map(|&e| factorial(e as usize)).product())
            .collect();

        Tables { monomials, mul, mul_end, shift, factorial_weight }
    })
}

fn degree(m: &[u8; 4]) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Index of a multi-index in the graded monomial ordering.
pub fn monomial_index(alpha: [u8; 4]) -> usize {
    let t = tables();
    assert!(degree(&alpha) <= MAX_ORDER, "multi-index exceeds MAX_ORDER");
    t.monomials
        .iter()
        .position(|m| *m == alpha)
        .expect("monomial present")
}

/// All multi-indices with `|α| ≤ order`, in storage order.
pub fn multi_indices(order: usize) -> &'static [[u8; 4]] {
    &tables().monomials[..coeff_count(order.min(MAX_ORDER))]
}

/// Truncated Taylor polynomial in four variables with capacity `K`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<const K: usize> {
    ord: u8,
    c: [f64; K],
}

impl<const K: usize> Jet<K> {
    pub const CAPACITY_ORDER: usize = capacity_order(K);

    /// A constant; carries the full capacity order.
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; K];
        c[0] = v;
        Self { ord: Self::CAPACITY_ORDER as u8, c }
    }

    /// The coordinate function `x_axis` expanded around `value`, truncated at `order`.
    pub fn variable(value: f64, axis: usize, order: usize) -> Self {
        assert!(order <= Self::CAPACITY_ORDER, "order {order} exceeds jet capacity {K}");
        let mut c = [0.0; K];
        c[0] = value;
        if order >= 1 {
            c[1 + axis] = 1.0;
        }
        Self { ord: order as u8, c }
    }

    /// Builds a jet from Taylor coefficients in storage order.
    pub fn from_coefficients(order: usize, coeffs: &[f64]) -> Self {
        assert!(order <= Self::CAPACITY_ORDER);
        let n = coeff_count(order);
        assert!(coeffs.len() >= n);
        let mut c = [0.0; K];
        c[..n].copy_from_slice(&coeffs[..n]);
        Self { ord: order as u8, c }
    }

    pub fn order(&self) -> usize {
        self.ord as usize
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.c[..coeff_count(self.order())]
    }

    /// The partial derivative `∂^α f` at the base point.
    pub fn partial(&self, alpha: [u8; 4]) -> f64 {
        if degree(&alpha) > self.order() {
            return 0.0;
        }
        let i = monomial_index(alpha);
        self.c[i] * tables().factorial_weight[i]
    }

    /// Gradient at the base point.
    pub fn gradient(&self) -> [f64; 4] {
        if self.ord == 0 {
            return [0.0; 4];
        }
        [self.c[1], self.c[2], self.c[3], self.c[4]]
    }

    /// Jet of `∂f/∂x_axis`; the order drops by one.
    pub fn derivative(&self, axis: usize) -> Self {
        assert!(self.ord > 0, "cannot differentiate an order-0 jet");
        let new_ord = self.order() - 1;
        let t = tables();
        let mut c = [0.0; K];
        for (i, slot) in c.iter_mut().enumerate().take(coeff_count(new_ord)) {
            let up = t.shift[axis][i] as usize;
            *slot = self.c[up] * f64::from(t.monomials[up][axis]);
        }
        Self { ord: new_ord as u8, c }
    }

    /// Truncates to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        let mut c = [0.0; K];
        let n = coeff_count(order);
        c[..n].copy_from_slice(&self.c[..n]);
        Self { ord: order as u8, c }
    }

    /// Re-homes the coefficients in a jet of a different capacity.
    pub fn resize<const K2: usize>(&self) -> Jet<K2> {
        let order = self.order().min(Jet::<K2>::CAPACITY_ORDER);
        let n = coeff_count(order);
        let mut c = [0.0; K2];
        c[..n].copy_from_slice(&self.c[..n]);
        Jet { ord: order as u8, c }
    }

    /// Composes a univariate function given its scaled derivatives
    /// `d[n] = f^(n)(a₀)/n!` at the base value.
    pub fn compose(&self, d: &[f64]) -> Self {
        let ord = self.order();
        assert!(d.len() > ord);
        let mut h = *self;
        h.c[0] = 0.0;
        let mut r = Self::constant(d[ord]);
        r.ord = self.ord;
        for n in (0..ord).rev() {
            r *= h;
            r.c[0] += d[n];
        }
        r
    }

    fn zero_with(ord: u8) -> Self {
        Self { ord, c: [0.0; K] }
    }
}

impl<const K: usize> Add for Jet<K> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let ord = self.ord.min(rhs.ord);
        let mut r = Self::zero_with(ord);
        for i in 0..coeff_count(ord as usize) {
            r.c[i] = self.c[i] + rhs.c[i];
        }
        r
    }
}

impl<const K: usize> Sub for Jet<K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let ord = self.ord.min(rhs.ord);
        let mut r = Self::zero_with(ord);
        for i in 0..coeff_count(ord as usize) {
            r.c[i] = self.c[i] - rhs.c[i];
        }
        r
    }
}

impl<const K: usize> Mul for Jet<K> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let ord = self.ord.min(rhs.ord);
        let mut r = Self::zero_with(ord);
        let t = tables();
        for &(i, j, k) in &t.mul[..t.mul_end[ord as usize]] {
            r.c[k as usize] += self.c[i as usize] * rhs.c[j as usize];
        }
        r
    }
}

impl<const K: usize> Mul<f64> for Jet<K> {
    type Output = Self;
    fn mul(mut self, rhs: f64) -> Self {
        for v in &mut self.c[..coeff_count(self.ord as usize)] {
            *v *= rhs;
        }
        self
    }
}

impl<const K: usize> Div for Jet<K> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl<const K: usize> Neg for Jet<K> {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl<const K: usize> AddAssign for Jet<K> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const K: usize> SubAssign for Jet<K> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const K: usize> MulAssign for Jet<K> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

/// Arithmetic shared by plain floats and jets, so that metric and field
/// expressions are written once and evaluated either way.
pub trait Scalar:
    Copy
    + Send
    + Sync
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn cst(v: f64) -> Self;
    fn value(&self) -> f64;
    fn scale(self, k: f64) -> Self;
    fn recip(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn ln(self) -> Self;

    fn zero() -> Self {
        Self::cst(0.0)
    }
    fn one() -> Self {
        Self::cst(1.0)
    }
    fn square(self) -> Self {
        self * self
    }
}

impl Scalar for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn value(&self) -> f64 {
        *self
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn recip(self) -> Self {
        1.0 / self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
}

impl<const K: usize> Scalar for Jet<K> {
    fn cst(v: f64) -> Self {
        Self::constant(v)
    }
    fn value(&self) -> f64 {
        self.c[0]
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn recip(self) -> Self {
        let a = self.c[0];
        let inv = 1.0 / a;
        let mut d = [0.0; MAX_ORDER + 1];
        let mut p = inv;
        for (n, slot) in d.iter_mut().enumerate() {
            *slot = if n % 2 == 0 { p } else { -p };
            p *= inv;
        }
        self.compose(&d)
    }
    fn sqrt(self) -> Self {
        let a = self.c[0];
        let mut d = [0.0; MAX_ORDER + 1];
        // binom(1/2, n) a^(1/2 - n)
        let mut binom = 1.0;
        for (n, slot) in d.iter_mut().enumerate() {
            *slot = binom * a.powf(0.5 - n as f64);
            binom *= (0.5 - n as f64) / (n as f64 + 1.0);
        }
        self.compose(&d)
    }
    fn exp(self) -> Self {
        let e = self.c[0].exp();
        let d: [f64; MAX_ORDER + 1] = std::array::from_fn(|n| e / factorial(n));
        self.compose(&d)
    }
    fn sin(self) -> Self {
        let (s, c) = self.c[0].sin_cos();
        let cycle = [s, c, -s, -c];
        let d: [f64; MAX_ORDER + 1] = std::array::from_fn(|n| cycle[n % 4] / factorial(n));
        self.compose(&d)
    }
    fn cos(self) -> Self {
        let (s, c) = self.c[0].sin_cos();
        let cycle = [c, -s, -c, s];
        let d: [f64; MAX_ORDER + 1] = std::array::from_fn(|n| cycle[n % 4] / factorial(n));
        self.compose(&d)
    }
    fn ln(self) -> Self {
        let a = self.c[0];
        let d: [f64; MAX_ORDER + 1] = std::array::from_fn(|n| {
            if n == 0 {
                a.ln()
            } else {
                let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
                sign / (n as f64 * a.powi(n as i32))
            }
        });
        self.compose(&d)
    }
}

/// Seeds the four coordinate jets at `x`.
pub fn coordinates<const K: usize>(x: &[f64; 4], order: usize) -> [Jet<K>; 4] {
    std::array::from_fn(|a| Jet::variable(x[a], a, order))
}
