use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::{Jet, Scalar};
use crate::linalg::{self, Mat4};

/// Index pairs `a < b` in storage order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Orientation of a chart relative to `dx⁰∧dx¹∧dx²∧dx³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Orientation {
    #[default]
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }
}

/// A 2-form at a point, by its six components `F_ab`, `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct TwoForm {
    pub c: [f64; 6],
}

impl TwoForm {
    pub fn from_matrix(m: &Mat4<f64>) -> Self {
        Self { c: PAIRS.map(|(a, b)| 0.5 * (m[a][b] - m[b][a])) }
    }

    pub fn to_matrix(&self) -> Mat4<f64> {
        let mut m = [[0.0; 4]; 4];
        for (k, &(a, b)) in PAIRS.iter().enumerate() {
            m[a][b] = self.c[k];
            m[b][a] = -self.c[k];
        }
        m
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.to_matrix()[a][b]
    }

    pub fn add(&self, other: &TwoForm) -> TwoForm {
        Self { c: std::array::from_fn(|k| self.c[k] + other.c[k]) }
    }

    pub fn scale(&self, k: f64) -> TwoForm {
        Self { c: self.c.map(|v| v * k) }
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Pointwise norm `|F|² = ½ F_ab F^ab`.
    pub fn norm_sq(&self, ginv: &Mat4<f64>) -> f64 {
        let m = self.to_matrix();
        0.5 * linalg::inner(&m, &m, ginv)
    }
}

fn is_antisymmetric(m: &Mat4<f64>, tol: f64) -> bool {
    (0..4).all(|a| (0..4).all(|b| (m[a][b] + m[b][a]).abs() <= tol))
}

/// Hodge star of an antisymmetric matrix: `(*F)_ab = ½ ε_abcd F^cd`.
pub fn hodge_star<S: Scalar>(f: &Mat4<S>, g: &Mat4<S>, ginv: &Mat4<S>, orientation: Orientation) -> Mat4<S> {
    let up = linalg::raise_both(f, ginv);
    let vol = linalg::determinant(g).sqrt().scale(orientation.sign());
    let mut out = linalg::zeros::<S>();
    for &(a, b) in &PAIRS {
        // complementary pair (c, d) with ε_abcd = ±1
        let (c, d) = complement(a, b);
        let sign = crate::tensor::curvature::permutation_sign([a, b, c, d]);
        let v = vol * (up[c][d] - up[d][c]).scale(0.5 * sign);
        out[a][b] = v;
        out[b][a] = -v;
    }
    out
}

fn complement(a: usize, b: usize) -> (usize, usize) {
    let mut rest = (0..4).filter(|&i| i != a && i != b);
    (rest.next().unwrap(), rest.next().unwrap())
}

pub fn hodge_star_2form(f: &TwoForm, g: &Mat4<f64>, orientation: Orientation) -> TwoForm {
    let ginv = linalg::inverse(g);
    TwoForm::from_matrix(&hodge_star(&f.to_matrix(), g, &ginv, orientation))
}

/// `(F⁺, F⁻) = ½(F ± *F)`.
pub fn selfdual_split(f: &TwoForm, g: &Mat4<f64>, orientation: Orientation) -> (TwoForm, TwoForm) {
    let star = hodge_star_2form(f, g, orientation);
    (f.add(&star).scale(0.5), f.add(&star.scale(-1.0)).scale(0.5))
}

/// `(F∘F)_ij = F_ia g^{as} F_sj`.
pub fn f_compose_f<S: Scalar>(f: &Mat4<S>, ginv: &Mat4<S>) -> Mat4<S> {
    linalg::matmul(&linalg::matmul(f, ginv), f)
}

/// `T − ¼ (tr_g T) g`.
pub fn trace_free_part<S: Scalar>(t: &Mat4<S>, g: &Mat4<S>, ginv: &Mat4<S>) -> Mat4<S> {
    let q = linalg::trace(t, ginv).scale(0.25);
    std::array::from_fn(|a| std::array::from_fn(|b| t[a][b] - q * g[a][b]))
}

/// `ψ_ab = T(J e_a, e_b) = J^c_a T_cb`, for `j[c][a] = J^c_a`.
pub fn endo_form<S: Scalar>(t: &Mat4<S>, j: &Mat4<f64>) -> Mat4<S> {
    std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let mut s = S::zero();
            for c in 0..4 {
                if j[c][a] != 0.0 {
                    s += t[c][b].scale(j[c][a]);
                }
            }
            s
        })
    })
}

/// The 2-form `T(J·,·)` of a J-invariant symmetric tensor.
///
/// Fails when `J` is not a metric-compatible almost-complex structure or when
/// the result is not antisymmetric (`T` not J-invariant).
pub fn two_form_from_endo(t: &Mat4<f64>, j: &Mat4<f64>, g: &Mat4<f64>) -> Result<TwoForm> {
    let scale = linalg::max_abs(g).max(1e-300);
    let jj = linalg::matmul(j, j);
    let defect = linalg::max_abs(&linalg::add(&jj, &linalg::identity()));
    let compat = linalg::matmul(&linalg::matmul(&linalg::transpose(j), g), j);
    let defect = defect.max(linalg::max_abs(&linalg::sub(&compat, g)) / scale);
    if defect > 1e-10 {
        return Err(Error::IncompatibleStructure(defect));
    }
    let psi = endo_form(t, j);
    let tol = 1e-8 * linalg::max_abs(t).max(1e-300);
    if !is_antisymmetric(&psi, tol) {
        let d = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).fold(0.0f64, |m, (a, b)| m.max((psi[a][b] + psi[b][a]).abs()));
        return Err(Error::IncompatibleStructure(d));
    }
    Ok(TwoForm::from_matrix(&psi))
}

/// Components `(dF)_abc = ∂_a F_bc + ∂_b F_ca + ∂_c F_ab` for
/// `abc ∈ {012, 013, 023, 123}`.
pub fn exterior_derivative<const K: usize>(f: &Mat4<Jet<K>>) -> [Jet<K>; 4] {
    const TRIPLES: [(usize, usize, usize); 4] = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
    TRIPLES.map(|(a, b, c)| f[b][c].derivative(a) + f[c][a].derivative(b) + f[a][b].derivative(c))
}
