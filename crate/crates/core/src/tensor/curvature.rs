use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::jet::{Jet, Jet1, Jet2, Scalar};
use crate::linalg::{self, Mat4};
use crate::tensor::forms::Orientation;

/// A fully covariant rank-4 tensor at a point, stored densely.
#[derive(Clone, Debug, PartialEq)]
pub struct Rank4 {
    pub c: [f64; 256],
}

#[inline]
pub const fn idx(a: usize, b: usize, c: usize, d: usize) -> usize {
    ((a * 4 + b) * 4 + c) * 4 + d
}

impl Default for Rank4 {
    fn default() -> Self {
        Self { c: [0.0; 256] }
    }
}

impl Rank4 {
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        self.c[idx(a, b, c, d)]
    }

    pub fn from_fn(f: impl Fn(usize, usize, usize, usize) -> f64) -> Self {
        let mut r = Self::default();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        r.c[idx(a, b, c, d)] = f(a, b, c, d);
                    }
                }
            }
        }
        r
    }

    /// All four indices raised with `ginv`.
    pub fn raise_all(&self, ginv: &Mat4<f64>) -> Rank4 {
        let mut t = self.clone();
        for slot in 0..4 {
            let mut next = Rank4::default();
            for i in 0..256 {
                let mut ix = [i >> 6, (i >> 4) & 3, (i >> 2) & 3, i & 3];
                let target = ix[slot];
                let mut s = 0.0;
                for e in 0..4 {
                    ix[slot] = e;
                    s += ginv[target][e] * t.c[idx(ix[0], ix[1], ix[2], ix[3])];
                }
                next.c[i] = s;
            }
            t = next;
        }
        t
    }

    /// Full contraction `T_abcd U^abcd`, for `upper` already raised.
    pub fn contract(&self, upper: &Rank4) -> f64 {
        self.c.iter().zip(upper.c.iter()).map(|(a, b)| a * b).sum()
    }

    /// `¼ T_abcd T^abcd`: the squared operator norm on 2-forms.
    pub fn norm_sq(&self, ginv: &Mat4<f64>) -> f64 {
        0.25 * self.contract(&self.raise_all(ginv))
    }

    /// Trace `g^{ac} T_abcd` over the first and third slots.
    pub fn ricci_contraction(&self, ginv: &Mat4<f64>) -> Mat4<f64> {
        std::array::from_fn(|b| {
            std::array::from_fn(|d| {
                let mut s = 0.0;
                for a in 0..4 {
                    for c in 0..4 {
                        s += ginv[a][c] * self.get(a, b, c, d);
                    }
                }
                s
            })
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Flat row-major component list.
    pub fn to_flat(&self) -> Vec<f64> {
        self.c.to_vec()
    }
}

/// The Levi-Civita volume tensor `ε_abcd` of `g`.
pub fn volume_tensor(g: &Mat4<f64>, orientation: Orientation) -> Rank4 {
    let vol = linalg::determinant(g).sqrt() * orientation.sign();
    Rank4::from_fn(|a, b, c, d| permutation_sign([a, b, c, d]) * vol)
}

pub(crate) fn permutation_sign(p: [usize; 4]) -> f64 {
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] == p[j] {
                return 0.0;
            }
        }
    }
    let mut inversions = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Hodge star on the first index pair: `(*T)_abcd = ½ ε_ab^{ef} T_efcd`.
pub fn hodge_left(t: &Rank4, g: &Mat4<f64>, ginv: &Mat4<f64>, orientation: Orientation) -> Rank4 {
    let eps = volume_tensor(g, orientation);
    // ε_ab^{ef}
    let mut mixed = Rank4::default();
    for a in 0..4 {
        for b in 0..4 {
            for e in 0..4 {
                for f in 0..4 {
                    let mut s = 0.0;
                    for p in 0..4 {
                        for q in 0..4 {
                            s += eps.get(a, b, p, q) * ginv[p][e] * ginv[q][f];
                        }
                    }
                    mixed.c[idx(a, b, e, f)] = s;
                }
            }
        }
    }
    Rank4::from_fn(|a, b, c, d| {
        let mut s = 0.0;
        for e in 0..4 {
            for f in 0..4 {
                s += mixed.get(a, b, e, f) * t.get(e, f, c, d);
            }
        }
        0.5 * s
    })
}

/// `(W⁺, W⁻) = ½(W ± *W)`.
pub fn self_dual_parts(w: &Rank4, g: &Mat4<f64>, ginv: &Mat4<f64>) -> (Rank4, Rank4) {
    let star = hodge_left(w, g, ginv, Orientation::Positive);
    let plus = Rank4::from_fn(|a, b, c, d| 0.5 * (w.get(a, b, c, d) + star.get(a, b, c, d)));
    let minus = Rank4::from_fn(|a, b, c, d| 0.5 * (w.get(a, b, c, d) - star.get(a, b, c, d)));
    (plus, minus)
}

/// Weyl tensor from Riemann, Ricci, scalar and metric (any scalar type).
fn weyl_from<S: Scalar>(riemann: &[S], ricci: &Mat4<S>, scalar: S, g: &Mat4<S>) -> Vec<S> {
    let p: Mat4<S> = std::array::from_fn(|a| std::array::from_fn(|b| (ricci[a][b] - g[a][b] * scalar.scale(1.0 / 6.0)).scale(0.5)));
    let mut w = vec![S::zero(); 256];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let kn = p[a][c] * g[b][d] + p[b][d] * g[a][c] - p[a][d] * g[b][c] - p[b][c] * g[a][d];
                    w[idx(a, b, c, d)] = riemann[idx(a, b, c, d)] - kn;
                }
            }
        }
    }
    w
}

/// Curvature of a metric given as Taylor jets; each layer loses one or two
/// orders of the metric jet.
#[derive(Clone, Debug)]
pub struct CurvatureJets<const K: usize> {
    pub order: usize,
    pub metric: Mat4<Jet<K>>,
    pub inverse: Mat4<Jet<K>>,
    /// `Γ^k_ij` stored at `[k][i][j]`.
    pub christoffel: Vec<[[Jet<K>; 4]; 4]>,
    /// `R_abcd`, indexed by [`idx`].
    pub riemann: Vec<Jet<K>>,
    pub ricci: Mat4<Jet<K>>,
    pub scalar: Jet<K>,
}

impl<const K: usize> CurvatureJets<K> {
    /// Builds the curvature jets; the metric must carry at least second derivatives.
    pub fn from_metric(metric: Mat4<Jet<K>>) -> Self {
        let order = metric.iter().flatten().map(|v| v.order()).min().unwrap_or(0);
        assert!(order >= 2, "curvature needs second derivatives of the metric");
        let inverse = linalg::inverse(&metric);
        let dg: Vec<Mat4<Jet<K>>> = (0..4).map(|l| linalg::map(&metric, |v| v.derivative(l))).collect();
        let inv1 = linalg::map(&inverse, |v| v.truncate(order - 1));
        let mut christoffel = vec![[[Jet::<K>::zero(); 4]; 4]; 4];
        for i in 0..4 {
            for j in i..4 {
                let lowered: [Jet<K>; 4] =
                    std::array::from_fn(|l| (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]).scale(0.5));
                for k in 0..4 {
                    let mut s = inv1[k][0] * lowered[0];
                    for l in 1..4 {
                        s += inv1[k][l] * lowered[l];
                    }
                    christoffel[k][i][j] = s;
                    christoffel[k][j][i] = s;
                }
            }
        }
        let gam = &christoffel;
        let dgam: Vec<Vec<[[Jet<K>; 4]; 4]>> =
            (0..4).map(|c| gam.iter().map(|m| m.map(|row| row.map(|v| v.derivative(c)))).collect()).collect();
        let gam2: Vec<[[Jet<K>; 4]; 4]> = gam.iter().map(|m| m.map(|row| row.map(|v| v.truncate(order - 2)))).collect();

        // R^a_bcd for c < d
        // heap-allocated: 256 order-5 jets would be 256 KiB of stack
        #[allow(clippy::useless_vec)]
        let mut upper = vec![Jet::<K>::zero(); 256];
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in c + 1..4 {
                        let mut s = dgam[c][a][d][b] - dgam[d][a][c][b];
                        for e in 0..4 {
                            s += gam2[a][c][e] * gam2[e][d][b] - gam2[a][d][e] * gam2[e][c][b];
                        }
                        upper[idx(a, b, c, d)] = s;
                        upper[idx(a, b, d, c)] = -s;
                    }
                }
            }
        }
        let g2 = linalg::map(&metric, |v| v.truncate(order - 2));
        let mut riemann = vec![Jet::<K>::zero(); 256];
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in c + 1..4 {
                        let mut s = g2[a][0] * upper[idx(0, b, c, d)];
                        for e in 1..4 {
                            s += g2[a][e] * upper[idx(e, b, c, d)];
                        }
                        riemann[idx(a, b, c, d)] = s;
                        riemann[idx(a, b, d, c)] = -s;
                    }
                }
            }
        }
        let ricci: Mat4<Jet<K>> = std::array::from_fn(|b| {
            std::array::from_fn(|d| {
                let mut s = upper[idx(0, b, 0, d)];
                for a in 1..4 {
                    s += upper[idx(a, b, a, d)];
                }
                s
            })
        });
        let inv2 = linalg::map(&inverse, |v| v.truncate(order - 2));
        let scalar = linalg::trace(&ricci, &inv2);
        Self { order, metric, inverse, christoffel, riemann, ricci, scalar }
    }

    /// Weyl tensor jets, re-homed in capacity `K2`.
    pub fn weyl_jets<const K2: usize>(&self) -> Vec<Jet<K2>> {
        let rm: Vec<Jet<K2>> = self.riemann.iter().map(|v| v.resize()).collect();
        let ric = linalg::map(&self.ricci, |v| v.resize::<K2>());
        let g = linalg::map(&self.metric, |v| v.resize::<K2>());
        weyl_from(&rm, &ric, self.scalar.resize(), &g)
    }

    pub fn metric_values(&self) -> Mat4<f64> {
        linalg::values(&self.metric)
    }

    pub fn inverse_values(&self) -> Mat4<f64> {
        linalg::values(&self.inverse)
    }

    pub fn riemann_values(&self) -> Rank4 {
        let mut r = Rank4::default();
        for (slot, v) in r.c.iter_mut().zip(&self.riemann) {
            *slot = v.value();
        }
        r
    }

    pub fn ricci_values(&self) -> Mat4<f64> {
        linalg::values(&self.ricci)
    }

    /// Weyl tensor at the base point.
    pub fn weyl_values(&self) -> Rank4 {
        let rm: Vec<f64> = self.riemann.iter().map(|v| v.value()).collect();
        let w = weyl_from(&rm, &self.ricci_values(), self.scalar.value(), &self.metric_values());
        let mut r = Rank4::default();
        r.c.copy_from_slice(&w);
        r
    }

    /// Bach tensor jets `∇^s∇^t W_isjt + ½ Ric^{st} W_isjt`, of order `order − 4`.
    /// `None` when the metric jets carry fewer than four derivatives.
    pub fn bach(&self) -> Option<Mat4<Jet1>> {
        if self.order < 4 {
            return None;
        }
        let o = self.order;
        // Layer 1: C_isj = ∇^t W_isjt, order o − 3, held in Jet2.
        let w3: Vec<Jet<35>> = self.weyl_jets::<35>();
        let dw: Vec<Vec<Jet2>> = (0..4).map(|u| w3.iter().map(|v| v.derivative(u).resize()).collect()).collect();
        let w_c: Vec<Jet2> = w3.iter().map(|v| v.truncate(o - 3).resize()).collect();
        let ginv_c: Mat4<Jet2> = linalg::map(&self.inverse, |v| v.truncate(o - 3).resize());
        let gam_c: Vec<[[Jet2; 4]; 4]> =
            self.christoffel.iter().map(|m| m.map(|row| row.map(|v| v.truncate(o - 3).resize()))).collect();
        let (g_up, gamma) = contracted_connection(&ginv_c, &gam_c);

        let mut c_t = vec![Jet2::zero(); 64];
        for i in 0..4 {
            for s in 0..4 {
                for j in 0..4 {
                    let mut acc = Jet2::zero();
                    for t in 0..4 {
                        for u in 0..4 {
                            acc += ginv_c[t][u] * dw[u][idx(i, s, j, t)];
                        }
                        for e in 0..4 {
                            let gi = g_up[t][e][i];
                            let gs = g_up[t][e][s];
                            let gj = g_up[t][e][j];
                            acc -= gi * w_c[idx(e, s, j, t)] + gs * w_c[idx(i, e, j, t)] + gj * w_c[idx(i, s, e, t)];
                        }
                    }
                    for e in 0..4 {
                        acc -= gamma[e] * w_c[idx(i, s, j, e)];
                    }
                    c_t[(i * 4 + s) * 4 + j] = acc;
                }
            }
        }

        // Layer 2: B_ij = ∇^s C_isj + ½ Ric^{st} W_isjt, order o − 4, in Jet1.
        let cix = |i: usize, s: usize, j: usize| (i * 4 + s) * 4 + j;
        let dc: Vec<Vec<Jet1>> = (0..4).map(|u| c_t.iter().map(|v| v.derivative(u).resize()).collect()).collect();
        let c_b: Vec<Jet1> = c_t.iter().map(|v| v.truncate(o - 4).resize()).collect();
        let ginv_b: Mat4<Jet1> = linalg::map(&self.inverse, |v| v.truncate(o - 4).resize());
        let gam_b: Vec<[[Jet1; 4]; 4]> =
            self.christoffel.iter().map(|m| m.map(|row| row.map(|v| v.truncate(o - 4).resize()))).collect();
        let (g_up, gamma) = contracted_connection(&ginv_b, &gam_b);
        let ric_b: Mat4<Jet1> = linalg::map(&self.ricci, |v| v.truncate(o - 4).resize());
        let ric_up = linalg::raise_both(&ric_b, &ginv_b);
        let w_b: Vec<Jet1> = w3.iter().map(|v| v.truncate(o - 4).resize()).collect();

        let bach = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut acc = Jet1::zero();
                for s in 0..4 {
                    for u in 0..4 {
                        acc += ginv_b[s][u] * dc[u][cix(i, s, j)];
                    }
                    for e in 0..4 {
                        acc -= g_up[s][e][i] * c_b[cix(e, s, j)] + g_up[s][e][j] * c_b[cix(i, s, e)];
                    }
                    for t in 0..4 {
                        acc += (ric_up[s][t] * w_b[idx(i, s, j, t)]).scale(0.5);
                    }
                }
                for e in 0..4 {
                    acc -= gamma[e] * c_b[cix(i, e, j)];
                }
                acc
            })
        });
        Some(bach)
    }

    /// Point values of every layer, through the Bach tensor.
    pub fn stack(&self) -> Result<CurvatureStack> {
        let bach = self.bach().ok_or(Error::UnsupportedOrder(self.order))?;
        let metric = self.metric_values();
        let inverse = self.inverse_values();
        let weyl = self.weyl_values();
        let (weyl_plus, weyl_minus) = self_dual_parts(&weyl, &metric, &inverse);
        Ok(CurvatureStack {
            christoffel: std::array::from_fn(|k| {
                std::array::from_fn(|i| std::array::from_fn(|j| self.christoffel[k][i][j].value()))
            }),
            riemann: self.riemann_values(),
            ricci: self.ricci_values(),
            scalar: self.scalar.value(),
            weyl,
            weyl_plus,
            weyl_minus,
            bach: linalg::values(&bach),
            metric,
            inverse,
        })
    }
}

/// `G^{te}_a = g^{tu} Γ^e_ua` and its trace `γ^e = G^{te}_t`.
#[allow(clippy::type_complexity)]
fn contracted_connection<S: Scalar>(ginv: &Mat4<S>, gam: &[[[S; 4]; 4]]) -> (Vec<[[S; 4]; 4]>, [S; 4]) {
    let mut g_up = vec![[[S::zero(); 4]; 4]; 4];
    for (t, slab) in g_up.iter_mut().enumerate() {
        for (e, row) in slab.iter_mut().enumerate() {
            for (a, slot) in row.iter_mut().enumerate() {
                let mut s = S::zero();
                for u in 0..4 {
                    s += ginv[t][u] * gam[e][u][a];
                }
                *slot = s;
            }
        }
    }
    let gamma = std::array::from_fn(|e| {
        let mut s = S::zero();
        for (t, slab) in g_up.iter().enumerate() {
            s += slab[e][t];
        }
        s
    });
    (g_up, gamma)
}

/// Curvature at a single point, all tensors fully covariant in chart indices.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureStack {
    /// `Γ^k_ij` at `[k][i][j]`.
    pub christoffel: [[[f64; 4]; 4]; 4],
    pub riemann: Rank4,
    pub ricci: Mat4<f64>,
    pub scalar: f64,
    pub weyl: Rank4,
    pub weyl_plus: Rank4,
    pub weyl_minus: Rank4,
    pub bach: Mat4<f64>,
    pub metric: Mat4<f64>,
    pub inverse: Mat4<f64>,
}

impl CurvatureStack {
    pub fn trace_free_ricci(&self) -> Mat4<f64> {
        std::array::from_fn(|a| std::array::from_fn(|b| self.ricci[a][b] - self.scalar / 4.0 * self.metric[a][b]))
    }

    /// `|W|²` in the operator normalization.
    pub fn weyl_norm_sq(&self) -> f64 {
        self.weyl.norm_sq(&self.inverse)
    }

    pub fn weyl_plus_norm_sq(&self) -> f64 {
        self.weyl_plus.norm_sq(&self.inverse)
    }

    pub fn bach_norm(&self) -> f64 {
        linalg::norm(&self.bach, &self.inverse)
    }

    /// `|Rm|²` with the same normalization as the Weyl norm.
    pub fn riemann_norm_sq(&self) -> f64 {
        self.riemann.norm_sq(&self.inverse)
    }

    /// Debug dump: every tensor as a flat row-major array, covariant chart
    /// indices (the Christoffel symbols as `Γ^k_ij` at `[k][i][j]`).
    pub fn to_json(&self) -> Value {
        let flat2 = |m: &Mat4<f64>| m.iter().flatten().copied().collect::<Vec<f64>>();
        let gamma: Vec<f64> = self.christoffel.iter().flatten().flatten().copied().collect();
        json!({
            "metric": flat2(&self.metric),
            "christoffel": gamma,
            "riemann": self.riemann.to_flat(),
            "ricci": flat2(&self.ricci),
            "scalar": self.scalar,
            "weyl": self.weyl.to_flat(),
            "weyl_plus": self.weyl_plus.to_flat(),
            "weyl_minus": self.weyl_minus.to_flat(),
            "bach": flat2(&self.bach),
        })
    }
}

/// The Kähler expression `(1/12)(s·r̊ + 2·Hess₀ s)`; both tensors must be
/// trace-free for the metric with inverse `ginv`.
pub fn bach_kahler_formula(s: f64, ricci0: &Mat4<f64>, hess0_s: &Mat4<f64>, ginv: &Mat4<f64>) -> Result<Mat4<f64>> {
    for t in [ricci0, hess0_s] {
        let tr = linalg::trace(t, ginv);
        if tr.abs() > 1e-9 * linalg::norm(t, ginv).max(1e-300) {
            return Err(Error::NotTraceFree(tr));
        }
    }
    Ok(std::array::from_fn(|a| std::array::from_fn(|b| (s * ricci0[a][b] + 2.0 * hess0_s[a][b]) / 12.0)))
}
