//! Small dense 4×4 helpers, generic over [`Scalar`] so they run on jets.

use crate::jet::Scalar;

pub type Mat4<S> = [[S; 4]; 4];

pub fn zeros<S: Scalar>() -> Mat4<S> {
    [[S::zero(); 4]; 4]
}

pub fn identity<S: Scalar>() -> Mat4<S> {
    let mut m = zeros();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = S::one();
    }
    m
}

pub fn values<S: Scalar>(m: &Mat4<S>) -> Mat4<f64> {
    std::array::from_fn(|i| std::array::from_fn(|j| m[i][j].value()))
}

pub fn map<S: Scalar, T: Scalar>(m: &Mat4<S>, f: impl Fn(&S) -> T) -> Mat4<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| f(&m[i][j])))
}

pub fn add<S: Scalar>(a: &Mat4<S>, b: &Mat4<S>) -> Mat4<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j] + b[i][j]))
}

pub fn sub<S: Scalar>(a: &Mat4<S>, b: &Mat4<S>) -> Mat4<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j] - b[i][j]))
}

pub fn scale<S: Scalar>(a: &Mat4<S>, k: S) -> Mat4<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j] * k))
}

pub fn matmul<S: Scalar>(a: &Mat4<S>, b: &Mat4<S>) -> Mat4<S> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = a[i][0] * b[0][j];
            for k in 1..4 {
                s += a[i][k] * b[k][j];
            }
            s
        })
    })
}

pub fn transpose<S: Scalar>(a: &Mat4<S>) -> Mat4<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i]))
}

/// Inverse by Gauss–Jordan elimination without pivoting; intended for
/// positive-definite matrices.
pub fn inverse<S: Scalar>(m: &Mat4<S>) -> Mat4<S> {
    let mut a = *m;
    let mut inv = identity::<S>();
    for col in 0..4 {
        let piv = a[col][col].recip();
        for k in 0..4 {
            a[col][k] *= piv;
            inv[col][k] *= piv;
        }
        for row in 0..4 {
            if row == col {
                continue;
            }
            let f = a[row][col];
            for k in 0..4 {
                let ak = a[col][k];
                let ik = inv[col][k];
                a[row][k] -= f * ak;
                inv[row][k] -= f * ik;
            }
        }
    }
    inv
}

pub fn determinant<S: Scalar>(m: &Mat4<S>) -> S {
    let det3 = |r: [usize; 3], c: [usize; 3]| {
        m[r[0]][c[0]] * (m[r[1]][c[1]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[1]])
            - m[r[0]][c[1]] * (m[r[1]][c[0]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[0]])
            + m[r[0]][c[2]] * (m[r[1]][c[0]] * m[r[2]][c[1]] - m[r[1]][c[1]] * m[r[2]][c[0]])
    };
    let mut det = S::zero();
    for j in 0..4 {
        let cols: Vec<usize> = (0..4).filter(|&c| c != j).collect();
        let minor = det3([1, 2, 3], [cols[0], cols[1], cols[2]]);
        let term = m[0][j] * minor;
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// `g^{ia} T_ab g^{bj}`.
pub fn raise_both<S: Scalar>(t: &Mat4<S>, ginv: &Mat4<S>) -> Mat4<S> {
    matmul(&matmul(ginv, t), ginv)
}

/// `tr_g T = g^{ab} T_ab`.
pub fn trace<S: Scalar>(t: &Mat4<S>, ginv: &Mat4<S>) -> S {
    let mut s = S::zero();
    for a in 0..4 {
        for b in 0..4 {
            s += ginv[a][b] * t[a][b];
        }
    }
    s
}

/// `⟨A, B⟩_g = g^{ia} g^{jb} A_ij B_ab`.
pub fn inner<S: Scalar>(a: &Mat4<S>, b: &Mat4<S>, ginv: &Mat4<S>) -> S {
    let up = raise_both(b, ginv);
    let mut s = S::zero();
    for i in 0..4 {
        for j in 0..4 {
            s += a[i][j] * up[i][j];
        }
    }
    s
}

pub fn norm(a: &Mat4<f64>, ginv: &Mat4<f64>) -> f64 {
    inner(a, a, ginv).max(0.0).sqrt()
}

pub fn max_abs(a: &Mat4<f64>) -> f64 {
    a.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

/// Smallest eigenvalue of a symmetric matrix by Jacobi rotations.
pub fn min_eigenvalue(m: &Mat4<f64>) -> f64 {
    let mut a = *m;
    for _ in 0..64 {
        let mut off = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    off += a[i][j] * a[i][j];
                }
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..4 {
            for q in p + 1..4 {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..4 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..4 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..4).map(|i| a[i][i]).fold(f64::INFINITY, f64::min)
}
