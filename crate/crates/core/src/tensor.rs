//! Second-order tensors in three dimensions.
//!
//! [`SymTensor3`] stores the six independent components of a symmetric tensor
//! and is used for every configuration tensor, rate and stress in the crate.
//! [`Tensor3`] is a full 3×3 array for velocity gradients and the
//! non-symmetric products that appear inside the evolution equations.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use thiserror::Error;

/// Eigenvalues at or below this value mark a tensor as not positive definite.
pub const SPD_THRESHOLD: f64 = 1e-12;

/// Determinants at or below this magnitude mark a tensor as singular.
pub const SINGULAR_THRESHOLD: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum TensorError {
    #[error("tensor is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotSpd { min_eigenvalue: f64 },
    #[error("tensor is singular (determinant {det:e})")]
    Singular { det: f64 },
}

/// Symmetric 3×3 tensor stored as `(a11, a22, a33, a12, a13, a23)`.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct SymTensor3 {
    c: [f64; 6],
}

impl SymTensor3 {
    pub const ZERO: SymTensor3 = SymTensor3 { c: [0.0; 6] };
    pub const IDENTITY: SymTensor3 = SymTensor3 {
        c: [1.0, 1.0, 1.0, 0.0, 0.0, 0.0],
    };

    pub const fn new(a11: f64, a22: f64, a33: f64, a12: f64, a13: f64, a23: f64) -> Self {
        SymTensor3 {
            c: [a11, a22, a33, a12, a13, a23],
        }
    }

    pub const fn diag(a11: f64, a22: f64, a33: f64) -> Self {
        SymTensor3::new(a11, a22, a33, 0.0, 0.0, 0.0)
    }

    /// Components in storage order `(a11, a22, a33, a12, a13, a23)`.
    pub const fn from_components(c: [f64; 6]) -> Self {
        SymTensor3 { c }
    }

    pub const fn components(&self) -> [f64; 6] {
        self.c
    }

    /// Symmetric part `(a + aᵀ)/2` of a full tensor.
    pub fn sym_part(a: &Tensor3) -> Self {
        let m = &a.m;
        SymTensor3::new(
            m[0][0],
            m[1][1],
            m[2][2],
            0.5 * (m[0][1] + m[1][0]),
            0.5 * (m[0][2] + m[2][0]),
            0.5 * (m[1][2] + m[2][1]),
        )
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.c[Self::slot(i, j)]
    }

    fn slot(i: usize, j: usize) -> usize {
        match (i, j) {
            (0, 0) => 0,
            (1, 1) => 1,
            (2, 2) => 2,
            (0, 1) | (1, 0) => 3,
            (0, 2) | (2, 0) => 4,
            (1, 2) | (2, 1) => 5,
            _ => panic!("tensor index ({i}, {j}) out of range"),
        }
    }

    pub fn trace(&self) -> f64 {
        self.c[0] + self.c[1] + self.c[2]
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> f64 {
        let [a, d, f, b, c, e] = self.c;
        a * (d * f - e * e) - b * (b * f - e * c) + c * (b * e - d * c)
    }

    /// Full contraction `a : b`.
    pub fn ddot(&self, other: &SymTensor3) -> f64 {
        let a = &self.c;
        let b = &other.c;
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + 2.0 * (a[3] * b[3] + a[4] * b[4] + a[5] * b[5])
    }

    pub fn norm(&self) -> f64 {
        self.ddot(self).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|x| x.is_finite())
    }

    pub fn to_full(&self) -> Tensor3 {
        let [a11, a22, a33, a12, a13, a23] = self.c;
        Tensor3::from_rows([[a11, a12, a13], [a12, a22, a23], [a13, a23, a33]])
    }

    /// `q · a · qᵀ`, symmetrized.
    pub fn rotate(&self, q: &Tensor3) -> SymTensor3 {
        SymTensor3::sym_part(&(q * &self.to_full() * q.transpose()))
    }
}

impl fmt::Debug for SymTensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a11, a22, a33, a12, a13, a23] = self.c;
        write!(
            f,
            "Sym[[{a11:e}, {a12:e}, {a13:e}], [{a12:e}, {a22:e}, {a23:e}], [{a13:e}, {a23:e}, {a33:e}]]"
        )
    }
}

impl Index<(usize, usize)> for SymTensor3 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.c[Self::slot(i, j)]
    }
}

impl Add for SymTensor3 {
    type Output = SymTensor3;
    fn add(self, rhs: SymTensor3) -> SymTensor3 {
        SymTensor3 {
            c: std::array::from_fn(|k| self.c[k] + rhs.c[k]),
        }
    }
}

impl AddAssign for SymTensor3 {
    fn add_assign(&mut self, rhs: SymTensor3) {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a += b;
        }
    }
}

impl Sub for SymTensor3 {
    type Output = SymTensor3;
    fn sub(self, rhs: SymTensor3) -> SymTensor3 {
        SymTensor3 {
            c: std::array::from_fn(|k| self.c[k] - rhs.c[k]),
        }
    }
}

impl Neg for SymTensor3 {
    type Output = SymTensor3;
    fn neg(self) -> SymTensor3 {
        self * -1.0
    }
}

impl Mul<f64> for SymTensor3 {
    type Output = SymTensor3;
    fn mul(self, s: f64) -> SymTensor3 {
        SymTensor3 {
            c: self.c.map(|x| x * s),
        }
    }
}

impl Mul<SymTensor3> for f64 {
    type Output = SymTensor3;
    fn mul(self, a: SymTensor3) -> SymTensor3 {
        a * self
    }
}

/// Full 3×3 tensor in row-major order.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Tensor3 {
    m: [[f64; 3]; 3],
}

impl Tensor3 {
    pub const ZERO: Tensor3 = Tensor3 { m: [[0.0; 3]; 3] };
    pub const IDENTITY: Tensor3 = Tensor3 {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    pub const fn from_rows(m: [[f64; 3]; 3]) -> Self {
        Tensor3 { m }
    }

    pub const fn rows(&self) -> [[f64; 3]; 3] {
        self.m
    }

    pub fn diag(a11: f64, a22: f64, a33: f64) -> Self {
        let mut m = [[0.0; 3]; 3];
        m[0][0] = a11;
        m[1][1] = a22;
        m[2][2] = a33;
        Tensor3 { m }
    }

    /// Tensor whose only nonzero entry is `value` at `(i, j)`.
    pub fn single(i: usize, j: usize, value: f64) -> Self {
        let mut m = [[0.0; 3]; 3];
        m[i][j] = value;
        Tensor3 { m }
    }

    pub fn transpose(&self) -> Tensor3 {
        Tensor3 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[j][i])),
        }
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn norm(&self) -> f64 {
        self.m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|x| x.is_finite())
    }

    /// Inverse via the adjugate.
    pub fn inverse(&self) -> Result<Tensor3, TensorError> {
        let det = self.det();
        if det.is_nan() || det.abs() <= SINGULAR_THRESHOLD {
            return Err(TensorError::Singular { det });
        }
        let m = &self.m;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
            m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
        };
        let adj = [
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ];
        Ok(Tensor3 {
            m: adj.map(|row| row.map(|x| x / det)),
        })
    }
}

impl fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor3{:?}", self.m)
    }
}

impl Index<(usize, usize)> for Tensor3 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.m[i][j]
    }
}

impl Add for Tensor3 {
    type Output = Tensor3;
    fn add(self, rhs: Tensor3) -> Tensor3 {
        Tensor3 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[i][j] + rhs.m[i][j])),
        }
    }
}

impl Sub for Tensor3 {
    type Output = Tensor3;
    fn sub(self, rhs: Tensor3) -> Tensor3 {
        Tensor3 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[i][j] - rhs.m[i][j])),
        }
    }
}

impl Mul<f64> for Tensor3 {
    type Output = Tensor3;
    fn mul(self, s: f64) -> Tensor3 {
        Tensor3 {
            m: self.m.map(|row| row.map(|x| x * s)),
        }
    }
}

fn matmul(a: &Tensor3, b: &Tensor3) -> Tensor3 {
    Tensor3 {
        m: std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).map(|k| a.m[i][k] * b.m[k][j]).sum())
        }),
    }
}

impl Mul for &Tensor3 {
    type Output = Tensor3;
    fn mul(self, rhs: &Tensor3) -> Tensor3 {
        matmul(self, rhs)
    }
}

impl Mul<&Tensor3> for Tensor3 {
    type Output = Tensor3;
    fn mul(self, rhs: &Tensor3) -> Tensor3 {
        matmul(&self, rhs)
    }
}

impl Mul for Tensor3 {
    type Output = Tensor3;
    fn mul(self, rhs: Tensor3) -> Tensor3 {
        matmul(&self, &rhs)
    }
}

/// Eigenvalues and orthonormal eigenvectors (as columns of `vectors`).
#[derive(Debug, Clone, Copy)]
pub struct SymEigen {
    pub values: [f64; 3],
    pub vectors: Tensor3,
}

impl SymEigen {
    /// Rebuild `Q f(Λ) Qᵀ` for a scalar function applied to the eigenvalues.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> SymTensor3 {
        let q = &self.vectors.m;
        let g = self.values.map(f);
        let entry = |i: usize, j: usize| (0..3).map(|k| q[i][k] * g[k] * q[j][k]).sum::<f64>();
        SymTensor3::new(
            entry(0, 0),
            entry(1, 1),
            entry(2, 2),
            entry(0, 1),
            entry(0, 2),
            entry(1, 2),
        )
    }
}

/// Cyclic Jacobi eigendecomposition of a symmetric 3×3 tensor.
pub fn sym_eigen(a: &SymTensor3) -> SymEigen {
    let mut m = a.to_full().m;
    let mut v = Tensor3::IDENTITY.m;
    let scale = a.norm();
    if scale == 0.0 {
        return SymEigen {
            values: [0.0; 3],
            vectors: Tensor3::IDENTITY,
        };
    }

    for _sweep in 0..50 {
        let off = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for &(p, q) in &[(0usize, 1usize), (0, 2), (1, 2)] {
            let apq = m[p][q];
            if apq == 0.0 {
                continue;
            }
            let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;

            // m <- Jᵀ m J with J the rotation in the (p, q) plane
            for row in m.iter_mut() {
                let (mkp, mkq) = (row[p], row[q]);
                row[p] = c * mkp - s * mkq;
                row[q] = s * mkp + c * mkq;
            }
            let (row_p, row_q) = (m[p], m[q]);
            m[p] = std::array::from_fn(|k| c * row_p[k] - s * row_q[k]);
            m[q] = std::array::from_fn(|k| s * row_p[k] + c * row_q[k]);
            m[p][q] = 0.0;
            m[q][p] = 0.0;
            for row in v.iter_mut() {
                let vp = row[p];
                let vq = row[q];
                row[p] = c * vp - s * vq;
                row[q] = s * vp + c * vq;
            }
        }
    }

    SymEigen {
        values: [m[0][0], m[1][1], m[2][2]],
        vectors: Tensor3 { m: v },
    }
}

/// Unique symmetric positive definite square root.
pub fn spd_sqrt(a: &SymTensor3) -> Result<SymTensor3, TensorError> {
    spd_sqrt_with_inverse(a).map(|(v, _)| v)
}

/// Square root `V` of an SPD tensor together with `V⁻¹`, from one eigendecomposition.
pub fn spd_sqrt_with_inverse(a: &SymTensor3) -> Result<(SymTensor3, SymTensor3), TensorError> {
    let eig = sym_eigen(a);
    let min_eigenvalue = eig.values.iter().copied().fold(f64::INFINITY, f64::min);
    if min_eigenvalue.is_nan() || min_eigenvalue <= SPD_THRESHOLD || !a.is_finite() {
        return Err(TensorError::NotSpd { min_eigenvalue });
    }
    Ok((eig.map(f64::sqrt), eig.map(|x| 1.0 / x.sqrt())))
}

/// Deviatoric part `a − (tr a / 3) I`.
pub fn dev(a: &SymTensor3) -> SymTensor3 {
    let p = a.trace() / 3.0;
    let [a11, a22, a33, a12, a13, a23] = a.c;
    SymTensor3::new(a11 - p, a22 - p, a33 - p, a12, a13, a23)
}

/// `(trace, determinant, Frobenius norm)`.
pub fn invariants_of(a: &SymTensor3) -> (f64, f64, f64) {
    (a.trace(), a.det(), a.norm())
}

pub fn inverse(a: &Tensor3) -> Result<Tensor3, TensorError> {
    a.inverse()
}

/// `lam · a + a · lamᵀ`. The Oldroyd rate of `a` under `lam` is `ȧ − convect(a, lam)`.
pub fn convect(a: &SymTensor3, lam: &Tensor3) -> SymTensor3 {
    let m = lam * &a.to_full();
    SymTensor3::new(
        2.0 * m.m[0][0],
        2.0 * m.m[1][1],
        2.0 * m.m[2][2],
        m.m[0][1] + m.m[1][0],
        m.m[0][2] + m.m[2][0],
        m.m[1][2] + m.m[2][1],
    )
}

/// Symmetric congruence `v · d · v` for symmetric `v`, symmetrized.
pub fn congruence(v: &SymTensor3, d: &SymTensor3) -> SymTensor3 {
    let vf = v.to_full();
    SymTensor3::sym_part(&(vf * d.to_full() * vf))
}

/// Similarity `a · d · b` as a full tensor.
pub fn sandwich(a: &SymTensor3, d: &SymTensor3, b: &SymTensor3) -> Tensor3 {
    a.to_full() * d.to_full() * b.to_full()
}
