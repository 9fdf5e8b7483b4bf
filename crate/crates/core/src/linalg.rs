//! Dense real linear algebra at desk scale: symmetric matrices, cyclic
//! Jacobi diagonalization, Gram-Schmidt and pivoted elimination.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("Jacobi iteration did not converge in {sweeps} sweeps (off-diagonal norm {off:e})")]
    NotConverged { sweeps: usize, off: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
}

/// Dense symmetric matrix stored row-major in full.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Accepts square row data without checking symmetry; callers validate.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(LinalgError::Dimension {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set_sym(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    #[inline]
    pub(crate) fn set_raw(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| dot(self.row(i), x)).collect()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// `(x, A y)`.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        dot(x, &self.mul_vec(y))
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    let a = self.get(i, j);
                    s += a * a;
                }
            }
        }
        s.sqrt()
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub const JACOBI_MAX_SWEEPS: usize = 100;
pub const JACOBI_REL_THRESHOLD: f64 = 1e-12;

/// Unordered eigenpairs from cyclic Jacobi rotations. Converged when the
/// off-diagonal Frobenius norm drops to `1e-12 * ||A||_F`.
///
/// Returns `(eigenvalues, eigenvectors)` with `eigenvectors[k]` paired with
/// `eigenvalues[k]`.
pub fn jacobi_eigen(a: &SymMatrix) -> Result<(Vec<f64>, Vec<Vec<f64>>), LinalgError> {
    let n = a.dim();
    let mut m = a.clone();
    // v[r * n + k]: component r of eigenvector k.
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let threshold = JACOBI_REL_THRESHOLD * a.norm_frobenius();
    let mut sweeps = 0;
    loop {
        let off = m.off_diagonal_norm();
        if off <= threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(LinalgError::NotConverged { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = m.get(p, p);
                let aqq = m.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.is_infinite() {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                m.set_raw(p, p, app - t * apq);
                m.set_raw(q, q, aqq + t * apq);
                m.set_sym(p, q, 0.0);
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = m.get(r, p);
                    let arq = m.get(r, q);
                    m.set_sym(r, p, c * arp - s * arq);
                    m.set_sym(r, q, s * arp + c * arq);
                }
                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = c * vrp - s * vrq;
                    v[r * n + q] = s * vrp + c * vrq;
                }
            }
        }
    }
    let values = (0..n).map(|i| m.get(i, i)).collect();
    let vectors = (0..n)
        .map(|k| (0..n).map(|r| v[r * n + k]).collect())
        .collect();
    Ok((values, vectors))
}

/// Modified Gram-Schmidt in input order. Vectors whose remaining norm falls
/// below `drop_tol` times their original norm are discarded.
pub fn modified_gram_schmidt(vectors: &[Vec<f64>], drop_tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let original = norm2(v);
        if original == 0.0 {
            continue;
        }
        let mut w = v.clone();
        for b in &basis {
            let proj = dot(&w, b);
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= proj * bi;
            }
        }
        let len = norm2(&w);
        if len > drop_tol * original {
            for wi in &mut w {
                *wi /= len;
            }
            basis.push(w);
        }
    }
    basis
}

/// Reduced row echelon form with partial pivoting.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
    pub cols: usize,
    reduced: Vec<Vec<f64>>,
}

/// Column-by-column elimination; a pivot is accepted when its magnitude
/// exceeds `rel_tol` times the largest absolute entry of the input.
pub fn echelon(rows: &[Vec<f64>], cols: usize, rel_tol: f64) -> Echelon {
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, x| m.max(x.abs()));
    let tol = rel_tol * scale;
    let mut pivot_columns = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == a.len() {
            break;
        }
        let (best, mag) = (row..a.len())
            .map(|r| (r, a[r][col].abs()))
            .fold((row, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if !(mag > tol) {
            for r in row..a.len() {
                a[r][col] = 0.0;
            }
            continue;
        }
        a.swap(row, best);
        let inv = 1.0 / a[row][col];
        for x in a[row].iter_mut() {
            *x *= inv;
        }
        let pivot_row = a[row].clone();
        for (r, other) in a.iter_mut().enumerate() {
            if r == row {
                continue;
            }
            let f = other[col];
            if f != 0.0 {
                for (x, p) in other.iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
            }
        }
        pivot_columns.push(col);
        row += 1;
    }
    Echelon {
        rank: pivot_columns.len(),
        pivot_columns,
        cols,
        reduced: a,
    }
}

impl Echelon {
    /// One vector per free column, in column order (not orthonormalized).
    pub fn null_space(&self) -> Vec<Vec<f64>> {
        let mut is_pivot = vec![false; self.cols];
        for &c in &self.pivot_columns {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![0.0; self.cols];
                x[free] = 1.0;
                for (k, &pc) in self.pivot_columns.iter().enumerate() {
                    x[pc] = -self.reduced[k][free];
                }
                x
            })
            .collect()
    }
}
