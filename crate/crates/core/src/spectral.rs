//! Schrödinger operators on graphs and their full eigendecomposition.
//!
//! An operator is a symmetric matrix with strictly negative entries on edges,
//! zeros on non-edges and an arbitrary diagonal. Eigenvalues are indexed from
//! 1 in ascending order and clustered into multiplicity groups by a relative
//! gap threshold.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::linalg::{self, dot, norm_inf, LinalgError, SymMatrix};

pub const DEFAULT_TOL_EIG: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("operator is {found}x{found}, graph has {expected} vertices")]
    Dimension { expected: usize, found: usize },
    #[error("matrix is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("entry ({0}, {1}) on an edge is zero")]
    ZeroOnEdge(usize, usize),
    #[error("entry ({0}, {1}) on an edge is positive")]
    PositiveOnEdge(usize, usize),
    #[error("entry ({0}, {1}) off the edge set is nonzero")]
    NonzeroOffEdge(usize, usize),
    #[error("eigenvalue index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("index {index} lies inside a multiplicity group; its head is {head}")]
    InsideGroup { index: usize, head: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchrodingerOperator {
    graph: Graph,
    matrix: SymMatrix,
}

impl SchrodingerOperator {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    #[inline]
    pub fn entry(&self, x: usize, y: usize) -> f64 {
        self.matrix.get(x, y)
    }

    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        self.matrix.mul_vec(f)
    }

    /// Replaces the diagonal; the sign pattern is unaffected.
    pub fn with_potential(mut self, potential: &[f64]) -> Result<Self, SpectralError> {
        if potential.len() != self.dim() {
            return Err(SpectralError::Dimension {
                expected: self.dim(),
                found: potential.len(),
            });
        }
        for (i, &p) in potential.iter().enumerate() {
            self.matrix.set_sym(i, i, p);
        }
        Ok(self)
    }

    /// Laplacian plus a diagonal shift `potential(x)`.
    pub fn shifted(self, potential: &[f64]) -> Result<Self, SpectralError> {
        if potential.len() != self.dim() {
            return Err(SpectralError::Dimension {
                expected: self.dim(),
                found: potential.len(),
            });
        }
        let summed: Vec<f64> = (0..self.dim())
            .map(|i| self.entry(i, i) + potential[i])
            .collect();
        self.with_potential(&summed)
    }

    /// Parses `n` followed by `n` rows of `n` decimals, validated against `g`.
    pub fn parse(g: &Graph, text: &str) -> Result<Self, SpectralError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, header) = lines.next().ok_or(SpectralError::Parse {
            line: 1,
            message: "missing dimension header".into(),
        })?;
        let n: usize = header.parse().map_err(|_| SpectralError::Parse {
            line,
            message: format!("bad dimension {header:?}"),
        })?;
        let mut rows = Vec::with_capacity(n);
        for (line, content) in lines {
            if rows.len() == n {
                return Err(SpectralError::Parse {
                    line,
                    message: format!("more than {n} rows"),
                });
            }
            let row = content
                .split_whitespace()
                .map(|x| {
                    x.parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or(SpectralError::Parse {
                            line,
                            message: format!("bad entry {x:?}"),
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != n {
                return Err(SpectralError::Parse {
                    line,
                    message: format!("expected {n} entries, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(SpectralError::Parse {
                line: text.lines().count().max(1),
                message: format!("expected {n} rows, found {}", rows.len()),
            });
        }
        validate_operator(g, SymMatrix::from_rows(&rows)?)
    }

    pub fn to_text(&self) -> String {
        let n = self.dim();
        let mut out = format!("{n}\n");
        for i in 0..n {
            let row: Vec<String> = self
                .matrix
                .row(i)
                .iter()
                .map(|x| format!("{x:?}"))
                .collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

/// Combinatorial Laplacian: degree on the diagonal, -1 on edges.
pub fn laplacian_of(g: &Graph) -> SchrodingerOperator {
    let n = g.vertex_count();
    let mut matrix = SymMatrix::zeros(n);
    for v in 0..n {
        matrix.set_sym(v, v, g.degree(v) as f64);
        for &w in g.neighbors(v) {
            matrix.set_sym(v, w, -1.0);
        }
    }
    SchrodingerOperator {
        graph: g.clone(),
        matrix,
    }
}

pub fn validate_operator(
    g: &Graph,
    matrix: SymMatrix,
) -> Result<SchrodingerOperator, SpectralError> {
    let n = g.vertex_count();
    if matrix.dim() != n {
        return Err(SpectralError::Dimension {
            expected: n,
            found: matrix.dim(),
        });
    }
    for x in 0..n {
        if !matrix.get(x, x).is_finite() {
            return Err(SpectralError::Parse {
                line: x + 2,
                message: "non-finite diagonal entry".into(),
            });
        }
        for y in x + 1..n {
            let (a, b) = (matrix.get(x, y), matrix.get(y, x));
            if a != b {
                return Err(SpectralError::Asymmetric(x, y));
            }
            if g.has_edge(x, y) {
                if a == 0.0 {
                    return Err(SpectralError::ZeroOnEdge(x, y));
                }
                if !(a < 0.0) {
                    return Err(SpectralError::PositiveOnEdge(x, y));
                }
            } else if a != 0.0 {
                return Err(SpectralError::NonzeroOffEdge(x, y));
            }
        }
    }
    Ok(SchrodingerOperator {
        graph: g.clone(),
        matrix,
    })
}

/// A maximal run of eigenvalues whose consecutive gaps stay within the
/// grouping threshold. `start` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    pub start: usize,
    pub len: usize,
}

impl Group {
    /// 1-based index of the first eigenvalue in the group.
    pub fn head(&self) -> usize {
        self.start + 1
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.len
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` pairs with `eigenvalues[k]`; unit length.
    pub eigenvectors: Vec<Vec<f64>>,
    pub groups: Vec<Group>,
    pub tol_eig: f64,
    pub max_residual: f64,
    pub max_orthogonality_defect: f64,
    pub operator_norm_inf: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenQuery {
    /// 1-based.
    pub index: usize,
    pub lambda: f64,
    pub multiplicity: usize,
    pub basis: Vec<Vec<f64>>,
}

/// First coordinate that is not negligible made positive.
fn normalize_sign(v: &mut [f64]) {
    let scale = norm_inf(v);
    if let Some(&first) = v.iter().find(|x| x.abs() > 1e-9 * scale) {
        if first < 0.0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }
}

pub fn eigendecompose(op: &SchrodingerOperator, tol_eig: f64) -> Result<Spectrum, SpectralError> {
    let (values, vectors) = linalg::jacobi_eigen(op.matrix())?;
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| values[k]).collect();
    let sorted_vectors: Vec<Vec<f64>> = order.iter().map(|&k| vectors[k].clone()).collect();

    let scale = eigenvalues.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let mut groups = Vec::new();
    let mut start = 0;
    for k in 1..=eigenvalues.len() {
        if k == eigenvalues.len() || eigenvalues[k] - eigenvalues[k - 1] > tol_eig * scale {
            groups.push(Group {
                start,
                len: k - start,
            });
            start = k;
        }
    }

    let mut eigenvectors = Vec::with_capacity(sorted_vectors.len());
    for group in &groups {
        let block = &sorted_vectors[group.indices()];
        let mut basis = linalg::modified_gram_schmidt(block, 1e-6);
        debug_assert_eq!(basis.len(), block.len());
        for v in &mut basis {
            normalize_sign(v);
        }
        eigenvectors.extend(basis);
    }

    let norm = op.matrix().norm_inf();
    let mut max_residual = 0.0f64;
    for (lambda, v) in eigenvalues.iter().zip(&eigenvectors) {
        let mv = op.apply(v);
        let r = mv
            .iter()
            .zip(v)
            .fold(0.0f64, |m, (a, b)| m.max((a - lambda * b).abs()));
        max_residual = max_residual.max(r);
    }
    let mut max_orth = 0.0f64;
    for i in 0..eigenvectors.len() {
        max_orth = max_orth.max((dot(&eigenvectors[i], &eigenvectors[i]) - 1.0).abs());
        for j in i + 1..eigenvectors.len() {
            max_orth = max_orth.max(dot(&eigenvectors[i], &eigenvectors[j]).abs());
        }
    }

    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
        groups,
        tol_eig,
        max_residual,
        max_orthogonality_defect: max_orth,
        operator_norm_inf: norm,
    })
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Group containing the 1-based eigenvalue index.
    pub fn group_of(&self, index: usize) -> Option<&Group> {
        self.groups
            .iter()
            .find(|g| g.indices().contains(&(index.wrapping_sub(1))))
    }

    /// `max_residual <= tol_residual * (1 + ||M||_inf)`.
    pub fn residual_ok(&self, tol_residual: f64) -> bool {
        self.max_residual <= tol_residual * (1.0 + self.operator_norm_inf)
    }

    /// `(value, multiplicity)` per group.
    pub fn distinct(&self) -> Vec<(f64, usize)> {
        self.groups
            .iter()
            .map(|g| (self.eigenvalues[g.start], g.len))
            .collect()
    }
}

pub fn eigenquery(spec: &Spectrum, index: usize) -> Result<EigenQuery, SpectralError> {
    let group = spec.group_of(index).ok_or(SpectralError::IndexOutOfRange {
        index,
        n: spec.len(),
    })?;
    if group.head() != index {
        return Err(SpectralError::InsideGroup {
            index,
            head: group.head(),
        });
    }
    Ok(EigenQuery {
        index,
        lambda: spec.eigenvalues[group.start],
        multiplicity: group.len,
        basis: spec.eigenvectors[group.indices()].to_vec(),
    })
}

/// Simple ground state with a strictly one-signed eigenvector.
pub fn perron_check(op: &SchrodingerOperator, spec: &Spectrum) -> Result<bool, SpectralError> {
    op.graph().require_connected()?;
    let Some(first) = spec.groups.first() else {
        return Ok(false);
    };
    if first.len != 1 {
        return Ok(false);
    }
    let v = &spec.eigenvectors[first.start];
    Ok(v.iter().all(|&x| x > 0.0) || v.iter().all(|&x| x < 0.0))
}
