use serde::{Deserialize, Serialize};

use super::BoundsError;
use crate::linalg::{dot, SymMatrix};
use crate::nodal::NodalPartition;

/// Both sides of
/// `(f, Af) = Σ c_i² (w_i, Au) - ½ Σ_{i,j} (c_i - c_j)² (w_i, A w_j)`
/// for `f = Σ c_i w_i` and `u = Σ w_i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs - rhs|` over the sum of the magnitudes of all terms.
    pub discrepancy: f64,
}

/// `u` is taken as the sum of the domain functions, so node values count
/// as exactly zero.
pub fn duval_reiner_identity(
    a: &SymMatrix,
    np: &NodalPartition,
    c: &[f64],
) -> Result<IdentityCheck, BoundsError> {
    let t = np.t();
    if c.len() != t {
        return Err(BoundsError::Dimension {
            expected: t,
            found: c.len(),
        });
    }
    if a.dim() != np.values.len() {
        return Err(BoundsError::Dimension {
            expected: np.values.len(),
            found: a.dim(),
        });
    }
    let w: Vec<Vec<f64>> = (0..t).map(|i| np.domain_function(i)).collect();
    let aw: Vec<Vec<f64>> = w.iter().map(|wi| a.mul_vec(wi)).collect();
    let u = np.supported_values();
    let au = a.mul_vec(&u);

    let mut f = vec![0.0; u.len()];
    for (ci, wi) in c.iter().zip(&w) {
        for (x, y) in f.iter_mut().zip(wi) {
            *x += ci * y;
        }
    }
    let lhs = a.bilinear(&f, &f);

    let mut magnitude = lhs.abs();
    let mut diagonal = 0.0;
    for (ci, wi) in c.iter().zip(&w) {
        let term = ci * ci * dot(wi, &au);
        diagonal += term;
        magnitude += term.abs();
    }
    let mut cross = 0.0;
    for i in 0..t {
        for j in 0..t {
            let d = c[i] - c[j];
            if d != 0.0 {
                let term = 0.5 * d * d * dot(&w[i], &aw[j]);
                cross += term;
                magnitude += term.abs();
            }
        }
    }
    let rhs = diagonal - cross;
    let diff = (lhs - rhs).abs();
    let discrepancy = if magnitude > 0.0 {
        diff / magnitude
    } else {
        diff
    };
    Ok(IdentityCheck {
        lhs,
        rhs,
        discrepancy,
    })
}
