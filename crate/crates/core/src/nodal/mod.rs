//! Strong nodal domains, regions and islands of a graph function, and the
//! φ-vector system attached to nodes next to small islands.
//!
//! A vertex is a *node* when `|u(v)| <= tol_zero * ||u||_inf`. Strong domains
//! are the connected components of the non-node vertices after removing
//! edges between opposite signs; they are numbered by their smallest vertex.

mod islands;
mod phi;

pub use islands::{
    build_islands, small_island_adjacency, survey_merge_orders, AdjacencyClaim, Island, IslandSet,
    MergeStep, MergeSurvey,
};
pub use phi::{codimension_check, phi_rank_check, phi_system, PhiSystem};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::linalg::norm_inf;

pub const DEFAULT_TOL_ZERO: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NodalError {
    #[error("function vanishes identically")]
    ZeroFunction,
    #[error("function has {found} entries, graph has {expected} vertices")]
    Dimension { expected: usize, found: usize },
    #[error("not an eigenfunction: residual {residual:e} exceeds {allowed:e}")]
    NotEigenfunction { residual: f64, allowed: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Domain {
    pub sign: Sign,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodalPartition {
    pub values: Vec<f64>,
    pub tol_zero: f64,
    pub signs: Vec<Sign>,
    pub domains: Vec<Domain>,
    pub domain_of: Vec<Option<usize>>,
    pub nodes: Vec<usize>,
}

pub fn strong_domains(g: &Graph, u: &[f64], tol_zero: f64) -> Result<NodalPartition, NodalError> {
    let n = g.vertex_count();
    if u.len() != n {
        return Err(NodalError::Dimension {
            expected: n,
            found: u.len(),
        });
    }
    let scale = norm_inf(u);
    if !(scale > 0.0) {
        return Err(NodalError::ZeroFunction);
    }
    let cutoff = tol_zero * scale;
    let signs: Vec<Sign> = u
        .iter()
        .map(|&x| {
            if x.abs() <= cutoff {
                Sign::Zero
            } else if x > 0.0 {
                Sign::Positive
            } else {
                Sign::Negative
            }
        })
        .collect();

    let mut domain_of = vec![None; n];
    let mut domains = Vec::new();
    for root in 0..n {
        if signs[root] == Sign::Zero || domain_of[root].is_some() {
            continue;
        }
        let id = domains.len();
        let sign = signs[root];
        let mut vertices = vec![root];
        domain_of[root] = Some(id);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if signs[w] == sign && domain_of[w].is_none() {
                    domain_of[w] = Some(id);
                    vertices.push(w);
                    queue.push_back(w);
                }
            }
        }
        vertices.sort_unstable();
        domains.push(Domain { sign, vertices });
    }
    let nodes = (0..n).filter(|&v| signs[v] == Sign::Zero).collect();
    Ok(NodalPartition {
        values: u.to_vec(),
        tol_zero,
        signs,
        domains,
        domain_of,
        nodes,
    })
}

impl NodalPartition {
    /// Number of strong domains.
    pub fn t(&self) -> usize {
        self.domains.len()
    }

    pub fn is_node(&self, v: usize) -> bool {
        self.signs[v] == Sign::Zero
    }

    /// Sorted, deduplicated domain neighbors of every domain.
    pub fn domain_adjacency(&self, g: &Graph) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.t()];
        for (u, v) in g.edges() {
            if let (Some(a), Some(b)) = (self.domain_of[u], self.domain_of[v]) {
                if a != b {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Domains reachable from node `v` along one edge.
    pub fn domains_next_to(&self, g: &Graph, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = g
            .neighbors(v)
            .iter()
            .filter_map(|&w| self.domain_of[w])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `w_i`: the function restricted to domain `i`, zero elsewhere.
    pub fn domain_function(&self, i: usize) -> Vec<f64> {
        let mut w = vec![0.0; self.values.len()];
        for &v in &self.domains[i].vertices {
            w[v] = self.values[v];
        }
        w
    }

    /// The function with node values set to exactly zero.
    pub fn supported_values(&self) -> Vec<f64> {
        self.values
            .iter()
            .zip(&self.signs)
            .map(|(&x, &s)| if s == Sign::Zero { 0.0 } else { x })
            .collect()
    }
}

/// Serialized nodal summary of one function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodalReport {
    pub t: usize,
    pub s: usize,
    pub smalls: usize,
    pub larges: usize,
    pub y: usize,
    #[serde(rename = "dimW0")]
    pub dim_w0: usize,
    pub domains: Vec<Domain>,
    pub islands: Vec<IslandEntry>,
    pub merge_trace: Vec<MergeStep>,
    #[serde(rename = "V0")]
    pub v0: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IslandEntry {
    pub domains: Vec<usize>,
    pub small: bool,
}

impl NodalReport {
    pub fn new(np: &NodalPartition, is: &IslandSet, ps: &PhiSystem) -> Self {
        Self {
            t: np.t(),
            s: is.s(),
            smalls: is.small_count(),
            larges: is.large_count(),
            y: ps.y,
            dim_w0: ps.dim_w0,
            domains: np.domains.clone(),
            islands: is
                .islands
                .iter()
                .map(|i| IslandEntry {
                    domains: i.domains.clone(),
                    small: i.is_small(),
                })
                .collect(),
            merge_trace: is.merge_trace.clone(),
            v0: is.v0.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, Family};

    fn fam(f: Family) -> Graph {
        generate_family(&f).unwrap()
    }

    #[test]
    fn star_domains() {
        let g = fam(Family::Star { leaves: 3 });
        let np = strong_domains(&g, &[0.0, 1.0, 1.0, -2.0], DEFAULT_TOL_ZERO).unwrap();
        assert_eq!(np.t(), 3);
        assert_eq!(np.nodes, vec![0]);
        let signs: Vec<Sign> = np.domains.iter().map(|d| d.sign).collect();
        assert_eq!(signs, vec![Sign::Positive, Sign::Positive, Sign::Negative]);
        assert_eq!(np.domains[2].vertices, vec![3]);
    }

    #[test]
    fn path_domains() {
        let g = fam(Family::Path { n: 3 });
        let np = strong_domains(&g, &[1.0, 0.0, -1.0], DEFAULT_TOL_ZERO).unwrap();
        assert_eq!(np.t(), 2);
        assert_eq!(np.nodes, vec![1]);
    }

    #[test]
    fn constant_function_is_one_domain() {
        let g = fam(Family::Cycle { n: 5 });
        let np = strong_domains(&g, &[0.4; 5], DEFAULT_TOL_ZERO).unwrap();
        assert_eq!(np.t(), 1);
        assert!(np.nodes.is_empty());
    }

    #[test]
    fn errors() {
        let g = fam(Family::Path { n: 3 });
        assert_eq!(
            strong_domains(&g, &[0.0; 3], DEFAULT_TOL_ZERO),
            Err(NodalError::ZeroFunction)
        );
        assert!(matches!(
            strong_domains(&g, &[1.0; 2], DEFAULT_TOL_ZERO),
            Err(NodalError::Dimension { .. })
        ));
    }

    #[test]
    fn tolerance_controls_nodes() {
        let g = fam(Family::Path { n: 3 });
        let u = [1.0, 1e-12, 1.0];
        assert_eq!(strong_domains(&g, &u, 1e-9).unwrap().t(), 2);
        assert_eq!(strong_domains(&g, &u, 1e-14).unwrap().t(), 1);
    }

    #[test]
    fn same_sign_split_by_node() {
        let g = fam(Family::Path { n: 5 });
        let np = strong_domains(&g, &[1.0, 2.0, 0.0, 3.0, -1.0], DEFAULT_TOL_ZERO).unwrap();
        assert_eq!(np.t(), 3);
        let adj = np.domain_adjacency(&g);
        assert_eq!(adj, vec![vec![], vec![2], vec![1]]);
    }
}
