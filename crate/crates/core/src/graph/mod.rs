//! Simple undirected graphs on dense `0..n` vertex indices.
//!
//! A [`Graph`] is immutable once built: adjacency lists are sorted and
//! symmetric, there are no loops and no parallel edges. Connectivity is not
//! enforced at construction time; operations that need it call
//! [`Graph::require_connected`].

mod embedding;
mod families;
mod growth;

pub use embedding::{
    minimal_genus, rotation_count, trace_faces, GenusSearch, RotationSystem, SurfaceStats,
};
pub use families::{generate_family, Family};
pub use growth::{vg_check, VgOptions, VgReport, VgStatus};

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid rotation at vertex {vertex}: {message}")]
    InvalidRotation { vertex: usize, message: String },
    #[error("invalid family parameters: {0}")]
    Family(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from unordered vertex pairs. Duplicates (in either
    /// orientation) collapse to a single edge.
    pub fn from_edge_list<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in pairs {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::OutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Self {
            adjacency,
            edge_count: edge_count / 2,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_without(&[])
    }

    pub fn require_connected(&self) -> Result<(), GraphError> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(GraphError::Disconnected)
        }
    }

    /// Connectivity of the graph with `removed` deleted. An empty remainder
    /// counts as connected.
    fn is_connected_without(&self, removed: &[usize]) -> bool {
        let n = self.vertex_count();
        let mut blocked = vec![false; n];
        for &v in removed {
            blocked[v] = true;
        }
        let Some(start) = (0..n).find(|&v| !blocked[v]) else {
            return true;
        };
        let remaining = n - removed.len();
        let mut seen = blocked;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == remaining
    }

    /// True iff the graph has more than `k` vertices and stays connected
    /// after deleting any set of fewer than `k` vertices.
    pub fn vertex_connectivity_at_least(&self, k: usize) -> Result<bool, GraphError> {
        self.require_connected()?;
        if k == 0 {
            return Ok(true);
        }
        let n = self.vertex_count();
        if n <= k {
            return Ok(false);
        }
        let mut removed = Vec::with_capacity(k);
        Ok(self.survives_removals(&mut removed, 0, k - 1))
    }

    fn survives_removals(&self, removed: &mut Vec<usize>, from: usize, budget: usize) -> bool {
        if !self.is_connected_without(removed) {
            return false;
        }
        if budget == 0 {
            return true;
        }
        for v in from..self.vertex_count() {
            removed.push(v);
            let ok = self.survives_removals(removed, v + 1, budget - 1);
            removed.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.vertex_count();
        let mut side = vec![u8::MAX; n];
        for root in 0..n {
            if side[root] != u8::MAX {
                continue;
            }
            side[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        queue.push_back(w);
                    } else if side[w] == side[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Outer vertex boundary: vertices outside `set` adjacent to it.
    pub fn outer_boundary(&self, set: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.vertex_count()];
        for &v in set {
            inside[v] = true;
        }
        let mut boundary = vec![false; self.vertex_count()];
        for &v in set {
            for &w in &self.adjacency[v] {
                if !inside[w] {
                    boundary[w] = true;
                }
            }
        }
        (0..self.vertex_count()).filter(|&v| boundary[v]).collect()
    }

    /// Parses the `n m` header followed by `m` lines of `u v`.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (header_line, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            message: "missing header \"n m\"".into(),
        })?;
        let [n, m] = parse_pair(header_line, header)?;
        let mut pairs = Vec::with_capacity(m);
        for (line, content) in lines.by_ref() {
            if pairs.len() == m {
                return Err(GraphError::Parse {
                    line,
                    message: format!("more than the declared {m} edges"),
                });
            }
            let [u, v] = parse_pair(line, content)?;
            if u >= n || v >= n {
                return Err(GraphError::Parse {
                    line,
                    message: format!("vertex out of range for n = {n}"),
                });
            }
            if u == v {
                return Err(GraphError::Parse {
                    line,
                    message: format!("self-loop at vertex {u}"),
                });
            }
            pairs.push((u, v));
        }
        if pairs.len() != m {
            return Err(GraphError::Parse {
                line: text.lines().count().max(1),
                message: format!("expected {m} edges, found {}", pairs.len()),
            });
        }
        Self::from_edge_list(n, pairs).map_err(|e| GraphError::Parse {
            line: header_line,
            message: e.to_string(),
        })
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn parse_pair(line: usize, content: &str) -> Result<[usize; 2], GraphError> {
    let fields: Vec<&str> = content.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(GraphError::Parse {
            line,
            message: format!("expected two integers, found {:?}", content),
        });
    }
    let mut out = [0; 2];
    for (slot, field) in out.iter_mut().zip(&fields) {
        *slot = field.parse().map_err(|_| GraphError::Parse {
            line,
            message: format!("not a nonnegative integer: {field:?}"),
        })?;
    }
    Ok(out)
}
