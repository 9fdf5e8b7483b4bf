//! Rotation systems, face tracing and exhaustive minimal-genus search.
//!
//! Face tracing convention: from the directed edge `(u, v)` the walk
//! continues with `(v, w)` where `w` follows `u` in the cyclic rotation at
//! `v`. Every rotation system of a connected graph determines an embedding
//! into a closed orientable surface whose genus follows from Euler's formula.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSystem {
    order: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceStats {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub genus: usize,
}

impl SurfaceStats {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenusSearch {
    /// Minimum certified either by exhausting all rotation systems or by
    /// meeting the Euler lower bound.
    Found {
        genus: usize,
        rotation: RotationSystem,
        enumerated: u64,
    },
    Exceeded {
        enumerated: u64,
        best_so_far: usize,
        lower_bound: usize,
    },
}

impl GenusSearch {
    pub fn genus(&self) -> Option<usize> {
        match self {
            GenusSearch::Found { genus, .. } => Some(*genus),
            GenusSearch::Exceeded { .. } => None,
        }
    }
}

impl RotationSystem {
    /// `order[v]` lists the neighbors of `v` in cyclic order.
    pub fn new(g: &Graph, order: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        if order.len() != g.vertex_count() {
            return Err(GraphError::InvalidRotation {
                vertex: order.len().min(g.vertex_count()),
                message: format!(
                    "rotation covers {} vertices, graph has {}",
                    order.len(),
                    g.vertex_count()
                ),
            });
        }
        for (v, cyc) in order.iter().enumerate() {
            let mut sorted = cyc.clone();
            sorted.sort_unstable();
            if sorted.as_slice() != g.neighbors(v) {
                return Err(GraphError::InvalidRotation {
                    vertex: v,
                    message: format!("{cyc:?} is not a permutation of {:?}", g.neighbors(v)),
                });
            }
        }
        Ok(Self { order })
    }

    /// Neighbors in ascending index order at every vertex.
    pub fn identity(g: &Graph) -> Self {
        Self {
            order: (0..g.vertex_count())
                .map(|v| g.neighbors(v).to_vec())
                .collect(),
        }
    }

    /// Counterclockwise angular order around each vertex of a straight-line
    /// drawing. For a crossing-free drawing this is the planar embedding.
    pub fn from_coordinates(g: &Graph, coords: &[(f64, f64)]) -> Result<Self, GraphError> {
        if coords.len() != g.vertex_count() {
            return Err(GraphError::InvalidRotation {
                vertex: coords.len().min(g.vertex_count()),
                message: "one coordinate pair per vertex required".into(),
            });
        }
        let order = (0..g.vertex_count())
            .map(|v| {
                let (x0, y0) = coords[v];
                let mut nbrs = g.neighbors(v).to_vec();
                nbrs.sort_by(|&a, &b| {
                    let ta = (coords[a].1 - y0).atan2(coords[a].0 - x0);
                    let tb = (coords[b].1 - y0).atan2(coords[b].0 - x0);
                    ta.total_cmp(&tb)
                });
                nbrs
            })
            .collect();
        Self::new(g, order)
    }

    pub fn order(&self, v: usize) -> &[usize] {
        &self.order[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    /// One line per vertex: `v: w1 w2 ... wd`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, cyc) in self.order.iter().enumerate() {
            let _ = write!(out, "{v}:");
            for w in cyc {
                let _ = write!(out, " {w}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(g: &Graph, text: &str) -> Result<Self, GraphError> {
        let mut order: Vec<Option<Vec<usize>>> = vec![None; g.vertex_count()];
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let raw = raw.trim();
            if raw.is_empty() {
                continue;
            }
            let (head, tail) = raw.split_once(':').ok_or(GraphError::Parse {
                line,
                message: "expected \"v: w1 ... wd\"".into(),
            })?;
            let v: usize = head.trim().parse().map_err(|_| GraphError::Parse {
                line,
                message: format!("bad vertex {:?}", head.trim()),
            })?;
            if v >= g.vertex_count() {
                return Err(GraphError::Parse {
                    line,
                    message: format!("vertex {v} out of range"),
                });
            }
            let cyc = tail
                .split_whitespace()
                .map(|w| {
                    w.parse::<usize>().map_err(|_| GraphError::Parse {
                        line,
                        message: format!("bad neighbor {w:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if order[v].replace(cyc).is_some() {
                return Err(GraphError::Parse {
                    line,
                    message: format!("vertex {v} listed twice"),
                });
            }
        }
        let order = order
            .into_iter()
            .enumerate()
            .map(|(v, o)| match o {
                Some(cyc) => Ok(cyc),
                None if g.degree(v) == 0 => Ok(Vec::new()),
                None => Err(GraphError::InvalidRotation {
                    vertex: v,
                    message: "missing rotation line".into(),
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(g, order)
    }
}

/// Dart-indexed view of a graph: dart `offset[v] + i` is `v -> adj(v)[i]`.
struct Darts {
    offset: Vec<usize>,
    reverse: Vec<usize>,
}

impl Darts {
    fn new(g: &Graph) -> Self {
        let mut offset = Vec::with_capacity(g.vertex_count() + 1);
        let mut total = 0;
        for v in 0..g.vertex_count() {
            offset.push(total);
            total += g.degree(v);
        }
        offset.push(total);
        let mut reverse = vec![0; total];
        for v in 0..g.vertex_count() {
            for (i, &w) in g.neighbors(v).iter().enumerate() {
                let j = g
                    .neighbors(w)
                    .binary_search(&v)
                    .expect("symmetric adjacency");
                reverse[offset[v] + i] = offset[w] + j;
            }
        }
        Self { offset, reverse }
    }

    fn len(&self) -> usize {
        self.reverse.len()
    }

    /// Writes the successor table for vertex `v` given its rotation as
    /// positions into the sorted neighbor list.
    fn set_rotation(&self, v: usize, positions: &[usize], succ: &mut [usize]) {
        let base = self.offset[v];
        let d = positions.len();
        for k in 0..d {
            succ[base + positions[k]] = base + positions[(k + 1) % d];
        }
    }

    fn count_faces(&self, succ: &[usize], seen: &mut [u32], stamp: u32) -> usize {
        let mut faces = 0;
        for start in 0..self.len() {
            if seen[start] == stamp {
                continue;
            }
            faces += 1;
            let mut d = start;
            while seen[d] != stamp {
                seen[d] = stamp;
                d = succ[self.reverse[d]];
            }
        }
        faces
    }
}

fn genus_from(g: &Graph, faces: usize) -> usize {
    let chi = g.vertex_count() as i64 - g.edge_count() as i64 + faces as i64;
    let twice = 2 - chi;
    debug_assert!(twice >= 0 && twice % 2 == 0, "Euler characteristic parity");
    (twice / 2) as usize
}

pub fn trace_faces(g: &Graph, rot: &RotationSystem) -> Result<SurfaceStats, GraphError> {
    g.require_connected()?;
    let rot = RotationSystem::new(g, rot.order.clone())?;
    let darts = Darts::new(g);
    let faces = if g.edge_count() == 0 {
        1
    } else {
        let mut succ = vec![0; darts.len()];
        for v in 0..g.vertex_count() {
            let positions: Vec<usize> = rot.order[v]
                .iter()
                .map(|w| g.neighbors(v).binary_search(w).expect("validated"))
                .collect();
            darts.set_rotation(v, &positions, &mut succ);
        }
        let mut seen = vec![0; darts.len()];
        darts.count_faces(&succ, &mut seen, 1)
    };
    Ok(SurfaceStats {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        faces,
        genus: genus_from(g, faces),
    })
}

/// Euler lower bound on the genus of a simple connected graph: every face
/// walk has length at least the girth lower bound (4 if bipartite, else 3).
fn euler_lower_bound(g: &Graph) -> usize {
    let (v, e) = (g.vertex_count() as i64, g.edge_count() as i64);
    if v < 3 || e < v {
        return 0;
    }
    let girth = if g.is_bipartite() { 4 } else { 3 };
    let max_faces = 2 * e / girth;
    let twice = 2 - v + e - max_faces;
    if twice <= 0 {
        0
    } else {
        ((twice + 1) / 2) as usize
    }
}

/// Number of distinct rotation systems, `prod (deg(v) - 1)!`, saturating.
pub fn rotation_count(g: &Graph) -> u128 {
    g.degrees().iter().fold(1u128, |acc, &d| {
        (2..d.max(1) as u128).fold(acc, |a, k| a.saturating_mul(k))
    })
}

/// Advances to the next lexicographic permutation; on the last one, resets
/// to ascending order and returns false.
fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        a.reverse();
        return false;
    };
    let j = (i..a.len())
        .rev()
        .find(|&j| a[j] > a[i - 1])
        .expect("suffix has a larger element");
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Minimum orientable genus over all rotation systems, enumerating at most
/// `budget` of them.
pub fn minimal_genus(g: &Graph, budget: u64) -> Result<GenusSearch, GraphError> {
    g.require_connected()?;
    let lower = euler_lower_bound(g);
    let darts = Darts::new(g);

    // Per vertex: cyclic order as positions, first neighbor pinned; the
    // tail is stepped through its permutations in lexicographic order.
    let mut current: Vec<Vec<usize>> = (0..g.vertex_count())
        .map(|v| (0..g.degree(v)).collect())
        .collect();
    let mut succ = vec![0; darts.len()];
    for v in 0..g.vertex_count() {
        darts.set_rotation(v, &current[v], &mut succ);
    }
    let free: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) > 2).collect();
    let mut seen = vec![0u32; darts.len()];
    let mut stamp = 0u32;
    let mut enumerated = 0u64;
    let mut best: Option<(usize, Vec<Vec<usize>>)> = None;

    loop {
        if enumerated >= budget {
            return Ok(GenusSearch::Exceeded {
                enumerated,
                best_so_far: best.map_or(usize::MAX, |(b, _)| b),
                lower_bound: lower,
            });
        }
        enumerated += 1;
        stamp = stamp.wrapping_add(1);
        if stamp == 0 {
            seen.fill(0);
            stamp = 1;
        }
        let faces = if g.edge_count() == 0 {
            1
        } else {
            darts.count_faces(&succ, &mut seen, stamp)
        };
        let genus = genus_from(g, faces);
        if best.as_ref().is_none_or(|(b, _)| genus < *b) {
            best = Some((genus, current.clone()));
        }
        if genus <= lower {
            break;
        }
        // Odometer step over the free vertices.
        let mut advanced = false;
        for &v in free.iter().rev() {
            let stepped = next_permutation(&mut current[v][1..]);
            darts.set_rotation(v, &current[v], &mut succ);
            if stepped {
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }

    let (genus, positions) = best.expect("at least one rotation system");
    let order = positions
        .iter()
        .enumerate()
        .map(|(v, pos)| pos.iter().map(|&p| g.neighbors(v)[p]).collect())
        .collect();
    Ok(GenusSearch::Found {
        genus,
        rotation: RotationSystem { order },
        enumerated,
    })
}
