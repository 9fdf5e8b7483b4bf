//! Named graph families, with planar drawings or surface embeddings where
//! one is known in closed form.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, GraphError, RotationSystem};

const MAX_CONNECT_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `K_{1,N}`, center 0.
    Star {
        leaves: usize,
    },
    /// Two adjacent centers 0 and 1, with `left` and `right` pendant leaves.
    DoubleStar {
        left: usize,
        right: usize,
    },
    CompleteBipartite {
        a: usize,
        b: usize,
    },
    Complete {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    Grid {
        rows: usize,
        cols: usize,
    },
    /// `C_rows x C_cols`, embedded on the torus.
    ToroidalGrid {
        rows: usize,
        cols: usize,
    },
    /// Hub 0 joined to every vertex of a rim cycle `1..=rim`.
    Wheel {
        rim: usize,
    },
    /// Two triangles joined by a perfect matching.
    Prism,
    /// `K_{2,2,2}`; antipodal pairs are (0,1), (2,3), (4,5).
    Octahedron,
    RandomConnected {
        n: usize,
        p: f64,
        seed: u64,
    },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Star { leaves } => write!(f, "star({leaves})"),
            Family::DoubleStar { left, right } => write!(f, "double_star({left},{right})"),
            Family::CompleteBipartite { a, b } => write!(f, "complete_bipartite({a},{b})"),
            Family::Complete { n } => write!(f, "complete({n})"),
            Family::Cycle { n } => write!(f, "cycle({n})"),
            Family::Path { n } => write!(f, "path({n})"),
            Family::Grid { rows, cols } => write!(f, "grid({rows},{cols})"),
            Family::ToroidalGrid { rows, cols } => write!(f, "toroidal_grid({rows},{cols})"),
            Family::Wheel { rim } => write!(f, "wheel({rim})"),
            Family::Prism => write!(f, "prism"),
            Family::Octahedron => write!(f, "octahedron"),
            Family::RandomConnected { n, p, seed } => {
                write!(f, "random_connected(n={n},p={p},seed={seed})")
            }
        }
    }
}

fn require(ok: bool, what: &str) -> Result<(), GraphError> {
    if ok {
        Ok(())
    } else {
        Err(GraphError::Family(what.to_string()))
    }
}

pub fn generate_family(family: &Family) -> Result<Graph, GraphError> {
    match *family {
        Family::Star { leaves } => {
            require(leaves >= 1, "star needs at least one leaf")?;
            Graph::from_edge_list(leaves + 1, (1..=leaves).map(|l| (0, l)))
        }
        Family::DoubleStar { left, right } => {
            let n = 2 + left + right;
            let edges = std::iter::once((0, 1))
                .chain((0..left).map(|i| (0, 2 + i)))
                .chain((0..right).map(|i| (1, 2 + left + i)));
            Graph::from_edge_list(n, edges)
        }
        Family::CompleteBipartite { a, b } => {
            require(a >= 1 && b >= 1, "both sides must be nonempty")?;
            Graph::from_edge_list(a + b, (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))))
        }
        Family::Complete { n } => {
            require(n >= 1, "complete graph needs a vertex")?;
            Graph::from_edge_list(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        }
        Family::Cycle { n } => {
            require(n >= 3, "cycle needs at least 3 vertices")?;
            Graph::from_edge_list(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        Family::Path { n } => {
            require(n >= 1, "path needs a vertex")?;
            Graph::from_edge_list(n, (1..n).map(|i| (i - 1, i)))
        }
        Family::Grid { rows, cols } => {
            require(rows >= 1 && cols >= 1, "grid dimensions must be positive")?;
            let id = |i: usize, j: usize| i * cols + j;
            let mut edges = Vec::new();
            for i in 0..rows {
                for j in 0..cols {
                    if j + 1 < cols {
                        edges.push((id(i, j), id(i, j + 1)));
                    }
                    if i + 1 < rows {
                        edges.push((id(i, j), id(i + 1, j)));
                    }
                }
            }
            Graph::from_edge_list(rows * cols, edges)
        }
        Family::ToroidalGrid { rows, cols } => {
            require(
                rows >= 3 && cols >= 3,
                "toroidal grid needs both dimensions >= 3",
            )?;
            let id = |i: usize, j: usize| (i % rows) * cols + (j % cols);
            let edges = (0..rows).flat_map(|i| {
                (0..cols).flat_map(move |j| [(id(i, j), id(i, j + 1)), (id(i, j), id(i + 1, j))])
            });
            Graph::from_edge_list(rows * cols, edges)
        }
        Family::Wheel { rim } => {
            require(rim >= 3, "wheel rim needs at least 3 vertices")?;
            let edges = (1..=rim).flat_map(|i| [(0, i), (i, i % rim + 1)]);
            Graph::from_edge_list(rim + 1, edges)
        }
        Family::Prism => Graph::from_edge_list(
            6,
            [
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        ),
        Family::Octahedron => {
            let edges = (0..6)
                .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
                .filter(|&(u, v)| !(u % 2 == 0 && v == u + 1));
            Graph::from_edge_list(6, edges)
        }
        Family::RandomConnected { n, p, seed } => random_connected(n, p, seed),
    }
}

fn random_connected(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    require(n >= 1, "random graph needs a vertex")?;
    require(p > 0.0 && p <= 1.0, "edge probability must lie in (0, 1]")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_CONNECT_ATTEMPTS {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edge_list(n, edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(GraphError::Family(format!(
        "no connected sample after {MAX_CONNECT_ATTEMPTS} attempts (n={n}, p={p})"
    )))
}

fn on_circle(count: usize, radius: f64, phase: f64) -> impl Iterator<Item = (f64, f64)> {
    (0..count).map(move |k| {
        let t = phase + 2.0 * PI * k as f64 / count as f64;
        (radius * t.cos(), radius * t.sin())
    })
}

impl Family {
    /// Crossing-free straight-line drawing, when the family is planar and
    /// one is known.
    pub fn planar_drawing(&self) -> Option<Vec<(f64, f64)>> {
        let coords: Vec<(f64, f64)> = match *self {
            Family::Star { leaves } => std::iter::once((0.0, 0.0))
                .chain(on_circle(leaves, 1.0, 0.0))
                .collect(),
            Family::DoubleStar { left, right } => [(0.0, 0.0), (10.0, 0.0)]
                .into_iter()
                .chain(on_circle(left, 1.0, 0.5).map(|(x, y)| (x - 1.0, y)))
                .chain(on_circle(right, 1.0, 0.5).map(|(x, y)| (x + 11.0, y)))
                .collect(),
            Family::CompleteBipartite { a, b } if a <= 2 || b <= 2 => {
                let (hubs, rest) = if a <= 2 { (a, b) } else { (b, a) };
                let hub_pos = [(0.0, 1.0), (0.0, -1.0)];
                let leaf_pos = (0..rest).map(|i| (i as f64 - rest as f64 / 2.0, 0.0));
                let mut place: Vec<(f64, f64)> = Vec::new();
                if a <= 2 {
                    place.extend(hub_pos.iter().take(hubs));
                    place.extend(leaf_pos);
                } else {
                    place.extend(leaf_pos);
                    place.extend(hub_pos.iter().take(hubs));
                }
                place
            }
            Family::Complete { n } if n <= 3 => on_circle(n, 1.0, 0.1).collect(),
            Family::Complete { n: 4 } => vec![(0.0, 0.0), (4.0, 0.0), (2.0, 3.0), (2.0, 1.0)],
            Family::Cycle { n } => on_circle(n, 1.0, 0.0).collect(),
            Family::Path { n } => (0..n).map(|i| (i as f64, 0.0)).collect(),
            Family::Grid { rows, cols } => (0..rows)
                .flat_map(|i| (0..cols).map(move |j| (j as f64, i as f64)))
                .collect(),
            Family::Wheel { rim } => std::iter::once((0.0, 0.0))
                .chain(on_circle(rim, 1.0, 0.0))
                .collect(),
            Family::Prism => on_circle(3, 2.0, PI / 2.0)
                .chain(on_circle(3, 1.0, PI / 2.0))
                .collect(),
            Family::Octahedron => {
                let polar = |deg: f64, r: f64| {
                    let t = deg.to_radians();
                    (r * t.cos(), r * t.sin())
                };
                vec![
                    polar(90.0, 2.0),
                    polar(270.0, 0.5),
                    polar(210.0, 2.0),
                    polar(30.0, 0.5),
                    polar(330.0, 2.0),
                    polar(150.0, 0.5),
                ]
            }
            _ => return None,
        };
        Some(coords)
    }

    /// Rotation system of the natural embedding: the planar drawing when
    /// available, the flat torus for toroidal grids.
    pub fn embedding(&self, g: &Graph) -> Option<RotationSystem> {
        if let Family::ToroidalGrid { rows, cols } = *self {
            let id = |i: usize, j: usize| (i % rows) * cols + (j % cols);
            let order = (0..rows)
                .flat_map(|i| {
                    (0..cols).map(move |j| {
                        vec![
                            id(i, j + 1),
                            id(i + 1, j),
                            id(i, j + cols - 1),
                            id(i + rows - 1, j),
                        ]
                    })
                })
                .collect();
            return RotationSystem::new(g, order).ok();
        }
        let coords = self.planar_drawing()?;
        RotationSystem::from_coordinates(g, &coords).ok()
    }

    /// Whether the family is randomized (and so varies with its seed).
    pub fn is_random(&self) -> bool {
        matches!(self, Family::RandomConnected { .. })
    }
}
