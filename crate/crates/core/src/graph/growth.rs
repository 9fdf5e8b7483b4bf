//! Quadratic volume growth: `|∂D| >= sqrt(|D|)` for every vertex set `D`
//! with `|D| <= |V| / 2`, `∂D` the outer vertex boundary.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// Largest vertex count the bitmask enumeration supports.
const MASK_LIMIT: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VgStatus {
    /// Every admissible subset was checked.
    Satisfied,
    Violated,
    /// Sampled search found no violation; not a proof.
    NotFalsified,
}

impl VgStatus {
    /// Whether downstream checks that assume the condition may run.
    pub fn admits(self) -> bool {
        !matches!(self, VgStatus::Violated)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VgOptions {
    pub max_exhaustive_n: usize,
    /// Maximum number of subsets examined by the sampled search.
    pub budget: u64,
    pub seed: u64,
}

impl Default for VgOptions {
    fn default() -> Self {
        Self {
            max_exhaustive_n: 20,
            budget: 100_000,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VgReport {
    pub status: VgStatus,
    pub witness: Option<Vec<usize>>,
    pub subsets_checked: u64,
}

impl VgReport {
    pub fn satisfied(&self) -> bool {
        self.status == VgStatus::Satisfied
    }
}

/// `|∂D|^2 < |D|` evaluated in integers.
pub(crate) fn violates(boundary: usize, size: usize) -> bool {
    boundary * boundary < size
}

pub fn vg_check(g: &Graph, opts: &VgOptions) -> Result<VgReport, GraphError> {
    g.require_connected()?;
    let n = g.vertex_count();
    if n <= opts.max_exhaustive_n.min(MASK_LIMIT) {
        Ok(exhaustive(g))
    } else {
        Ok(sampled(g, opts))
    }
}

fn exhaustive(g: &Graph) -> VgReport {
    let n = g.vertex_count();
    let half = n / 2;
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let mut checked = 0u64;
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size > half {
            continue;
        }
        checked += 1;
        let mut reach = 0u32;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            reach |= nbr[v];
            bits &= bits - 1;
        }
        let boundary = (reach & !mask).count_ones() as usize;
        if violates(boundary, size) {
            let witness = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            return VgReport {
                status: VgStatus::Violated,
                witness: Some(witness),
                subsets_checked: checked,
            };
        }
    }
    VgReport {
        status: VgStatus::Satisfied,
        witness: None,
        subsets_checked: checked,
    }
}

/// BFS balls from every vertex (truncated at each admissible size) followed
/// by random connected growth until the budget is spent.
fn sampled(g: &Graph, opts: &VgOptions) -> VgReport {
    let n = g.vertex_count();
    let half = n / 2;
    let mut checked = 0u64;
    let test = |set: &[usize], checked: &mut u64| -> Option<Vec<usize>> {
        *checked += 1;
        let boundary = g.outer_boundary(set).len();
        if violates(boundary, set.len()) {
            let mut w = set.to_vec();
            w.sort_unstable();
            Some(w)
        } else {
            None
        }
    };
    let violated = |witness, checked| VgReport {
        status: VgStatus::Violated,
        witness: Some(witness),
        subsets_checked: checked,
    };

    for root in 0..n {
        let mut order = Vec::with_capacity(half);
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            if order.len() == half {
                break;
            }
            order.push(v);
            if checked >= opts.budget {
                break;
            }
            if let Some(w) = test(&order, &mut checked) {
                return violated(w, checked);
            }
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    while checked < opts.budget && half > 0 {
        let target = rng.random_range(1..=half);
        let mut inside = vec![false; n];
        let start = rng.random_range(0..n);
        inside[start] = true;
        let mut set = vec![start];
        let mut frontier: Vec<usize> = g.neighbors(start).to_vec();
        while set.len() < target && !frontier.is_empty() {
            frontier.shuffle(&mut rng);
            let v = frontier.pop().expect("nonempty");
            if inside[v] {
                continue;
            }
            inside[v] = true;
            set.push(v);
            frontier.extend(g.neighbors(v).iter().copied().filter(|&w| !inside[w]));
        }
        if let Some(w) = test(&set, &mut checked) {
            return violated(w, checked);
        }
    }
    VgReport {
        status: VgStatus::NotFalsified,
        witness: None,
        subsets_checked: checked,
    }
}
