use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{NodalError, NodalPartition};
use crate::bounds::{BoundReport, Check, Relation};
use crate::graph::Graph;
use crate::linalg::{dot, norm_inf};
use crate::spectral::SchrodingerOperator;

/// A merge across `node`; islands are named by their smallest domain index
/// at the time of the merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeStep {
    pub node: usize,
    pub first: usize,
    pub second: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Island {
    pub domains: Vec<usize>,
}

impl Island {
    pub fn is_small(&self) -> bool {
        self.domains.len() == 1
    }

    /// `t(I)`.
    pub fn domain_count(&self) -> usize {
        self.domains.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IslandSet {
    /// Connected components of the domain adjacency graph.
    pub regions: Vec<Vec<usize>>,
    pub islands: Vec<Island>,
    /// Island index per domain.
    pub island_of: Vec<usize>,
    pub merge_trace: Vec<MergeStep>,
    /// Nodes adjacent to at least one small island.
    pub v0: Vec<usize>,
    /// Domains adjacent to each node, indexed like `NodalPartition::nodes`.
    node_domains: Vec<Vec<usize>>,
    nodes: Vec<usize>,
}

fn regions_of(np: &NodalPartition, g: &Graph) -> Vec<Vec<usize>> {
    let adj = np.domain_adjacency(g);
    let mut seen = vec![false; np.t()];
    let mut regions = Vec::new();
    for root in 0..np.t() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut region = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(d) = queue.pop_front() {
            for &e in &adj[d] {
                if !seen[e] {
                    seen[e] = true;
                    region.push(e);
                    queue.push_back(e);
                }
            }
        }
        region.sort_unstable();
        regions.push(region);
    }
    regions
}

/// Island labelling by smallest member domain, with per-label sizes.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Labels {
    label: Vec<usize>,
    size: Vec<usize>,
}

impl Labels {
    fn from_regions(t: usize, regions: &[Vec<usize>]) -> Self {
        let mut label = vec![0; t];
        let mut size = vec![0; t];
        for region in regions {
            for &d in region {
                label[d] = region[0];
            }
            size[region[0]] = region.len();
        }
        Self { label, size }
    }

    fn islands_next_to(&self, domains: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> = domains.iter().map(|&d| self.label[d]).collect();
        set.into_iter().collect()
    }

    /// The pair this node may merge, if exactly two islands touch it and at
    /// least one of them is small.
    fn eligible(&self, domains: &[usize]) -> Option<(usize, usize)> {
        match self.islands_next_to(domains).as_slice() {
            &[a, b] if self.size[a] == 1 || self.size[b] == 1 => Some((a, b)),
            _ => None,
        }
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (keep, gone) = (a.min(b), a.max(b));
        for l in &mut self.label {
            if *l == gone {
                *l = keep;
            }
        }
        self.size[keep] += self.size[gone];
        self.size[gone] = 0;
    }

    fn partition(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut index_of = vec![usize::MAX; self.label.len()];
        for (d, &l) in self.label.iter().enumerate() {
            if index_of[l] == usize::MAX {
                index_of[l] = out.len();
                out.push(Vec::new());
            }
            out[index_of[l]].push(d);
        }
        out
    }
}

fn node_domains(np: &NodalPartition, g: &Graph) -> Vec<Vec<usize>> {
    np.nodes.iter().map(|&v| np.domains_next_to(g, v)).collect()
}

/// Regions merged into islands. Nodes are scanned in ascending order; the
/// first eligible node is merged and the scan restarts until a fixpoint.
pub fn build_islands(np: &NodalPartition, g: &Graph) -> IslandSet {
    let regions = regions_of(np, g);
    let near = node_domains(np, g);
    let mut labels = Labels::from_regions(np.t(), &regions);
    let mut merge_trace = Vec::new();
    'scan: loop {
        for (k, &node) in np.nodes.iter().enumerate() {
            if let Some((a, b)) = labels.eligible(&near[k]) {
                merge_trace.push(MergeStep {
                    node,
                    first: a,
                    second: b,
                });
                labels.merge(a, b);
                continue 'scan;
            }
        }
        break;
    }
    finish(np, regions, &labels, merge_trace, near)
}

fn finish(
    np: &NodalPartition,
    regions: Vec<Vec<usize>>,
    labels: &Labels,
    merge_trace: Vec<MergeStep>,
    near: Vec<Vec<usize>>,
) -> IslandSet {
    let islands: Vec<Island> = labels
        .partition()
        .into_iter()
        .map(|domains| Island { domains })
        .collect();
    let mut island_of = vec![0; np.t()];
    for (i, island) in islands.iter().enumerate() {
        for &d in &island.domains {
            island_of[d] = i;
        }
    }
    let v0 = np
        .nodes
        .iter()
        .zip(&near)
        .filter(|(_, ds)| ds.iter().any(|&d| islands[island_of[d]].is_small()))
        .map(|(&v, _)| v)
        .collect();
    IslandSet {
        regions,
        islands,
        island_of,
        merge_trace,
        v0,
        node_domains: near,
        nodes: np.nodes.clone(),
    }
}

impl IslandSet {
    /// Number of islands, `s`.
    pub fn s(&self) -> usize {
        self.islands.len()
    }

    pub fn small_count(&self) -> usize {
        self.islands.iter().filter(|i| i.is_small()).count()
    }

    pub fn large_count(&self) -> usize {
        self.s() - self.small_count()
    }

    /// Sorted island indices adjacent to node `v`; empty for non-nodes.
    pub fn islands_next_to(&self, v: usize) -> Vec<usize> {
        let Ok(k) = self.nodes.binary_search(&v) else {
            return Vec::new();
        };
        let set: BTreeSet<usize> = self.node_domains[k]
            .iter()
            .map(|&d| self.island_of[d])
            .collect();
        set.into_iter().collect()
    }

    /// Nodes where another merge would still fire. Empty at the fixpoint.
    pub fn pending_merges(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .copied()
            .filter(|&v| {
                let near = self.islands_next_to(v);
                near.len() == 2 && near.iter().any(|&i| self.islands[i].is_small())
            })
            .collect()
    }
}

/// Final partitions reachable under every merge order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeSurvey {
    pub final_partitions: Vec<Vec<Vec<usize>>>,
    pub states_visited: usize,
    pub complete: bool,
}

impl MergeSurvey {
    pub fn order_independent(&self) -> bool {
        self.complete && self.final_partitions.len() == 1
    }
}

/// Explores all merge orders when there are at most `max_regions` regions.
/// Stops after `max_states` distinct intermediate states.
pub fn survey_merge_orders(
    np: &NodalPartition,
    g: &Graph,
    max_regions: usize,
    max_states: usize,
) -> Option<MergeSurvey> {
    let regions = regions_of(np, g);
    if regions.len() > max_regions {
        return None;
    }
    let near = node_domains(np, g);
    let start = Labels::from_regions(np.t(), &regions);
    let mut seen: HashSet<Labels> = HashSet::new();
    let mut finals: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    let mut stack = vec![start];
    let mut complete = true;
    while let Some(state) = stack.pop() {
        if !seen.insert(state.clone()) {
            continue;
        }
        if seen.len() > max_states {
            complete = false;
            break;
        }
        let moves: BTreeSet<(usize, usize)> =
            near.iter().filter_map(|ds| state.eligible(ds)).collect();
        if moves.is_empty() {
            finals.insert(state.partition());
            continue;
        }
        for (a, b) in moves {
            let mut next = state.clone();
            next.merge(a, b);
            stack.push(next);
        }
    }
    Some(MergeSurvey {
        final_partitions: finals.into_iter().collect(),
        states_visited: seen.len(),
        complete,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyClaim {
    /// `(node, islands adjacent)` for every node of `V0` touching fewer than
    /// three islands.
    pub offenders: Vec<(usize, usize)>,
    pub checked: usize,
}

impl AdjacencyClaim {
    pub fn holds(&self) -> bool {
        self.offenders.is_empty()
    }

    pub fn to_report(&self) -> BoundReport {
        BoundReport::evaluate(
            Check::SmallIslandAdjacency,
            Relation::AtMost,
            self.offenders.len() as f64,
            0.0,
        )
    }
}

/// Rayleigh quotient and relative residual `||Mu - λu||_inf / ||u||_inf`.
pub(crate) fn eigen_residual(op: &SchrodingerOperator, u: &[f64]) -> (f64, f64) {
    let mu = op.apply(u);
    let lambda = dot(u, &mu) / dot(u, u);
    let r = mu
        .iter()
        .zip(u)
        .fold(0.0f64, |m, (a, b)| m.max((a - lambda * b).abs()));
    (lambda, r / norm_inf(u))
}

/// Every node next to a small island touches at least three islands.
/// Requires `np.values` to be an eigenfunction of `op`.
pub fn small_island_adjacency(
    is: &IslandSet,
    np: &NodalPartition,
    op: &SchrodingerOperator,
    tol_residual: f64,
) -> Result<AdjacencyClaim, NodalError> {
    let (_, residual) = eigen_residual(op, &np.values);
    let allowed = tol_residual * (1.0 + op.matrix().norm_inf());
    if !(residual <= allowed) {
        return Err(NodalError::NotEigenfunction { residual, allowed });
    }
    let offenders = is
        .v0
        .iter()
        .map(|&v| (v, is.islands_next_to(v).len()))
        .filter(|&(_, k)| k < 3)
        .collect();
    Ok(AdjacencyClaim {
        offenders,
        checked: is.v0.len(),
    })
}
