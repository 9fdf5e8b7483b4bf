use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{BoundReport, BoundsError, Check, GraphFacts, Relation, OUTSIDE_REGIME};
use crate::graph::{Graph, VgStatus};
use crate::linalg::{dot, echelon, modified_gram_schmidt, norm2, norm_inf};
use crate::nodal::NodalError;

/// Relative threshold separating zero from nonzero values of a combination.
pub const NONZERO_TOL: f64 = 1e-8;

/// Random coefficient vectors tried per vanishing set, beyond the null-space
/// basis and its sum.
const RANDOM_TRIALS: usize = 8;

/// Everything built on the way from an `r`-dimensional eigenspace to the
/// node set `W` and its inner boundary `Z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplicityCertificate {
    pub n: usize,
    pub r: usize,
    #[serde(rename = "R")]
    pub r_set: Vec<usize>,
    #[serde(rename = "W_prime")]
    pub w_prime: Vec<usize>,
    pub u: Vec<f64>,
    pub a: Vec<f64>,
    pub nonzero_on_r: usize,
    #[serde(rename = "W_component")]
    pub w_component: Vec<usize>,
    #[serde(rename = "Z")]
    pub z: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VanishingCombination {
    /// Scaled to `||u||_inf = 1`.
    pub u: Vec<f64>,
    pub a: Vec<f64>,
    pub nonzero_on_r: usize,
    /// `max_{W'} |u|`, relative to `||u||_inf`.
    pub residual_on_w: f64,
}

/// `r` vertices whose evaluation matrix against the basis is nonsingular,
/// chosen greedily in vertex order.
pub fn pick_independence_set(basis: &[Vec<f64>]) -> Result<Vec<usize>, BoundsError> {
    let r = basis.len();
    let n = basis.first().map_or(0, Vec::len);
    let column = |c: usize| -> Vec<f64> { basis.iter().map(|f| f[c]).collect() };
    let scale = (0..n).map(|c| norm2(&column(c))).fold(0.0f64, f64::max);
    let mut chosen = Vec::with_capacity(r);
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(r);
    for c in 0..n {
        if chosen.len() == r {
            break;
        }
        let mut v = column(c);
        for _ in 0..2 {
            for e in &q {
                let p = dot(e, &v);
                for (x, y) in v.iter_mut().zip(e) {
                    *x -= p * y;
                }
            }
        }
        let len = norm2(&v);
        if len > NONZERO_TOL * scale {
            v.iter_mut().for_each(|x| *x /= len);
            q.push(v);
            chosen.push(c);
        }
    }
    if chosen.len() < r {
        return Err(BoundsError::RankDeficient {
            expected: r,
            found: chosen.len(),
        });
    }
    Ok(chosen)
}

fn combine(basis: &[Vec<f64>], a: &[f64]) -> Vec<f64> {
    let mut u = vec![0.0; basis[0].len()];
    for (ai, f) in a.iter().zip(basis) {
        for (x, y) in u.iter_mut().zip(f) {
            *x += ai * y;
        }
    }
    u
}

/// A combination of the basis vanishing on `w_prime` with as many nonzero
/// values on `r_set` as the candidate search finds.
pub fn vanishing_combination(
    basis: &[Vec<f64>],
    w_prime: &[usize],
    r_set: &[usize],
    seed: u64,
) -> Result<VanishingCombination, BoundsError> {
    let r = basis.len();
    if r < 2 {
        return Err(BoundsError::Degenerate(r));
    }
    let rows: Vec<Vec<f64>> = w_prime
        .iter()
        .map(|&x| basis.iter().map(|f| f[x]).collect())
        .collect();
    let null = modified_gram_schmidt(&echelon(&rows, r, 1e-9).null_space(), 1e-12);
    if null.is_empty() {
        return Err(BoundsError::RankDeficient {
            expected: r,
            found: r,
        });
    }

    let mut candidates = null.clone();
    candidates.push((0..r).map(|i| null.iter().map(|v| v[i]).sum()).collect());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIALS {
        let w: Vec<f64> = null.iter().map(|_| rng.random_range(-1.0..1.0)).collect();
        candidates.push(
            (0..r)
                .map(|i| null.iter().zip(&w).map(|(v, c)| c * v[i]).sum())
                .collect(),
        );
    }

    let mut best: Option<VanishingCombination> = None;
    for a in candidates {
        let u = combine(basis, &a);
        let scale = norm_inf(&u);
        if !(scale > 0.0) {
            continue;
        }
        let residual_on_w = w_prime.iter().fold(0.0f64, |m, &x| m.max(u[x].abs())) / scale;
        if residual_on_w > NONZERO_TOL {
            continue;
        }
        let nonzero_on_r = r_set
            .iter()
            .filter(|&&x| u[x].abs() > NONZERO_TOL * scale)
            .count();
        if best
            .as_ref()
            .is_some_and(|b| b.nonzero_on_r >= nonzero_on_r)
        {
            continue;
        }
        let done = nonzero_on_r == r_set.len();
        best = Some(VanishingCombination {
            u: u.iter().map(|x| x / scale).collect(),
            a: a.iter().map(|x| x / scale).collect(),
            nonzero_on_r,
            residual_on_w,
        });
        if done {
            break;
        }
    }
    best.ok_or(BoundsError::RankDeficient {
        expected: r,
        found: r,
    })
}

/// The connected component of nodes of `u` containing `w_prime`, and the
/// members of that component with a neighbor outside it.
pub fn node_component(
    g: &Graph,
    u: &[f64],
    w_prime: &[usize],
    tol_zero: f64,
) -> Result<(Vec<usize>, Vec<usize>), BoundsError> {
    let n = g.vertex_count();
    if u.len() != n {
        return Err(BoundsError::Dimension {
            expected: n,
            found: u.len(),
        });
    }
    let scale = norm_inf(u);
    if !(scale > 0.0) {
        return Err(NodalError::ZeroFunction.into());
    }
    let is_node = |v: usize| u[v].abs() <= tol_zero * scale;
    if let Some(&bad) = w_prime.iter().find(|&&v| !is_node(v)) {
        return Err(BoundsError::NotANode(bad));
    }
    let mut inside = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &v in w_prime {
        if !inside[v] {
            inside[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if !inside[w] && is_node(w) {
                inside[w] = true;
                queue.push_back(w);
            }
        }
    }
    let component: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
    let z = component
        .iter()
        .copied()
        .filter(|&v| g.neighbors(v).iter().any(|&w| !inside[w]))
        .collect();
    Ok((component, z))
}

/// First `k` vertices reached by breadth-first search from `root`.
fn bfs_ball(g: &Graph, root: usize, k: usize) -> Vec<usize> {
    let mut seen = vec![false; g.vertex_count()];
    let mut out = vec![root];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if out.len() == k {
                break;
            }
            if !seen[w] {
                seen[w] = true;
                out.push(w);
                queue.push_back(w);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Runs the full construction for the eigenspace of `λ_n` spanned by
/// `basis`, trying a breadth-first ball of size `⌈r/2⌉` around every vertex
/// as `W'` and keeping the one whose combination is nonzero on most of `R`.
pub fn multiplicity_certificate(
    g: &Graph,
    basis: &[Vec<f64>],
    n: usize,
    tol_zero: f64,
    seed: u64,
) -> Result<MultiplicityCertificate, BoundsError> {
    let r = basis.len();
    if r < 2 {
        return Err(BoundsError::Degenerate(r));
    }
    let r_set = pick_independence_set(basis)?;
    let k = r.div_ceil(2);
    let mut balls: Vec<Vec<usize>> = (0..g.vertex_count())
        .map(|root| bfs_ball(g, root, k))
        .filter(|b| b.len() == k)
        .collect();
    balls.sort();
    balls.dedup();

    let mut best: Option<(Vec<usize>, VanishingCombination)> = None;
    for (i, ball) in balls.into_iter().enumerate() {
        let vc = vanishing_combination(basis, &ball, &r_set, seed.wrapping_add(i as u64))?;
        if best
            .as_ref()
            .is_some_and(|(_, b)| b.nonzero_on_r >= vc.nonzero_on_r)
        {
            continue;
        }
        let done = vc.nonzero_on_r == r;
        best = Some((ball, vc));
        if done {
            break;
        }
    }
    let (w_prime, vc) = best.ok_or(BoundsError::Dimension {
        expected: k,
        found: g.vertex_count(),
    })?;
    let (w_component, z) = node_component(g, &vc.u, &w_prime, tol_zero)?;
    Ok(MultiplicityCertificate {
        n,
        r,
        r_set,
        w_prime,
        u: vc.u,
        a: vc.a,
        nonzero_on_r: vc.nonzero_on_r,
        w_component,
        z,
    })
}

impl MultiplicityCertificate {
    /// Nonzero values on `R` against `⌈r/2⌉`.
    pub fn vanishing_report(&self) -> BoundReport {
        BoundReport::evaluate(
            Check::VanishingCombination,
            Relation::AtLeast,
            self.nonzero_on_r as f64,
            self.r.div_ceil(2) as f64,
        )
        .at_index(self.n)
    }
}

fn vg_skip_reason(vg: Option<VgStatus>) -> Option<&'static str> {
    match vg {
        None => Some("volume growth not checked"),
        Some(VgStatus::Violated) => Some("graph violates volume growth"),
        Some(_) => None,
    }
}

/// `|Z| >= sqrt(r/2) - 1`, evaluated only when volume growth is not refuted.
pub fn boundary_growth_check(cert: &MultiplicityCertificate, vg: Option<VgStatus>) -> BoundReport {
    let observed = cert.z.len() as f64;
    let bound = (cert.r as f64 / 2.0).sqrt() - 1.0;
    let report = match vg_skip_reason(vg) {
        Some(reason) => BoundReport::skipped(
            Check::BoundaryGrowth,
            Relation::AtLeast,
            observed,
            Some(bound),
            reason,
        ),
        None => BoundReport::evaluate(Check::BoundaryGrowth, Relation::AtLeast, observed, bound),
    };
    report.at_index(cert.n)
}

/// `r <= 2 [6(n-1) + 15(2g-2)]^2` as stated, and with `2g-2` clamped at 0.
pub fn multiplicity_check(r: usize, n: usize, facts: &GraphFacts) -> [BoundReport; 2] {
    let observed = r as f64;
    let checks = [Check::MultiplicityGenus, Check::MultiplicityGenusClamped];
    let source = facts.genus.source;
    let reason = match facts.genus_branch() {
        Err(reason) => Some(reason),
        Ok(_) => vg_skip_reason(facts.vg).or((n < 2).then_some(OUTSIDE_REGIME)),
    };
    let reports = match facts.genus.genus.filter(|_| facts.three_connected) {
        Some(g) => {
            let euler = 2.0 * g as f64 - 2.0;
            let base = 6.0 * (n as f64 - 1.0);
            let stated = 2.0 * (base + 15.0 * euler).powi(2);
            let clamped = 2.0 * (base + 15.0 * euler.max(0.0)).powi(2);
            let make = |check, bound| match reason {
                Some(reason) => {
                    BoundReport::skipped(check, Relation::AtMost, observed, Some(bound), reason)
                }
                None => BoundReport::evaluate(check, Relation::AtMost, observed, bound),
            };
            [
                make(checks[0], stated).with_clamped(clamped),
                make(checks[1], clamped),
            ]
        }
        None => checks.map(|c| {
            BoundReport::skipped(
                c,
                Relation::AtMost,
                observed,
                None,
                reason.unwrap_or("genus unknown"),
            )
        }),
    };
    reports.map(|r| r.at_index(n).with_genus_source(source))
}
