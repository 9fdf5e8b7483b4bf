use serde::{Deserialize, Serialize};

use super::{IslandSet, NodalPartition};
use crate::bounds::{BoundReport, Check, GraphFacts, Relation, OUTSIDE_REGIME};
use crate::linalg::{echelon, modified_gram_schmidt};
use crate::spectral::SchrodingerOperator;

/// Relative pivot threshold for `dim W0`.
pub const PHI_RANK_TOL: f64 = 1e-9;

/// The vectors `φ_v`, `v ∈ V0`, on the domain space, and the subspace they
/// span inside the island-constant functions `W`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhiSystem {
    pub v0: Vec<usize>,
    /// `phi[k][D]` for node `v0[k]` and domain `D`.
    pub phi: Vec<Vec<f64>>,
    /// `dim W = s`.
    pub dim_w: usize,
    pub dim_w0: usize,
    /// Codimension of `W0` in `W`.
    pub y: usize,
    /// Orthonormal basis (on domains) of the complement of `W0` in `W`.
    pub complement_basis: Vec<Vec<f64>>,
    /// Number of small islands `|S|`.
    pub small_islands: usize,
}

pub fn phi_system(is: &IslandSet, np: &NodalPartition, op: &SchrodingerOperator) -> PhiSystem {
    let t = np.t();
    let s = is.s();
    // Island value of φ_v: (1/t(I)) Σ_{w ∈ I} m_vw u(w).
    let island_values: Vec<Vec<f64>> = is
        .v0
        .iter()
        .map(|&v| {
            is.islands
                .iter()
                .map(|island| {
                    let mass: f64 = island
                        .domains
                        .iter()
                        .flat_map(|&d| np.domains[d].vertices.iter())
                        .map(|&w| op.entry(v, w) * np.values[w])
                        .sum();
                    mass / island.domain_count() as f64
                })
                .collect()
        })
        .collect();
    let phi: Vec<Vec<f64>> = island_values
        .iter()
        .map(|row| (0..t).map(|d| row[is.island_of[d]]).collect())
        .collect();

    // Coordinates in the orthonormal basis 1_I / sqrt(t(I)) of W.
    let roots: Vec<f64> = is
        .islands
        .iter()
        .map(|i| (i.domain_count() as f64).sqrt())
        .collect();
    let coords: Vec<Vec<f64>> = island_values
        .iter()
        .map(|row| row.iter().zip(&roots).map(|(x, r)| x * r).collect())
        .collect();
    let ech = echelon(&coords, s, PHI_RANK_TOL);
    let complement: Vec<Vec<f64>> = modified_gram_schmidt(&ech.null_space(), 1e-12)
        .into_iter()
        .map(|c| {
            (0..t)
                .map(|d| c[is.island_of[d]] / roots[is.island_of[d]])
                .collect()
        })
        .collect();
    debug_assert_eq!(complement.len(), s - ech.rank);

    PhiSystem {
        v0: is.v0.clone(),
        phi,
        dim_w: s,
        dim_w0: ech.rank,
        y: s - ech.rank,
        complement_basis: complement,
        small_islands: is.small_count(),
    }
}

fn regime_guard(
    index: usize,
    check: Check,
    relation: Relation,
    observed: f64,
    bound: f64,
) -> Option<BoundReport> {
    (index < 2)
        .then(|| BoundReport::skipped(check, relation, observed, Some(bound), OUTSIDE_REGIME))
}

/// Lower bounds on `dim W0`: `|S|/d` always, and `(|S| - 14(2g-2))/6`
/// (as stated, then with `2g-2` clamped at 0) for 3-connected graphs.
pub fn phi_rank_check(ps: &PhiSystem, facts: &GraphFacts, index: usize) -> Vec<BoundReport> {
    let observed = ps.dim_w0 as f64;
    let small = ps.small_islands as f64;
    let mut out = Vec::with_capacity(3);

    let degree = if facts.max_degree == 0 {
        BoundReport::skipped(
            Check::PhiRankDegree,
            Relation::AtLeast,
            observed,
            None,
            "maximum degree 0",
        )
    } else {
        let bound = small / facts.max_degree as f64;
        regime_guard(
            index,
            Check::PhiRankDegree,
            Relation::AtLeast,
            observed,
            bound,
        )
        .unwrap_or_else(|| {
            BoundReport::evaluate(Check::PhiRankDegree, Relation::AtLeast, observed, bound)
        })
    };
    out.push(degree);

    let source = facts.genus.source;
    match facts.genus_branch() {
        Ok(g) => {
            let euler = 2.0 * g as f64 - 2.0;
            let stated = (small - 14.0 * euler) / 6.0;
            let clamped = (small - 14.0 * euler.max(0.0)) / 6.0;
            for (check, bound) in [
                (Check::PhiRankGenus, stated),
                (Check::PhiRankGenusClamped, clamped),
            ] {
                let r = regime_guard(index, check, Relation::AtLeast, observed, bound)
                    .unwrap_or_else(|| {
                        BoundReport::evaluate(check, Relation::AtLeast, observed, bound)
                    });
                out.push(r.with_genus_source(source));
            }
            out[1].bound_clamped = Some(clamped);
        }
        Err(reason) => {
            for check in [Check::PhiRankGenus, Check::PhiRankGenusClamped] {
                out.push(
                    BoundReport::skipped(check, Relation::AtLeast, observed, None, reason)
                        .with_genus_source(source),
                );
            }
        }
    }
    out.into_iter().map(|r| r.at_index(index)).collect()
}

/// Upper bounds on the codimension `y`: `(d-1) t / d` always, and
/// `5t/6 + 14(2g-2)/6` (as stated, then clamped) for 3-connected graphs.
pub fn codimension_check(
    ps: &PhiSystem,
    np: &NodalPartition,
    facts: &GraphFacts,
    index: usize,
) -> Vec<BoundReport> {
    let observed = ps.y as f64;
    let t = np.t() as f64;
    let mut out = Vec::with_capacity(3);

    let degree = if facts.max_degree == 0 {
        BoundReport::skipped(
            Check::CodimensionDegree,
            Relation::AtMost,
            observed,
            None,
            "maximum degree 0",
        )
    } else {
        let d = facts.max_degree as f64;
        let bound = (d - 1.0) / d * t;
        regime_guard(
            index,
            Check::CodimensionDegree,
            Relation::AtMost,
            observed,
            bound,
        )
        .unwrap_or_else(|| {
            BoundReport::evaluate(Check::CodimensionDegree, Relation::AtMost, observed, bound)
        })
    };
    out.push(degree);

    let source = facts.genus.source;
    match facts.genus_branch() {
        Ok(g) => {
            let euler = 2.0 * g as f64 - 2.0;
            let stated = 5.0 * t / 6.0 + 14.0 * euler / 6.0;
            let clamped = 5.0 * t / 6.0 + 14.0 * euler.max(0.0) / 6.0;
            for (check, bound) in [
                (Check::CodimensionGenus, stated),
                (Check::CodimensionGenusClamped, clamped),
            ] {
                let r = regime_guard(index, check, Relation::AtMost, observed, bound)
                    .unwrap_or_else(|| {
                        BoundReport::evaluate(check, Relation::AtMost, observed, bound)
                    });
                out.push(r.with_genus_source(source));
            }
            out[1].bound_clamped = Some(clamped);
        }
        Err(reason) => {
            for check in [Check::CodimensionGenus, Check::CodimensionGenusClamped] {
                out.push(
                    BoundReport::skipped(check, Relation::AtMost, observed, None, reason)
                        .with_genus_source(source),
                );
            }
        }
    }
    out.into_iter().map(|r| r.at_index(index)).collect()
}
