//! Numerical verification of nodal-domain and multiplicity bounds.
//!
//! Every inequality is reported as a [`BoundReport`]; violations are values,
//! never errors. Genus-dependent bounds are evaluated twice: with the factor
//! `2g - 2` exactly as written, and with that factor clamped at zero, which
//! is the reading under which the planar (`g = 0`) case is non-vacuous.

mod audit;
mod identity;
mod multiplicity;
mod report;

pub use audit::{full_audit, Audit, AuditOptions};
pub use identity::{duval_reiner_identity, IdentityCheck};
pub use multiplicity::{
    boundary_growth_check, multiplicity_certificate, multiplicity_check, node_component,
    pick_independence_set, vanishing_combination, MultiplicityCertificate, VanishingCombination,
    NONZERO_TOL,
};
pub use report::{
    status_of, BoundReport, Check, GenusInfo, GenusSource, GraphFacts, Relation, Status, Witness,
    OUTSIDE_REGIME,
};

use thiserror::Error;

use crate::graph::GraphError;
use crate::nodal::NodalError;
use crate::spectral::SpectralError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("eigenbasis is rank deficient: {found} independent evaluations of {expected}")]
    RankDeficient { expected: usize, found: usize },
    #[error("construction needs multiplicity at least 2, got {0}")]
    Degenerate(usize),
    #[error("vertex {0} of the vanishing set is not a node")]
    NotANode(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("eigendecomposition residual {residual:e} exceeds {allowed:e}")]
    InaccurateSpectrum { residual: f64, allowed: f64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Nodal(#[from] NodalError),
}

/// Strong domains against eigenvalue index plus multiplicity:
/// `t <= n + r - 1`.
pub fn davies_check(t: usize, n: usize, r: usize) -> BoundReport {
    BoundReport::evaluate(
        Check::Davies,
        Relation::AtMost,
        t as f64,
        (n + r) as f64 - 1.0,
    )
    .at_index(n)
}

/// `t <= n + y - 1`, the count that drives both degree and genus bounds.
pub fn domains_vs_codimension_check(t: usize, n: usize, y: usize) -> BoundReport {
    let bound = (n + y) as f64 - 1.0;
    let r = if n < 2 {
        BoundReport::skipped(
            Check::DomainsVsCodimension,
            Relation::AtMost,
            t as f64,
            Some(bound),
            OUTSIDE_REGIME,
        )
    } else {
        BoundReport::evaluate(
            Check::DomainsVsCodimension,
            Relation::AtMost,
            t as f64,
            bound,
        )
    };
    r.at_index(n)
}

/// `t <= d (n - 1)`.
pub fn domains_degree_check(t: usize, n: usize, d: usize) -> BoundReport {
    let bound = (d * n.saturating_sub(1)) as f64;
    let r = if n < 2 {
        BoundReport::skipped(
            Check::DomainsDegree,
            Relation::AtMost,
            t as f64,
            Some(bound),
            OUTSIDE_REGIME,
        )
    } else {
        BoundReport::evaluate(Check::DomainsDegree, Relation::AtMost, t as f64, bound)
    };
    r.at_index(n)
}

/// `t <= 6(n-1) + 14(2g-2)` as stated, and with `2g-2` clamped at zero.
/// Both are skipped unless the graph is 3-connected with known genus.
pub fn domains_genus_check(t: usize, n: usize, facts: &GraphFacts) -> [BoundReport; 2] {
    let observed = t as f64;
    let source = facts.genus.source;
    let checks = [Check::DomainsGenus, Check::DomainsGenusClamped];
    let reports = match facts.genus_branch() {
        Ok(g) => {
            let euler = 2.0 * g as f64 - 2.0;
            let base = 6.0 * (n as f64 - 1.0);
            let stated = base + 14.0 * euler;
            let clamped = base + 14.0 * euler.max(0.0);
            let make = |check, bound| {
                if n < 2 {
                    BoundReport::skipped(
                        check,
                        Relation::AtMost,
                        observed,
                        Some(bound),
                        OUTSIDE_REGIME,
                    )
                } else {
                    BoundReport::evaluate(check, Relation::AtMost, observed, bound)
                }
            };
            [
                make(checks[0], stated).with_clamped(clamped),
                make(checks[1], clamped),
            ]
        }
        Err(reason) => {
            checks.map(|c| BoundReport::skipped(c, Relation::AtMost, observed, None, reason))
        }
    };
    reports.map(|r| r.at_index(n).with_genus_source(source))
}
