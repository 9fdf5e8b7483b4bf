use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VgStatus};

/// Reason recorded for checks evaluated on the ground state.
pub const OUTSIDE_REGIME: &str = "outside theorem regime (n = 1)";

/// Slack for comparing exact integer/rational quantities held in `f64`.
const COMPARE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// `t <= n + r - 1`.
    Davies,
    /// `t <= n + y - 1`.
    DomainsVsCodimension,
    /// `t <= d (n - 1)`.
    DomainsDegree,
    /// `t <= 6(n-1) + 14(2g-2)`.
    DomainsGenus,
    DomainsGenusClamped,
    /// `dim W0 >= |S| / d`.
    PhiRankDegree,
    /// `dim W0 >= (|S| - 14(2g-2)) / 6`.
    PhiRankGenus,
    PhiRankGenusClamped,
    /// `y <= (d-1) t / d`.
    CodimensionDegree,
    /// `y <= 5t/6 + 14(2g-2)/6`.
    CodimensionGenus,
    CodimensionGenusClamped,
    /// Number of nodes in `V0` adjacent to fewer than three islands.
    SmallIslandAdjacency,
    /// Vertices of `R` where the vanishing combination is nonzero.
    VanishingCombination,
    /// `|Z| >= sqrt(r/2) - 1`.
    BoundaryGrowth,
    /// `r <= 2 [6(n-1) + 15(2g-2)]^2`.
    MultiplicityGenus,
    MultiplicityGenusClamped,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Davies => "davies",
            Check::DomainsVsCodimension => "domains_vs_codimension",
            Check::DomainsDegree => "domains_degree",
            Check::DomainsGenus => "domains_genus",
            Check::DomainsGenusClamped => "domains_genus_clamped",
            Check::PhiRankDegree => "phi_rank_degree",
            Check::PhiRankGenus => "phi_rank_genus",
            Check::PhiRankGenusClamped => "phi_rank_genus_clamped",
            Check::CodimensionDegree => "codimension_degree",
            Check::CodimensionGenus => "codimension_genus",
            Check::CodimensionGenusClamped => "codimension_genus_clamped",
            Check::SmallIslandAdjacency => "small_island_adjacency",
            Check::VanishingCombination => "vanishing_combination",
            Check::BoundaryGrowth => "boundary_growth",
            Check::MultiplicityGenus => "multiplicity_genus",
            Check::MultiplicityGenusClamped => "multiplicity_genus_clamped",
        }
    }

    /// Checks whose violations count toward the `verify` exit code.
    pub fn gates_exit_code(self) -> bool {
        matches!(self, Check::Davies | Check::DomainsDegree)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `observed <= bound`.
    AtMost,
    /// `observed >= bound`.
    AtLeast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Violated,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenusSource {
    RotationSystem,
    ExhaustiveMinimal,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusInfo {
    pub genus: Option<usize>,
    pub source: GenusSource,
}

impl GenusInfo {
    pub fn unknown() -> Self {
        Self {
            genus: None,
            source: GenusSource::Unknown,
        }
    }

    pub fn known(genus: usize, source: GenusSource) -> Self {
        Self {
            genus: Some(genus),
            source,
        }
    }
}

/// Graph-level inputs shared by every check on one operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphFacts {
    pub max_degree: usize,
    pub three_connected: bool,
    pub genus: GenusInfo,
    pub vg: Option<VgStatus>,
}

impl GraphFacts {
    pub fn of(g: &Graph, genus: GenusInfo, vg: Option<VgStatus>) -> Self {
        Self {
            max_degree: g.max_degree(),
            three_connected: g.vertex_connectivity_at_least(3).unwrap_or(false),
            genus,
            vg,
        }
    }

    /// Genus when the genus-dependent branch applies, else the skip reason.
    pub(crate) fn genus_branch(&self) -> Result<usize, &'static str> {
        if !self.three_connected {
            return Err("graph is not 3-connected");
        }
        self.genus.genus.ok_or("genus unknown")
    }
}

/// Reproducible counterexample attached to violated reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub eigenindex: usize,
    pub eigenfunction: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub check: Check,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph_id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub relation: Relation,
    pub observed: f64,
    pub bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_clamped: Option<f64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus_source: Option<GenusSource>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Pure status rule shared by construction and re-checking.
pub fn status_of(relation: Relation, observed: f64, bound: Option<f64>, skipped: bool) -> Status {
    let Some(bound) = bound else {
        return Status::Skipped;
    };
    if skipped {
        return Status::Skipped;
    }
    let slack = COMPARE_EPS * bound.abs().max(1.0);
    let ok = match relation {
        Relation::AtMost => observed <= bound + slack,
        Relation::AtLeast => observed >= bound - slack,
    };
    if ok {
        Status::Holds
    } else {
        Status::Violated
    }
}

impl BoundReport {
    pub fn evaluate(check: Check, relation: Relation, observed: f64, bound: f64) -> Self {
        Self {
            check,
            graph_id: None,
            n: None,
            relation,
            observed,
            bound: Some(bound),
            bound_clamped: None,
            status: status_of(relation, observed, Some(bound), false),
            skip_reason: None,
            genus_source: None,
            witness: None,
        }
    }

    pub fn skipped(
        check: Check,
        relation: Relation,
        observed: f64,
        bound: Option<f64>,
        reason: impl Into<String>,
    ) -> Self {
        Self {
            check,
            graph_id: None,
            n: None,
            relation,
            observed,
            bound,
            bound_clamped: None,
            status: Status::Skipped,
            skip_reason: Some(reason.into()),
            genus_source: None,
            witness: None,
        }
    }

    pub fn at_index(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_genus_source(mut self, source: GenusSource) -> Self {
        self.genus_source = Some(source);
        self
    }

    pub fn with_clamped(mut self, clamped: f64) -> Self {
        self.bound_clamped = Some(clamped);
        self
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn violated(&self) -> bool {
        self.status == Status::Violated
    }

    /// Status recomputed from the stored fields alone.
    pub fn recomputed_status(&self) -> Status {
        status_of(
            self.relation,
            self.observed,
            self.bound,
            self.skip_reason.is_some(),
        )
    }

    /// `observed / bound` for upper bounds and `bound / observed` for lower
    /// bounds; 1 means tight. `None` when the ratio is undefined.
    pub fn tightness(&self) -> Option<f64> {
        if self.status == Status::Skipped {
            return None;
        }
        let bound = self.bound?;
        let (num, den) = match self.relation {
            Relation::AtMost => (self.observed, bound),
            Relation::AtLeast => (bound, self.observed),
        };
        (den > 0.0 && num >= 0.0).then(|| num / den)
    }
}
