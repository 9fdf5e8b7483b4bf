//! Randomized and swept experiment campaigns over graph families.
//!
//! A family spec names a family followed by positional and `key=value`
//! parameters; a key that is not a parameter of the family declares a sweep
//! variable (`N=3..8`, inclusive) which may appear in other values:
//!
//! ```text
//! random_connected n=10 p=0.4
//! star N=3..8
//! complete_bipartite 3,N N=3..6
//! ```
//!
//! Randomized families produce `count` graphs per sweep point, seeded from
//! the campaign seed; deterministic families produce one.

use std::collections::BTreeMap;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{full_audit, Audit, AuditOptions, BoundReport, GenusInfo, GenusSource, Status};
use crate::graph::{
    generate_family, minimal_genus, trace_faces, vg_check, Family, Graph, GraphError, VgOptions,
    VgStatus,
};
use crate::nodal::DEFAULT_TOL_ZERO;
use crate::spectral::{laplacian_of, SchrodingerOperator, SpectralError, DEFAULT_TOL_EIG};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExperimentError {
    #[error("family spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

fn spec_err(msg: impl Into<String>) -> ExperimentError {
    ExperimentError::Spec(msg.into())
}

fn parameters(name: &str) -> Option<&'static [&'static str]> {
    Some(match name {
        "star" => &["leaves"],
        "double_star" => &["left", "right"],
        "complete_bipartite" => &["a", "b"],
        "complete" | "cycle" | "path" => &["n"],
        "grid" | "toroidal_grid" => &["rows", "cols"],
        "wheel" => &["rim"],
        "prism" | "octahedron" => &[],
        "random_connected" => &["n", "p", "seed"],
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub name: String,
    /// Raw parameter values, possibly naming a sweep variable.
    values: BTreeMap<&'static str, String>,
    /// Sweep variables with inclusive ranges, in declaration order.
    sweeps: Vec<(String, Vec<String>)>,
    text: String,
}

impl FamilySpec {
    pub fn parse(text: &str) -> Result<Self, ExperimentError> {
        let mut tokens = text.split_whitespace();
        let name = tokens
            .next()
            .ok_or_else(|| spec_err("empty spec"))?
            .to_string();
        let params =
            parameters(&name).ok_or_else(|| spec_err(format!("unknown family {name:?}")))?;
        let mut values = BTreeMap::new();
        let mut positional = Vec::new();
        let mut sweeps = Vec::new();
        for token in tokens {
            match token.split_once('=') {
                Some((key, value)) => {
                    if let Some(&p) = params.iter().find(|&&p| p == key) {
                        values.insert(p, value.to_string());
                    } else {
                        sweeps.push((key.to_string(), expand_range(value)?));
                    }
                }
                None => positional.extend(
                    token
                        .split(',')
                        .filter(|s| !s.is_empty())
                        .map(str::to_string),
                ),
            }
        }
        let mut free = params
            .iter()
            .copied()
            .filter(|p| !values.contains_key(p))
            .collect::<Vec<_>>()
            .into_iter();
        for value in positional {
            let p = free
                .next()
                .ok_or_else(|| spec_err(format!("too many positional values for {name}")))?;
            values.insert(p, value);
        }
        let missing: Vec<&'static str> = free.collect();
        match (missing.as_slice(), sweeps.as_slice()) {
            ([], _) | (["seed"], _) => {}
            ([p], [(var, _)]) | ([p, "seed"], [(var, _)]) => {
                values.insert(*p, var.clone());
            }
            _ => {
                return Err(spec_err(format!(
                    "{name} is missing {}",
                    missing.join(", ")
                )))
            }
        }
        Ok(Self {
            name,
            values,
            sweeps,
            text: text.split_whitespace().join(" "),
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    fn points(&self) -> impl Iterator<Item = BTreeMap<&str, &str>> + '_ {
        let names: Vec<&str> = self.sweeps.iter().map(|(k, _)| k.as_str()).collect();
        self.sweeps
            .iter()
            .map(|(_, vals)| vals.iter().map(String::as_str))
            .multi_cartesian_product()
            .map(move |combo| names.iter().copied().zip(combo).collect())
    }

    fn resolve(&self, point: &BTreeMap<&str, &str>, seed: u64) -> Result<Family, ExperimentError> {
        let get = |p: &str| -> Option<&str> {
            self.values
                .get(p)
                .map(|v| point.get(v.as_str()).copied().unwrap_or(v.as_str()))
        };
        let int = |p: &str| -> Result<usize, ExperimentError> {
            let raw = get(p).ok_or_else(|| spec_err(format!("missing {p}")))?;
            raw.parse()
                .map_err(|_| spec_err(format!("{p}={raw:?} is not a nonnegative integer")))
        };
        Ok(match self.name.as_str() {
            "star" => Family::Star {
                leaves: int("leaves")?,
            },
            "double_star" => Family::DoubleStar {
                left: int("left")?,
                right: int("right")?,
            },
            "complete_bipartite" => Family::CompleteBipartite {
                a: int("a")?,
                b: int("b")?,
            },
            "complete" => Family::Complete { n: int("n")? },
            "cycle" => Family::Cycle { n: int("n")? },
            "path" => Family::Path { n: int("n")? },
            "grid" => Family::Grid {
                rows: int("rows")?,
                cols: int("cols")?,
            },
            "toroidal_grid" => Family::ToroidalGrid {
                rows: int("rows")?,
                cols: int("cols")?,
            },
            "wheel" => Family::Wheel { rim: int("rim")? },
            "prism" => Family::Prism,
            "octahedron" => Family::Octahedron,
            "random_connected" => {
                let raw = get("p").ok_or_else(|| spec_err("missing p"))?;
                let p = raw
                    .parse()
                    .map_err(|_| spec_err(format!("p={raw:?} is not a number")))?;
                let seed = match get("seed") {
                    Some(s) => s
                        .parse()
                        .map_err(|_| spec_err(format!("seed={s:?} is not an integer")))?,
                    None => seed,
                };
                Family::RandomConnected {
                    n: int("n")?,
                    p,
                    seed,
                }
            }
            other => return Err(spec_err(format!("unknown family {other:?}"))),
        })
    }

    /// Concrete families: every sweep point, repeated `count` times with
    /// consecutive seeds when the family is randomized.
    pub fn families(&self, count: usize, seed: u64) -> Result<Vec<Family>, ExperimentError> {
        let mut out = Vec::new();
        let mut next_seed = seed;
        for point in self.points() {
            let first = self.resolve(&point, next_seed)?;
            if first.is_random() && !self.values.contains_key("seed") {
                out.push(first);
                for _ in 1..count {
                    next_seed = next_seed.wrapping_add(1);
                    out.push(self.resolve(&point, next_seed)?);
                }
                next_seed = next_seed.wrapping_add(1);
            } else {
                out.push(first);
            }
        }
        Ok(out)
    }
}

fn expand_range(value: &str) -> Result<Vec<String>, ExperimentError> {
    match value.split_once("..") {
        None => Ok(vec![value.to_string()]),
        Some((lo, hi)) => {
            let parse = |s: &str| {
                s.trim_start_matches('=')
                    .parse::<usize>()
                    .map_err(|_| spec_err(format!("bad range bound {s:?}")))
            };
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if lo > hi {
                return Err(spec_err(format!("empty range {value}")));
            }
            Ok((lo..=hi).map(|k| k.to_string()).collect())
        }
    }
}

/// One graph plus operator in a campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub id: String,
    pub family: Family,
    /// Seed of a uniform diagonal shift in `[-amplitude, amplitude]`.
    pub potential: Option<PotentialSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub seed: u64,
    pub amplitude: f64,
}

impl InstanceSpec {
    pub fn build(&self) -> Result<(Graph, SchrodingerOperator), ExperimentError> {
        let g = generate_family(&self.family)?;
        let mut op = laplacian_of(&g);
        if let Some(p) = self.potential {
            let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
            let shift: Vec<f64> = (0..g.vertex_count())
                .map(|_| rng.random_range(-p.amplitude..=p.amplitude))
                .collect();
            op = op.shifted(&shift)?;
        }
        Ok((g, op))
    }
}

/// At least 500 random connected graphs on 3 to 12 vertices over five edge
/// densities; every other instance carries a random potential.
pub fn standard_corpus(seed: u64) -> Vec<InstanceSpec> {
    const DENSITIES: [f64; 5] = [0.25, 0.4, 0.55, 0.7, 0.85];
    (0..520u64)
        .map(|i| {
            let n = 3 + (i % 10) as usize;
            let p = DENSITIES[(i / 10 % 5) as usize];
            InstanceSpec {
                id: format!("corpus-{i:03}"),
                family: Family::RandomConnected {
                    n,
                    p,
                    seed: seed.wrapping_add(i),
                },
                potential: (i % 2 == 1).then_some(PotentialSpec {
                    seed: seed.wrapping_add(1_000_000 + i),
                    amplitude: 2.0,
                }),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignOptions {
    pub tol_zero: f64,
    pub tol_eig: f64,
    pub tol_residual: f64,
    pub seed: u64,
    /// Rotation systems enumerated per graph by the genus search.
    pub genus_budget: u64,
    pub vg: VgOptions,
    pub random_combinations: usize,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        Self {
            tol_zero: DEFAULT_TOL_ZERO,
            tol_eig: DEFAULT_TOL_EIG,
            tol_residual: 1e-8,
            seed: 42,
            genus_budget: 20_000,
            vg: VgOptions::default(),
            random_combinations: 1,
        }
    }
}

/// Genus from the family's natural embedding when it has one, else from
/// the budgeted exhaustive search. Only 3-connected graphs are searched,
/// since no other graph reaches a genus-dependent check.
pub fn resolve_genus(
    family: Option<&Family>,
    g: &Graph,
    budget: u64,
) -> Result<GenusInfo, GraphError> {
    if let Some(rot) = family.and_then(|f| f.embedding(g)) {
        return Ok(GenusInfo::known(
            trace_faces(g, &rot)?.genus,
            GenusSource::RotationSystem,
        ));
    }
    if !g.vertex_connectivity_at_least(3)? {
        return Ok(GenusInfo::unknown());
    }
    Ok(match minimal_genus(g, budget)?.genus() {
        Some(genus) => GenusInfo::known(genus, GenusSource::ExhaustiveMinimal),
        None => GenusInfo::unknown(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceOutcome {
    pub id: String,
    pub family: String,
    pub vertices: usize,
    pub edges: usize,
    pub three_connected: bool,
    pub genus: Option<usize>,
    pub genus_source: GenusSource,
    pub vg: VgStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub audit: Option<Audit>,
}

pub fn run_instance(
    spec: &InstanceSpec,
    options: &CampaignOptions,
) -> Result<InstanceOutcome, ExperimentError> {
    let (g, op) = spec.build()?;
    let genus = resolve_genus(Some(&spec.family), &g, options.genus_budget)?;
    let vg = vg_check(&g, &options.vg)?.status;
    let audit_options = AuditOptions {
        tol_zero: options.tol_zero,
        tol_eig: options.tol_eig,
        tol_residual: options.tol_residual,
        genus,
        vg: Some(vg),
        random_combinations: options.random_combinations,
        seed: options.seed,
        graph_id: Some(spec.id.clone()),
    };
    let (audit, error) = match full_audit(&op, &audit_options) {
        Ok(a) => (Some(a), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(InstanceOutcome {
        id: spec.id.clone(),
        family: spec.family.to_string(),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        three_connected: g.vertex_connectivity_at_least(3)?,
        genus: genus.genus,
        genus_source: genus.source,
        vg,
        error,
        audit,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckStats {
    pub holds: usize,
    pub violated: usize,
    pub skipped: usize,
    /// Reports with `observed == bound`.
    pub tight: usize,
    pub max_tightness: Option<f64>,
    pub mean_tightness: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub spec: String,
    pub seed: u64,
    pub instances: usize,
    pub errors: usize,
    /// Violations of the checks that decide the exit status.
    pub gating_violations: usize,
    pub checks: BTreeMap<String, CheckStats>,
    pub outcomes: Vec<InstanceOutcome>,
    pub violations: Vec<BoundReport>,
}

impl CampaignSummary {
    pub fn reports(&self) -> impl Iterator<Item = &BoundReport> {
        self.outcomes
            .iter()
            .filter_map(|o| o.audit.as_ref())
            .flat_map(|a| a.reports.iter())
    }
}

/// Runs every instance in parallel; results keep the input order.
pub fn run_campaign(
    label: &str,
    instances: &[InstanceSpec],
    options: &CampaignOptions,
) -> Result<CampaignSummary, ExperimentError> {
    let outcomes: Vec<InstanceOutcome> = instances
        .par_iter()
        .map(|spec| run_instance(spec, options))
        .collect::<Result<_, _>>()?;

    let mut checks: BTreeMap<String, CheckStats> = BTreeMap::new();
    let mut ratios: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    let mut violations = Vec::new();
    for report in outcomes
        .iter()
        .filter_map(|o| o.audit.as_ref())
        .flat_map(|a| &a.reports)
    {
        let name = report.check.name().to_string();
        let stats = checks.entry(name.clone()).or_default();
        match report.status {
            Status::Holds => stats.holds += 1,
            Status::Violated => {
                stats.violated += 1;
                violations.push(report.clone());
            }
            Status::Skipped => stats.skipped += 1,
        }
        if let Some(ratio) = report.tightness() {
            if (ratio - 1.0).abs() <= 1e-9 {
                stats.tight += 1;
            }
            ratios.entry(name).or_default().push(ratio);
        }
    }
    for (name, values) in ratios {
        let stats = checks.get_mut(&name).expect("stats exist for every ratio");
        stats.max_tightness = values.iter().copied().reduce(f64::max);
        stats.mean_tightness = Some(values.iter().sum::<f64>() / values.len() as f64);
    }
    let gating_violations = violations
        .iter()
        .filter(|r| r.check.gates_exit_code())
        .count();
    Ok(CampaignSummary {
        spec: label.to_string(),
        seed: options.seed,
        instances: outcomes.len(),
        errors: outcomes.iter().filter(|o| o.error.is_some()).count(),
        gating_violations,
        checks,
        outcomes,
        violations,
    })
}

/// Instances for a family spec, ids numbered in order.
pub fn instances_from_spec(
    spec: &FamilySpec,
    count: usize,
    seed: u64,
    potential: Option<f64>,
) -> Result<Vec<InstanceSpec>, ExperimentError> {
    Ok(spec
        .families(count, seed)?
        .into_iter()
        .enumerate()
        .map(|(i, family)| InstanceSpec {
            id: format!("{}-{i:03}", spec.name),
            family,
            potential: potential.map(|amplitude| PotentialSpec {
                seed: seed.wrapping_add(1_000_000 + i as u64),
                amplitude,
            }),
        })
        .collect())
}
