use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    boundary_growth_check, davies_check, domains_degree_check, domains_genus_check,
    domains_vs_codimension_check, multiplicity_certificate, multiplicity_check, BoundReport,
    BoundsError, GenusInfo, GraphFacts, MultiplicityCertificate, Witness,
};
use crate::graph::{Graph, VgStatus};
use crate::linalg::norm2;
use crate::nodal::{
    build_islands, codimension_check, phi_rank_check, phi_system, small_island_adjacency,
    strong_domains, DEFAULT_TOL_ZERO,
};
use crate::spectral::{eigendecompose, SchrodingerOperator, DEFAULT_TOL_EIG};

#[derive(Debug, Clone, PartialEq)]
pub struct AuditOptions {
    pub tol_zero: f64,
    pub tol_eig: f64,
    pub tol_residual: f64,
    pub genus: GenusInfo,
    pub vg: Option<VgStatus>,
    /// Extra seeded combinations per eigenspace of dimension at least 2.
    pub random_combinations: usize,
    pub seed: u64,
    pub graph_id: Option<String>,
}

impl Default for AuditOptions {
    fn default() -> Self {
        Self {
            tol_zero: DEFAULT_TOL_ZERO,
            tol_eig: DEFAULT_TOL_EIG,
            tol_residual: 1e-8,
            genus: GenusInfo::unknown(),
            vg: None,
            random_combinations: 0,
            seed: 42,
            graph_id: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Audit {
    pub reports: Vec<BoundReport>,
    pub certificates: Vec<MultiplicityCertificate>,
}

impl Audit {
    pub fn violations(&self) -> impl Iterator<Item = &BoundReport> {
        self.reports.iter().filter(|r| r.violated())
    }

    /// Violations of the checks that decide the exit status.
    pub fn gating_violations(&self) -> usize {
        self.violations()
            .filter(|r| r.check.gates_exit_code())
            .count()
    }
}

fn seeded_combinations(basis: &[Vec<f64>], count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut v = vec![0.0; basis[0].len()];
        for f in basis {
            let c: f64 = rng.random_range(-1.0..1.0);
            for (x, y) in v.iter_mut().zip(f) {
                *x += c * y;
            }
        }
        let len = norm2(&v);
        if len > 1e-6 {
            out.push(v.into_iter().map(|x| x / len).collect());
        }
    }
    out
}

/// Every check at every multiplicity-group head, for each basis
/// eigenfunction and any extra seeded combinations.
pub fn full_audit(op: &SchrodingerOperator, options: &AuditOptions) -> Result<Audit, BoundsError> {
    let g: &Graph = op.graph();
    g.require_connected()?;
    let spectrum = eigendecompose(op, options.tol_eig)?;
    if !spectrum.residual_ok(options.tol_residual) {
        return Err(BoundsError::InaccurateSpectrum {
            residual: spectrum.max_residual,
            allowed: options.tol_residual * (1.0 + spectrum.operator_norm_inf),
        });
    }
    let facts = GraphFacts::of(g, options.genus, options.vg);
    let edges = g.edges();
    let witness = |n: usize, u: &[f64]| Witness {
        vertex_count: g.vertex_count(),
        edges: edges.clone(),
        eigenindex: n,
        eigenfunction: u.to_vec(),
    };

    let mut reports = Vec::new();
    let mut certificates = Vec::new();
    for group in &spectrum.groups {
        let n = group.head();
        let r = group.len;
        let basis = &spectrum.eigenvectors[group.indices()];
        let group_seed = options.seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        let mut functions = basis.to_vec();
        if r >= 2 {
            functions.extend(seeded_combinations(
                basis,
                options.random_combinations,
                group_seed,
            ));
        }

        for u in &functions {
            let np = strong_domains(g, u, options.tol_zero)?;
            let is = build_islands(&np, g);
            let ps = phi_system(&is, &np, op);
            let t = np.t();
            let mut batch = vec![
                davies_check(t, n, r),
                domains_vs_codimension_check(t, n, ps.y),
                domains_degree_check(t, n, facts.max_degree),
            ];
            batch.extend(domains_genus_check(t, n, &facts));
            batch.extend(phi_rank_check(&ps, &facts, n));
            batch.extend(codimension_check(&ps, &np, &facts, n));
            batch.push(
                small_island_adjacency(&is, &np, op, options.tol_residual)?
                    .to_report()
                    .at_index(n),
            );
            for mut report in batch {
                if report.violated() {
                    report.witness = Some(witness(n, u));
                }
                reports.push(report);
            }
        }

        let mut batch = Vec::new();
        if r >= 2 {
            let cert = multiplicity_certificate(g, basis, n, options.tol_zero, group_seed)?;
            batch.push((cert.vanishing_report(), cert.u.clone()));
            batch.push((boundary_growth_check(&cert, options.vg), cert.u.clone()));
            certificates.push(cert);
        }
        for report in multiplicity_check(r, n, &facts) {
            batch.push((report, basis[0].clone()));
        }
        for (mut report, u) in batch {
            if report.violated() {
                report.witness = Some(witness(n, &u));
            }
            reports.push(report);
        }
    }
    for report in &mut reports {
        report.graph_id.clone_from(&options.graph_id);
    }
    Ok(Audit {
        reports,
        certificates,
    })
}
