//! Acceptance suite. Each criterion prints one PASS or FAIL line; the
//! process exits nonzero if any criterion fails.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nodal_geometry::bounds::{
    davies_check, domains_degree_check, duval_reiner_identity, Check, GenusInfo, GenusSource,
    GraphFacts, Status, NONZERO_TOL,
};
use nodal_geometry::experiment::{
    run_campaign, standard_corpus, CampaignOptions, CampaignSummary, InstanceSpec,
};
use nodal_geometry::graph::{generate_family, minimal_genus, trace_faces, Family, Graph, VgStatus};
use nodal_geometry::linalg::SymMatrix;
use nodal_geometry::nodal::{
    build_islands, codimension_check, phi_rank_check, phi_system, strong_domains, DEFAULT_TOL_ZERO,
};
use nodal_geometry::spectral::{eigendecompose, laplacian_of, DEFAULT_TOL_EIG};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn corpus() -> Vec<InstanceSpec> {
    standard_corpus(42)
}

fn corpus_summary() -> CampaignSummary {
    run_campaign("corpus", &corpus(), &CampaignOptions::default()).expect("corpus runs")
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let p = rng.random_range(0.2..0.9);
    generate_family(&Family::RandomConnected {
        n,
        p,
        seed: rng.random(),
    })
    .unwrap()
}

/// Values in {-2,-1,0,1,2} scaled by random magnitudes, so nodes occur often.
fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let u: Vec<f64> = (0..n)
            .map(|_| f64::from(rng.random_range(-2i32..=2)) * rng.random_range(0.5..1.5))
            .collect();
        if u.iter().any(|&x| x != 0.0) {
            return u;
        }
    }
}

fn star_sharpness() -> Outcome {
    let start = Instant::now();
    for leaves in 3..=10 {
        let g = generate_family(&Family::Star { leaves }).unwrap();
        let op = laplacian_of(&g);
        let spec = eigendecompose(&op, DEFAULT_TOL_EIG).map_err(|e| e.to_string())?;
        let mut expected = vec![0.0];
        expected.extend(std::iter::repeat_n(1.0, leaves - 1));
        expected.push(leaves as f64 + 1.0);
        for (got, want) in spec.eigenvalues.iter().zip(&expected) {
            ensure!(
                (got - want).abs() <= 1e-8,
                "K1,{leaves}: eigenvalue {got} vs {want}"
            );
        }
        ensure!(
            spec.eigenvalues.len() == expected.len(),
            "K1,{leaves}: wrong spectrum size"
        );
        let r = spec.group_of(2).map(|gr| gr.len).unwrap_or(0);
        ensure!(r == leaves - 1, "K1,{leaves}: multiplicity {r}");

        let mut u = vec![0.0];
        u.extend(std::iter::repeat_n(1.0, leaves - 1));
        u.push(-(leaves as f64 - 1.0));
        let residual = op
            .apply(&u)
            .iter()
            .zip(&u)
            .fold(0.0f64, |m, (au, x)| m.max((au - x).abs()));
        ensure!(
            residual <= 1e-12,
            "K1,{leaves}: test function is not an eigenfunction"
        );
        let t = strong_domains(&g, &u, DEFAULT_TOL_ZERO)
            .map_err(|e| e.to_string())?
            .t();
        ensure!(t == leaves, "K1,{leaves}: t = {t}");
        for report in [
            davies_check(t, 2, r),
            domains_degree_check(t, 2, g.max_degree()),
        ] {
            ensure!(
                report.status == Status::Holds && report.bound == Some(leaves as f64),
                "K1,{leaves}: {} bound {:?} status {:?}",
                report.check.name(),
                report.bound,
                report.status
            );
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("N = 3..10, t = N meets both bounds, {elapsed:.2?}"))
}

/// Rank of an integer matrix by fraction-free elimination.
fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            for j in (c..cols).rev() {
                m[i][j] = (m[rank][c] * m[i][j] - m[i][c] * m[rank][j]) / prev;
            }
        }
        prev = m[rank][c];
        rank += 1;
    }
    rank
}

fn phi_fixture() -> Outcome {
    let g = generate_family(&Family::Star { leaves: 3 }).unwrap();
    let op = laplacian_of(&g);
    let np =
        strong_domains(&g, &[0.0, 1.0, 1.0, -2.0], DEFAULT_TOL_ZERO).map_err(|e| e.to_string())?;
    let is = build_islands(&np, &g);
    let ps = phi_system(&is, &np, &op);

    ensure!(
        is.s() == 3 && is.small_count() == 3,
        "s = {}, small = {}",
        is.s(),
        is.small_count()
    );
    ensure!(ps.v0 == vec![0], "V0 = {:?}", ps.v0);
    let mut exact = Vec::new();
    for row in &ps.phi {
        let ints: Vec<i64> = row.iter().map(|x| x.round() as i64).collect();
        ensure!(
            row.iter()
                .zip(&ints)
                .all(|(x, k)| (x - *k as f64).abs() <= 1e-12),
            "phi row {row:?} is not integral"
        );
        exact.push(ints);
    }
    ensure!(exact == vec![vec![-1, -1, 2]], "phi_center = {exact:?}");
    let rank = integer_rank(&exact);
    ensure!(
        rank == 1 && ps.dim_w0 == 1,
        "dim W0 = {} (exact rank {rank})",
        ps.dim_w0
    );
    ensure!(
        ps.dim_w == 3 && ps.y == 2 && 3 - rank == 2,
        "dim W = {}, y = {}",
        ps.dim_w,
        ps.y
    );

    let facts = GraphFacts::of(&g, GenusInfo::unknown(), None);
    let rank_report = phi_rank_check(&ps, &facts, 2)
        .into_iter()
        .find(|r| r.check == Check::PhiRankDegree)
        .ok_or("no rank report")?;
    let codim_report = codimension_check(&ps, &np, &facts, 2)
        .into_iter()
        .find(|r| r.check == Check::CodimensionDegree)
        .ok_or("no codimension report")?;
    ensure!(
        rank_report.observed == 1.0
            && rank_report.bound == Some(1.0)
            && rank_report.status == Status::Holds,
        "rank report {rank_report:?}"
    );
    ensure!(
        codim_report.observed == 2.0
            && codim_report.bound == Some(2.0)
            && codim_report.status == Status::Holds,
        "codimension report {codim_report:?}"
    );
    Ok("s = 3, phi = (-1,-1,2), dim W0 = 1, y = 2, both bounds tight".into())
}

fn corpus_soundness() -> Outcome {
    let start = Instant::now();
    let specs = corpus();
    let potentials = specs.iter().filter(|s| s.potential.is_some()).count();
    let max_n = specs
        .iter()
        .map(|s| s.build().unwrap().0.vertex_count())
        .max()
        .unwrap_or(0);
    ensure!(
        specs.len() >= 500 && max_n <= 12,
        "{} instances, max |V| {max_n}",
        specs.len()
    );
    ensure!(
        potentials > 0 && potentials < specs.len(),
        "{potentials} instances with potential"
    );

    let summary =
        run_campaign("corpus", &specs, &CampaignOptions::default()).map_err(|e| e.to_string())?;
    ensure!(summary.errors == 0, "{} instances failed", summary.errors);
    let mut checked = 0;
    for report in summary.reports() {
        if !matches!(report.check, Check::Davies | Check::DomainsDegree)
            || report.n.is_none_or(|n| n < 2)
        {
            continue;
        }
        ensure!(
            report.status == Status::Holds,
            "{} violated on {:?} at n = {:?}",
            report.check.name(),
            report.graph_id,
            report.n
        );
        checked += 1;
    }
    // One Davies and one degree report per basis vector at every head.
    let expected: usize = specs
        .iter()
        .map(|s| s.build().unwrap().1)
        .map(|op| eigendecompose(&op, DEFAULT_TOL_EIG).unwrap())
        .map(|spec| {
            spec.groups
                .iter()
                .filter(|g| g.head() >= 2)
                .map(|g| g.len)
                .sum::<usize>()
        })
        .sum();
    ensure!(
        checked >= 2 * expected,
        "{checked} reports for {expected} basis functions"
    );
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    Ok(format!(
        "{} instances, {checked} reports, 0 violations, {elapsed:.2?}",
        specs.len()
    ))
}

fn planar_suite() -> Vec<Family> {
    let mut out = vec![Family::Complete { n: 4 }, Family::Prism, Family::Octahedron];
    out.extend((5..=8).map(|rim| Family::Wheel { rim }));
    out
}

fn family_instances(families: &[Family]) -> Vec<InstanceSpec> {
    families
        .iter()
        .map(|f| InstanceSpec {
            id: f.to_string(),
            family: f.clone(),
            potential: None,
        })
        .collect()
}

fn genus_audit() -> Outcome {
    let families = planar_suite();
    for f in &families {
        let g = generate_family(f).unwrap();
        let rot = f.embedding(&g).ok_or(format!("{f} has no embedding"))?;
        ensure!(
            trace_faces(&g, &rot).map_err(|e| e.to_string())?.genus == 0,
            "{f} embedding is not planar"
        );
        ensure!(
            g.vertex_connectivity_at_least(3).unwrap(),
            "{f} is not 3-connected"
        );
    }
    let summary = run_campaign(
        "planar",
        &family_instances(&families),
        &CampaignOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    ensure!(summary.errors == 0, "{} instances failed", summary.errors);
    ensure!(
        summary
            .outcomes
            .iter()
            .all(|o| o.genus == Some(0) && o.genus_source == GenusSource::RotationSystem),
        "genus not taken from the planar rotation"
    );
    let mut clamped = 0;
    let mut divergent = 0;
    for report in summary.reports().filter(|r| r.n.is_some_and(|n| n >= 2)) {
        let n = report.n.unwrap();
        match report.check {
            Check::DomainsGenusClamped => {
                let bound = 6 * (n - 1);
                ensure!(
                    report.bound == Some(bound as f64),
                    "clamped bound {:?} at n = {n}",
                    report.bound
                );
                ensure!(
                    report.status == Status::Holds && (report.observed as usize) <= bound,
                    "{:?}: t = {} > {bound}",
                    report.graph_id,
                    report.observed
                );
                clamped += 1;
            }
            Check::DomainsGenus if report.status == Status::Violated => {
                ensure!(
                    report.bound_clamped == Some((6 * (n - 1)) as f64),
                    "divergent report lacks clamped bound"
                );
                divergent += 1;
            }
            _ => {}
        }
    }
    ensure!(clamped > 0, "no clamped reports");
    Ok(format!(
        "{} graphs, {clamped} clamped checks hold; as-stated bound diverges on {divergent} (reported)",
        families.len()
    ))
}

fn duval_reiner() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for trial in 0..1000 {
        let n = rng.random_range(2..=15);
        let g = random_connected(&mut rng, n);
        let u = random_vector(&mut rng, n);
        let np = strong_domains(&g, &u, DEFAULT_TOL_ZERO).map_err(|e| e.to_string())?;
        let mut rows = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i..n {
                let x = rng.random_range(-3.0..3.0);
                rows[i][j] = x;
                rows[j][i] = x;
            }
        }
        let a = SymMatrix::from_rows(&rows).map_err(|e| e.to_string())?;
        let c: Vec<f64> = (0..np.t()).map(|_| rng.random_range(-2.0..2.0)).collect();
        let check = duval_reiner_identity(&a, &np, &c).map_err(|e| e.to_string())?;
        ensure!(
            check.discrepancy <= 1e-9,
            "trial {trial}: discrepancy {}",
            check.discrepancy
        );
        worst = worst.max(check.discrepancy);
    }
    Ok(format!(
        "1000 triples, worst relative discrepancy {worst:.2e}"
    ))
}

fn multiplicity_pipeline(summary: &CampaignSummary) -> Outcome {
    let mut certificates = 0;
    let mut growth = 0;
    for outcome in &summary.outcomes {
        let Some(audit) = &outcome.audit else {
            return Err(format!("{}: {:?}", outcome.id, outcome.error));
        };
        for cert in &audit.certificates {
            let scale = cert.u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            let on_w = cert
                .w_prime
                .iter()
                .fold(0.0f64, |m, &v| m.max(cert.u[v].abs()));
            let need = cert.r.div_ceil(2);
            ensure!(
                cert.w_prime.len() == need,
                "{}: |W'| = {}",
                outcome.id,
                cert.w_prime.len()
            );
            ensure!(
                on_w <= 1e-8 * scale,
                "{} n = {}: |u| on W' is {on_w:e}",
                outcome.id,
                cert.n
            );
            let nonzero = cert
                .r_set
                .iter()
                .filter(|&&v| cert.u[v].abs() > NONZERO_TOL * scale)
                .count();
            ensure!(
                nonzero >= need,
                "{} n = {}: nonzero on {nonzero} of R, need {need}",
                outcome.id,
                cert.n
            );
            if outcome.vg == VgStatus::Satisfied {
                let bound = (cert.r as f64 / 2.0).sqrt() - 1.0;
                ensure!(
                    cert.z.len() as f64 >= bound,
                    "{} n = {}: |Z| = {} < {bound}",
                    outcome.id,
                    cert.n,
                    cert.z.len()
                );
                growth += 1;
            }
            certificates += 1;
        }
    }
    ensure!(
        certificates > 0,
        "no eigenspace of dimension 2 or more in the corpus"
    );
    Ok(format!(
        "{certificates} eigenspaces with r >= 2, {growth} boundary checks under volume growth"
    ))
}

fn multiplicity_audit(corpus: &CampaignSummary) -> Outcome {
    let mut extra = planar_suite();
    extra.extend([(3, 3), (3, 4), (4, 4)].map(|(rows, cols)| Family::ToroidalGrid { rows, cols }));
    let extra = run_campaign(
        "embedded",
        &family_instances(&extra),
        &CampaignOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    let mut checked = 0;
    let mut instances = 0;
    for summary in [corpus, &extra] {
        for outcome in &summary.outcomes {
            if !(outcome.three_connected
                && outcome.vg == VgStatus::Satisfied
                && outcome.genus.is_some())
            {
                continue;
            }
            instances += 1;
            let audit = outcome
                .audit
                .as_ref()
                .ok_or(format!("{}: no audit", outcome.id))?;
            for report in audit
                .reports
                .iter()
                .filter(|r| r.check == Check::MultiplicityGenusClamped)
            {
                let Some(n) = report.n.filter(|&n| n >= 2) else {
                    continue;
                };
                let g = outcome.genus.unwrap();
                let bound = 2 * (6 * (n - 1) + 15 * (2 * g).saturating_sub(2)).pow(2);
                ensure!(
                    report.status == Status::Holds && report.observed as usize <= bound,
                    "{} n = {n}: r = {} > {bound}",
                    outcome.id,
                    report.observed
                );
                checked += 1;
            }
        }
    }
    ensure!(checked > 0, "no instance qualified");
    Ok(format!(
        "{instances} instances, {checked} clamped multiplicity checks hold"
    ))
}

fn domain_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..200 {
        let n = rng.random_range(1..=12);
        let g = random_connected(&mut rng, n);
        let u = random_vector(&mut rng, n);
        let np = strong_domains(&g, &u, DEFAULT_TOL_ZERO).map_err(|e| e.to_string())?;
        let mut ours: Vec<Vec<usize>> = np
            .domains
            .iter()
            .map(|d| {
                let mut v = d.vertices.clone();
                v.sort_unstable();
                v
            })
            .collect();
        ours.sort();
        let oracle = common::strong_domains_by_labeling(&g, &u, DEFAULT_TOL_ZERO);
        ensure!(ours == oracle, "trial {trial}: {ours:?} vs {oracle:?}");
    }
    Ok("200 pairs match exactly".into())
}

fn eigensolver_quality() -> Outcome {
    let mut worst_residual = 0.0f64;
    let mut worst_dot = 0.0f64;
    for spec in corpus() {
        let (_, op) = spec.build().map_err(|e| e.to_string())?;
        let s = eigendecompose(&op, DEFAULT_TOL_EIG).map_err(|e| e.to_string())?;
        let m = op.matrix();
        let norm = (0..m.dim())
            .map(|i| (0..m.dim()).map(|j| m.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max);
        for (lambda, u) in s.eigenvalues.iter().zip(&s.eigenvectors) {
            let mu = op.apply(u);
            let res = mu
                .iter()
                .zip(u)
                .fold(0.0f64, |acc, (a, x)| acc.max((a - lambda * x).abs()));
            ensure!(res <= 1e-8 * (1.0 + norm), "{}: residual {res:e}", spec.id);
            worst_residual = worst_residual.max(res / (1.0 + norm));
        }
        for (i, a) in s.eigenvectors.iter().enumerate() {
            for b in &s.eigenvectors[i + 1..] {
                let d: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                ensure!(d.abs() <= 1e-8, "{}: dot {d:e}", spec.id);
                worst_dot = worst_dot.max(d.abs());
            }
        }
    }
    Ok(format!(
        "worst scaled residual {worst_residual:.1e}, worst dot {worst_dot:.1e}"
    ))
}

fn genus_oracle() -> Outcome {
    let limit = Duration::from_secs(60);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut cases: Vec<(String, Graph, usize)> = Vec::new();
    for n in 1..=12 {
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
        cases.push((
            format!("random tree {n}"),
            Graph::from_edge_list(n, edges).unwrap(),
            0,
        ));
    }
    for leaves in [3, 6, 9] {
        cases.push((
            format!("star {leaves}"),
            generate_family(&Family::Star { leaves }).unwrap(),
            0,
        ));
    }
    for n in 3..=12 {
        cases.push((
            format!("cycle {n}"),
            generate_family(&Family::Cycle { n }).unwrap(),
            0,
        ));
    }
    cases.push((
        "K5".into(),
        generate_family(&Family::Complete { n: 5 }).unwrap(),
        1,
    ));
    cases.push((
        "K3,3".into(),
        generate_family(&Family::CompleteBipartite { a: 3, b: 3 }).unwrap(),
        1,
    ));
    let mut slowest = Duration::ZERO;
    for (name, g, want) in &cases {
        let start = Instant::now();
        let got = minimal_genus(g, u64::MAX)
            .map_err(|e| e.to_string())?
            .genus();
        let elapsed = start.elapsed();
        ensure!(got == Some(*want), "{name}: genus {got:?}, expected {want}");
        ensure!(elapsed < limit, "{name}: took {elapsed:?}");
        slowest = slowest.max(elapsed);
    }
    Ok(format!("{} graphs, slowest {slowest:.2?}", cases.len()))
}

fn run(k: usize, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()))
    });
    match result {
        Ok(detail) => {
            println!("criterion {k:>2} {name}: PASS ({detail})");
            true
        }
        Err(detail) => {
            println!("criterion {k:>2} {name}: FAIL ({detail})");
            false
        }
    }
}

fn main() {
    let summary = corpus_summary();
    let results = [
        run(1, "star sharpness", star_sharpness),
        run(2, "phi fixture", phi_fixture),
        run(3, "corpus soundness", corpus_soundness),
        run(4, "planar genus audit", genus_audit),
        run(5, "duval-reiner identity", duval_reiner),
        run(6, "vanishing combination", || {
            multiplicity_pipeline(&summary)
        }),
        run(7, "multiplicity bound", || multiplicity_audit(&summary)),
        run(8, "domain oracle", domain_oracle),
        run(9, "eigensolver quality", eigensolver_quality),
        run(10, "genus oracle", genus_oracle),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
