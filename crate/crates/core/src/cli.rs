//! Command-line front end. Every command returns its output and exit code
//! instead of printing, so the binary stays a one-liner.
//!
//! Exit codes: 0 success, 1 violations of the gating checks, 2 input error,
//! 3 usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::bounds::{
    full_audit, AuditOptions, BoundReport, GenusInfo, GenusSource, Relation, Status,
};
use crate::experiment::{instances_from_spec, run_campaign, CampaignOptions, FamilySpec};
use crate::graph::{minimal_genus, trace_faces, vg_check, Graph, RotationSystem, VgOptions};
use crate::linalg::norm2;
use crate::nodal::{
    build_islands, phi_system, strong_domains, NodalPartition, NodalReport, DEFAULT_TOL_ZERO,
};
use crate::spectral::{
    eigendecompose, eigenquery, laplacian_of, SchrodingerOperator, SpectralError, DEFAULT_TOL_EIG,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub tol_zero: f64,
    pub tol_eig: f64,
    pub tol_residual: f64,
    pub seed: u64,
    /// Largest vertex count for exhaustive volume-growth checks.
    pub max_exhaustive_n: usize,
    /// Rotation systems enumerated by the genus search.
    pub budget: u64,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            tol_zero: DEFAULT_TOL_ZERO,
            tol_eig: DEFAULT_TOL_EIG,
            tol_residual: 1e-8,
            seed: 42,
            max_exhaustive_n: 20,
            budget: 100_000,
            format: Format::Text,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        for (name, v) in [
            ("tol-zero", self.tol_zero),
            ("tol-eig", self.tol_eig),
            ("tol-residual", self.tol_residual),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Usage(format!(
                    "--{name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    fn vg_options(&self) -> VgOptions {
        VgOptions {
            max_exhaustive_n: self.max_exhaustive_n,
            seed: self.seed,
            ..VgOptions::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Usage(_) => EXIT_USAGE,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Usage(m) => m,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            exit_code: EXIT_OK,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn load_operator(g: &Graph, operator: Option<&str>) -> Result<SchrodingerOperator, CliError> {
    match operator {
        Some(text) => SchrodingerOperator::parse(g, text).map_err(input),
        None => Ok(laplacian_of(g)),
    }
}

fn parse_graph(text: &str) -> Result<Graph, CliError> {
    Graph::parse_edge_list(text).map_err(|e| CliError::Input(format!("graph: {e}")))
}

/// Eigenvalues, multiplicity groups and residuals.
pub fn cmd_spectrum(
    graph: &str,
    operator: Option<&str>,
    config: &RunConfig,
) -> Result<CommandOutput, CliError> {
    config.validate()?;
    let g = parse_graph(graph)?;
    let op = load_operator(&g, operator)?;
    let spec = eigendecompose(&op, config.tol_eig).map_err(input)?;
    let groups: Vec<_> = spec
        .groups
        .iter()
        .map(|gr| json!({"head": gr.head(), "multiplicity": gr.len, "eigenvalue": spec.eigenvalues[gr.start]}))
        .collect();
    let stdout = match config.format {
        Format::Json => to_json(&json!({
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "eigenvalues": spec.eigenvalues,
            "groups": groups,
            "max_residual": spec.max_residual,
            "max_orthogonality_defect": spec.max_orthogonality_defect,
            "residual_ok": spec.residual_ok(config.tol_residual),
        })),
        Format::Text => {
            let mut out = format!("{} vertices, {} edges\n", g.vertex_count(), g.edge_count());
            let _ = writeln!(out, "{:>8}  {:>22}  {:>4}", "index", "eigenvalue", "mult");
            for gr in &spec.groups {
                let label = if gr.len == 1 {
                    gr.head().to_string()
                } else {
                    format!("{}..{}", gr.head(), gr.head() + gr.len - 1)
                };
                let _ = writeln!(
                    out,
                    "{label:>8}  {:>22?}  {:>4}",
                    spec.eigenvalues[gr.start], gr.len
                );
            }
            let _ = writeln!(
                out,
                "max residual {:e}, orthogonality defect {:e}, residual ok: {}",
                spec.max_residual,
                spec.max_orthogonality_defect,
                spec.residual_ok(config.tol_residual)
            );
            out
        }
    };
    Ok(CommandOutput::ok(stdout))
}

#[derive(Debug, Clone, Serialize)]
struct AnalyzedFunction {
    label: String,
    eigenfunction: Vec<f64>,
    regions: Vec<Vec<usize>>,
    report: NodalReport,
}

fn analyze_function(
    g: &Graph,
    op: &SchrodingerOperator,
    label: String,
    u: &[f64],
    tol_zero: f64,
) -> Result<AnalyzedFunction, CliError> {
    let np: NodalPartition = strong_domains(g, u, tol_zero).map_err(input)?;
    let is = build_islands(&np, g);
    let ps = phi_system(&is, &np, op);
    Ok(AnalyzedFunction {
        label,
        eigenfunction: u.to_vec(),
        regions: is.regions.clone(),
        report: NodalReport::new(&np, &is, &ps),
    })
}

fn spectral_usage(e: SpectralError) -> CliError {
    match e {
        SpectralError::IndexOutOfRange { .. } | SpectralError::InsideGroup { .. } => {
            CliError::Usage(e.to_string())
        }
        other => input(other),
    }
}

/// Nodal report for every basis eigenfunction of `λ_n`; eigenspaces of
/// dimension at least 2 also get one seeded generic combination.
pub fn cmd_analyze(
    graph: &str,
    n: usize,
    operator: Option<&str>,
    config: &RunConfig,
) -> Result<CommandOutput, CliError> {
    config.validate()?;
    let g = parse_graph(graph)?;
    g.require_connected().map_err(input)?;
    let op = load_operator(&g, operator)?;
    let spec = eigendecompose(&op, config.tol_eig).map_err(input)?;
    let q = eigenquery(&spec, n).map_err(spectral_usage)?;

    let mut functions = Vec::new();
    for (k, u) in q.basis.iter().enumerate() {
        functions.push(analyze_function(
            &g,
            &op,
            format!("basis {}", k + 1),
            u,
            config.tol_zero,
        )?);
    }
    if q.multiplicity >= 2 {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut u = vec![0.0; g.vertex_count()];
        for f in &q.basis {
            let c: f64 = rng.random_range(-1.0..1.0);
            u.iter_mut().zip(f).for_each(|(x, y)| *x += c * y);
        }
        let len = norm2(&u);
        u.iter_mut().for_each(|x| *x /= len);
        functions.push(analyze_function(
            &g,
            &op,
            "generic combination".into(),
            &u,
            config.tol_zero,
        )?);
    }
    let outside = n < 2;

    let stdout = match config.format {
        Format::Json => to_json(&json!({
            "n": n,
            "eigenvalue": q.lambda,
            "multiplicity": q.multiplicity,
            "outside_theorem_regime": outside,
            "functions": functions,
        })),
        Format::Text => {
            let mut out = format!(
                "lambda_{n} = {:?} with multiplicity {}\n",
                q.lambda, q.multiplicity
            );
            if outside {
                out.push_str("outside theorem regime (n = 1)\n");
            }
            for f in &functions {
                let r = &f.report;
                let _ = writeln!(
                    out,
                    "{}: t={} regions={} s={} smalls={} larges={} y={} dimW0={} V0={:?}",
                    f.label,
                    r.t,
                    f.regions.len(),
                    r.s,
                    r.smalls,
                    r.larges,
                    r.y,
                    r.dim_w0,
                    r.v0
                );
            }
            out
        }
    };
    Ok(CommandOutput::ok(stdout))
}

fn genus_for_verify(g: &Graph, rotation: Option<&str>, budget: u64) -> Result<GenusInfo, CliError> {
    if let Some(text) = rotation {
        let rot = RotationSystem::parse(g, text)
            .map_err(|e| CliError::Input(format!("rotation: {e}")))?;
        let stats = trace_faces(g, &rot).map_err(input)?;
        return Ok(GenusInfo::known(stats.genus, GenusSource::RotationSystem));
    }
    Ok(match minimal_genus(g, budget).map_err(input)?.genus() {
        Some(genus) => GenusInfo::known(genus, GenusSource::ExhaustiveMinimal),
        None => GenusInfo::unknown(),
    })
}

fn relation_symbol(r: Relation) -> &'static str {
    match r {
        Relation::AtMost => "<=",
        Relation::AtLeast => ">=",
    }
}

fn format_report_line(r: &BoundReport) -> String {
    let bound = r.bound.map_or("-".to_string(), |b| format!("{b:?}"));
    let status = match r.status {
        Status::Holds => "holds",
        Status::Violated => "VIOLATED",
        Status::Skipped => "skipped",
    };
    let mut line = format!(
        "{:>3}  {:<27} {:>8?} {} {:<10} {status}",
        r.n.map_or("-".into(), |n| n.to_string()),
        r.check.name(),
        r.observed,
        relation_symbol(r.relation),
        bound,
    );
    if let Some(reason) = &r.skip_reason {
        let _ = write!(line, " ({reason})");
    }
    line
}

/// Full audit across all group heads.
pub fn cmd_verify(
    graph: &str,
    rotation: Option<&str>,
    operator: Option<&str>,
    graph_id: Option<&str>,
    config: &RunConfig,
) -> Result<CommandOutput, CliError> {
    config.validate()?;
    let g = parse_graph(graph)?;
    g.require_connected().map_err(input)?;
    let op = load_operator(&g, operator)?;
    let genus = genus_for_verify(&g, rotation, config.budget)?;
    let vg = vg_check(&g, &config.vg_options()).map_err(input)?.status;
    let options = AuditOptions {
        tol_zero: config.tol_zero,
        tol_eig: config.tol_eig,
        tol_residual: config.tol_residual,
        genus,
        vg: Some(vg),
        random_combinations: 1,
        seed: config.seed,
        graph_id: graph_id.map(str::to_string),
    };
    let audit = full_audit(&op, &options).map_err(input)?;
    let gating = audit.gating_violations();

    let stdout = match config.format {
        Format::Json => to_json(&audit.reports),
        Format::Text => {
            let genus_text = match genus.genus {
                Some(v) => format!("{v} ({})", source_name(genus.source)),
                None => "unknown".to_string(),
            };
            let mut out = format!(
                "{} vertices, {} edges, genus {genus_text}, volume growth {}\n",
                g.vertex_count(),
                g.edge_count(),
                serde_json::to_value(vg)
                    .expect("serializable")
                    .as_str()
                    .unwrap_or("?"),
            );
            for r in &audit.reports {
                out.push_str(&format_report_line(r));
                out.push('\n');
            }
            for c in &audit.certificates {
                let _ = writeln!(
                    out,
                    "certificate n={} r={}: R={:?} W'={:?} nonzero on R={} W={:?} Z={:?}",
                    c.n, c.r, c.r_set, c.w_prime, c.nonzero_on_r, c.w_component, c.z
                );
            }
            let _ = writeln!(
                out,
                "violations: {} ({gating} in gating checks)",
                audit.violations().count()
            );
            out
        }
    };
    Ok(CommandOutput {
        stdout,
        stderr: String::new(),
        exit_code: if gating > 0 { EXIT_VIOLATIONS } else { EXIT_OK },
    })
}

fn source_name(s: GenusSource) -> &'static str {
    match s {
        GenusSource::RotationSystem => "rotation-system",
        GenusSource::ExhaustiveMinimal => "exhaustive-minimal",
        GenusSource::Unknown => "unknown",
    }
}

/// Campaign over a family spec with aggregated statistics.
pub fn cmd_experiment(
    family_spec: &str,
    count: usize,
    potential: Option<f64>,
    config: &RunConfig,
) -> Result<CommandOutput, CliError> {
    config.validate()?;
    let spec = FamilySpec::parse(family_spec).map_err(|e| CliError::Usage(e.to_string()))?;
    let instances = instances_from_spec(&spec, count, config.seed, potential)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let options = CampaignOptions {
        tol_zero: config.tol_zero,
        tol_eig: config.tol_eig,
        tol_residual: config.tol_residual,
        seed: config.seed,
        genus_budget: config.budget,
        vg: config.vg_options(),
        random_combinations: 1,
    };
    let summary = run_campaign(spec.text(), &instances, &options).map_err(input)?;
    let stdout = match config.format {
        Format::Json => to_json(&summary),
        Format::Text => {
            let mut out = format!(
                "{}: {} instances, {} audit errors, seed {}\n",
                summary.spec, summary.instances, summary.errors, summary.seed
            );
            let _ = writeln!(
                out,
                "{:<27} {:>6} {:>8} {:>7} {:>6} {:>8} {:>8}",
                "check", "holds", "violated", "skipped", "tight", "max", "mean"
            );
            let opt = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.4}"));
            for (name, s) in &summary.checks {
                let _ = writeln!(
                    out,
                    "{name:<27} {:>6} {:>8} {:>7} {:>6} {:>8} {:>8}",
                    s.holds,
                    s.violated,
                    s.skipped,
                    s.tight,
                    opt(s.max_tightness),
                    opt(s.mean_tightness)
                );
            }
            for o in summary.outcomes.iter().filter(|o| o.error.is_some()) {
                let _ = writeln!(
                    out,
                    "error in {}: {}",
                    o.id,
                    o.error.as_deref().unwrap_or("")
                );
            }
            let _ = writeln!(out, "gating violations: {}", summary.gating_violations);
            out
        }
    };
    Ok(CommandOutput {
        stdout,
        stderr: String::new(),
        exit_code: if summary.gating_violations > 0 {
            EXIT_VIOLATIONS
        } else {
            EXIT_OK
        },
    })
}

#[derive(Debug, Parser)]
#[command(
    name = "nodal",
    version,
    about = "Nodal domains and multiplicity bounds on graphs"
)]
struct Cli {
    #[arg(long, global = true, default_value_t = DEFAULT_TOL_ZERO)]
    tol_zero: f64,
    #[arg(long, global = true, default_value_t = DEFAULT_TOL_EIG)]
    tol_eig: f64,
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol_residual: f64,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Rotation systems enumerated by the genus search.
    #[arg(long, global = true, default_value_t = 100_000)]
    budget: u64,
    /// Largest vertex count for exhaustive volume-growth checks.
    #[arg(long, global = true, default_value_t = 20)]
    max_exhaustive_n: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues and multiplicity groups.
    Spectrum {
        graph: PathBuf,
        #[arg(long)]
        operator: Option<PathBuf>,
    },
    /// Nodal domains, islands and the φ system at eigenvalue index N.
    Analyze {
        graph: PathBuf,
        #[arg(short, long)]
        n: usize,
        #[arg(long)]
        operator: Option<PathBuf>,
    },
    /// Every bound at every multiplicity-group head.
    Verify {
        graph: PathBuf,
        #[arg(long)]
        rotation: Option<PathBuf>,
        #[arg(long)]
        operator: Option<PathBuf>,
    },
    /// Campaign over a graph family, e.g. "random_connected n=10 p=0.4".
    Experiment {
        family: String,
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// Amplitude of a random diagonal potential added to each Laplacian.
        #[arg(long)]
        potential: Option<f64>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_opt(path: Option<&PathBuf>) -> Result<Option<String>, CliError> {
    path.map(|p| read(p)).transpose()
}

/// Parses arguments and runs one command.
pub fn run<I, T>(args: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == EXIT_OK {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return CommandOutput {
                stdout,
                stderr,
                exit_code: code,
            };
        }
    };
    let config = RunConfig {
        tol_zero: cli.tol_zero,
        tol_eig: cli.tol_eig,
        tol_residual: cli.tol_residual,
        seed: cli.seed,
        max_exhaustive_n: cli.max_exhaustive_n,
        budget: cli.budget,
        format: cli.format,
    };
    let result = match &cli.command {
        Command::Spectrum { graph, operator } => read(graph)
            .and_then(|g| Ok((g, read_opt(operator.as_ref())?)))
            .and_then(|(g, op)| cmd_spectrum(&g, op.as_deref(), &config)),
        Command::Analyze { graph, n, operator } => read(graph)
            .and_then(|g| Ok((g, read_opt(operator.as_ref())?)))
            .and_then(|(g, op)| cmd_analyze(&g, *n, op.as_deref(), &config)),
        Command::Verify {
            graph,
            rotation,
            operator,
        } => read(graph).and_then(|g| {
            let rot = read_opt(rotation.as_ref())?;
            let op = read_opt(operator.as_ref())?;
            let id = graph.file_stem().map(|s| s.to_string_lossy().into_owned());
            cmd_verify(&g, rot.as_deref(), op.as_deref(), id.as_deref(), &config)
        }),
        Command::Experiment {
            family,
            count,
            potential,
        } => cmd_experiment(family, *count, *potential, &config),
    };
    result.unwrap_or_else(|e| CommandOutput {
        stdout: String::new(),
        stderr: format!("error: {}\n", e.message()),
        exit_code: e.exit_code(),
    })
}
