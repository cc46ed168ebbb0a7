//! Command-line surface of the `gyroshape` binary.
//!
//! Every command prints a JSON [`ReportDocument`] on stdout. Series and
//! curves go to CSV files under the output directory (`--out-dir`, then
//! `GYROSHAPE_OUT_DIR`, then the config file, then `.`).

mod config;
mod output;

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::design::{self, DesignQuery, Objective, TMinMode};
use crate::dynamics::{ImpulseTrajectory, ModalSystem};
use crate::envelope::EnvelopeCurve;
use crate::inscribed::{self, ResonantParam};
use crate::oracle::{self, OracleConfig};
use crate::resonance::{self, ResonantPair};

pub use config::FileConfig;
pub use output::{sci, to_json};
use output::{write_csv, write_json, Cell};

pub const SCHEMA_VERSION: &str = "1";
pub const OUT_DIR_ENV: &str = "GYROSHAPE_OUT_DIR";

/// Process exit code for a verification run with failing pairs.
pub const EXIT_VERIFY_FAILED: i32 = 3;
/// Process exit code for invalid input or I/O failure.
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] crate::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("config: {0}")]
    Config(String),

    #[error("invalid arguments: {0}")]
    Usage(String),
}

impl CliError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "gyroshape",
    version,
    about = "Resonance and inscribed-radius analysis of gyroscopically coupled oscillators"
)]
pub struct Cli {
    /// Key-value (TOML) file presetting tolerances, grid sizes and t_min mode.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Directory for CSV/JSON outputs.
    #[arg(long, global = true, env = OUT_DIR_ENV)]
    pub out_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Modal structure, resonance class and inscribed radius of one coupling.
    Analyze(AnalyzeArgs),
    /// Closed-form time series (t, q, qdot, z, zdot, hq, hz, h) as CSV.
    Trace(TraceArgs),
    /// Convex envelope of the (q, qdot) projection as CSV.
    Envelope(EnvelopeArgs),
    /// Scores every admissible pair and writes the Pareto frontier.
    Pareto(ParetoArgs),
    /// Absorption or containment design query.
    Design(DesignArgs),
    /// Analytic inscribed radius against the dense-grid oracle, pair by pair.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CouplingArgs {
    /// Resonant pair TAU SIGMA (coprime, TAU > SIGMA).
    #[arg(long, num_args = 2, value_names = ["TAU", "SIGMA"], conflicts_with = "n", required_unless_present = "n")]
    pub pair: Option<Vec<u64>>,

    /// Coupling strength n.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<f64>,

    /// Use the negative coupling for --pair (mirrors the modal roles).
    #[arg(long, requires = "pair")]
    pub negative: bool,
}

#[derive(Debug, Clone, Copy)]
enum Coupling {
    Pair(ResonantPair, f64),
    Value(f64),
}

impl Coupling {
    fn n(&self) -> f64 {
        match *self {
            Coupling::Pair(_, n) | Coupling::Value(n) => n,
        }
    }
}

impl CouplingArgs {
    fn resolve(&self) -> Result<Coupling, CliError> {
        match (&self.pair, self.n) {
            (Some(v), None) => {
                let pair = ResonantPair::new(v[0], v[1])?;
                let sign = if self.negative { -1.0 } else { 1.0 };
                Ok(Coupling::Pair(pair, sign * pair.coupling()))
            }
            (None, Some(n)) => {
                crate::error::ensure_finite("n", n)?;
                Ok(Coupling::Value(n))
            }
            _ => Err(CliError::Usage("give exactly one of --pair or --n".into())),
        }
    }

    fn echo(&self) -> Value {
        json!({ "pair": self.pair, "n": self.n, "negative": self.negative })
    }
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub coupling: CouplingArgs,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub qdot0: f64,
    /// Tolerance for matching --n to a resonant pair.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Largest tau + sigma searched when matching --n.
    #[arg(long)]
    pub max_order: Option<u64>,
    /// Low-order threshold M.
    #[arg(long)]
    pub m_threshold: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct TraceArgs {
    #[command(flatten)]
    pub coupling: CouplingArgs,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub qdot0: f64,
    #[arg(long)]
    pub t_end: f64,
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    /// Output CSV (relative paths resolve against the output directory).
    #[arg(long, default_value = "trace.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct EnvelopeArgs {
    #[command(flatten)]
    pub coupling: CouplingArgs,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub qdot0: f64,
    #[arg(long, default_value_t = 720)]
    pub count: usize,
    #[arg(long, default_value = "envelope.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Approx,
    Exact,
}

impl From<ModeArg> for TMinMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Approx => TMinMode::Approx,
            ModeArg::Exact => TMinMode::Exact,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ParetoArgs {
    #[arg(long)]
    pub max_order: Option<u64>,
    #[arg(long)]
    pub beat_min: Option<f64>,
    #[arg(long, value_enum)]
    pub t_min_mode: Option<ModeArg>,
    #[arg(long, default_value = "pareto.csv")]
    pub out: PathBuf,
    /// Frontier (non-dominated points) as JSON.
    #[arg(long, default_value = "pareto.json")]
    pub json: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Absorb,
    Contain,
}

#[derive(Debug, Clone, Args)]
pub struct DesignArgs {
    #[arg(long, value_enum)]
    pub objective: ObjectiveArg,
    #[arg(long)]
    pub t_max: f64,
    #[arg(long)]
    pub beat_min: Option<f64>,
    #[arg(long)]
    pub max_order: Option<u64>,
    /// Exclude low-order pairs with tau + sigma <= M.
    #[arg(long, value_name = "M")]
    pub exclude_low_order: Option<u64>,
    /// Disturbance bound D on |qdot0|.
    #[arg(long, default_value_t = 1.0)]
    pub d_bound: f64,
    #[arg(long, value_enum)]
    pub t_min_mode: Option<ModeArg>,
    /// Restrict the search to pairs with tau - sigma = DELTA.
    #[arg(long)]
    pub delta: Option<u64>,
    #[arg(long, default_value = "design.json")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 30)]
    pub max_order: u64,
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Allowed |r_exact - r_oracle| at qdot0 = 1.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value = "verify.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Analytic,
    Oracle,
    Both,
}

/// What every command prints.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub inputs: Value,
    pub provenance: Provenance,
    /// False only when a requested check failed; uncertified estimates are
    /// flagged inside `results` instead.
    pub passed: bool,
    pub results: Value,
    pub files: Vec<String>,
}

/// Settings after merging flags, config file and defaults.
#[derive(Debug, Clone)]
struct Settings {
    out_dir: PathBuf,
    file: FileConfig,
}

impl Settings {
    fn resolve(cli: &Cli) -> Result<Self, CliError> {
        let file = match &cli.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let out_dir = cli
            .out_dir
            .clone()
            .or_else(|| file.out_dir.clone())
            .unwrap_or_else(|| PathBuf::from("."));
        Ok(Self { out_dir, file })
    }

    fn oracle(&self, grid_points: Option<usize>) -> Result<OracleConfig, CliError> {
        let d = OracleConfig::default();
        let cfg = OracleConfig {
            grid_points: grid_points
                .or(self.file.grid_points)
                .unwrap_or(d.grid_points),
            horizon_periods: self.file.horizon_periods.unwrap_or(d.horizon_periods),
            integrator_dt: self.file.integrator_dt.unwrap_or(d.integrator_dt),
            energy_tol: self.file.energy_tol.unwrap_or(d.energy_tol),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn output_path(&self, name: &Path) -> Result<PathBuf, CliError> {
        let path = if name.is_absolute() {
            name.to_path_buf()
        } else {
            self.out_dir.join(name)
        };
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        }
        Ok(path)
    }

    fn t_min_mode(&self, flag: Option<ModeArg>) -> TMinMode {
        flag.map(Into::into)
            .or(self.file.t_min_mode)
            .unwrap_or_default()
    }
}

fn to_value<T: Serialize>(value: &T) -> Result<Value, CliError> {
    Ok(serde_json::to_value(value)?)
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

/// Runs one command. `Ok` carries the report even when a verification
/// failed; use [`ReportDocument::passed`] for the exit status.
pub fn run(cli: &Cli) -> Result<ReportDocument, CliError> {
    let settings = Settings::resolve(cli)?;
    match &cli.command {
        Command::Analyze(args) => analyze(args, &settings),
        Command::Trace(args) => trace(args, &settings),
        Command::Envelope(args) => envelope(args, &settings),
        Command::Pareto(args) => pareto(args, &settings),
        Command::Design(args) => design_cmd(args, &settings),
        Command::Verify(args) => verify(args, &settings),
    }
}

/// Exit code for a finished run.
pub fn exit_code(result: &Result<ReportDocument, CliError>) -> i32 {
    match result {
        Ok(doc) if doc.passed => 0,
        Ok(_) => EXIT_VERIFY_FAILED,
        Err(_) => EXIT_INPUT_ERROR,
    }
}

fn pair_record(pair: &ResonantPair) -> Value {
    json!({
        "tau": pair.tau(),
        "sigma": pair.sigma(),
        "delta": pair.delta(),
        "order": pair.order(),
        "beat_ratio": pair.beat_ratio(),
        "degenerate": pair.is_degenerate(),
    })
}

fn envelope_record(system: &ModalSystem, qdot0: f64) -> Result<Value, CliError> {
    let curve = EnvelopeCurve::sample(system, qdot0, 720)?;
    let residual = oracle::ellipse_fit_residual(&curve);
    Ok(json!({
        "support_at_half_pi": crate::envelope::support(system, curve.rho0, FRAC_PI_2),
        "support_at_zero": crate::envelope::support(system, curve.rho0, 0.0),
        "ellipse_fit_residual": residual,
        "is_ellipse": residual <= 1e-10,
        "directions": curve.samples.len(),
    }))
}

fn analyze(args: &AnalyzeArgs, settings: &Settings) -> Result<ReportDocument, CliError> {
    crate::error::ensure_finite("qdot0", args.qdot0)?;
    let coupling = args.coupling.resolve()?;
    let tol = args.tol.or(settings.file.tol).unwrap_or(1e-9);
    let max_order = args.max_order.or(settings.file.max_order).unwrap_or(200);
    let m_threshold = args.m_threshold.or(settings.file.m_threshold).unwrap_or(10);
    let system = ModalSystem::new(coupling.n())?;

    let (pair, match_residual) = match coupling {
        Coupling::Pair(p, _) => (Some(p), None),
        Coupling::Value(n) => match resonance::pair_from_coupling(n, tol, max_order)? {
            Some(p) => (Some(p), Some((p.coupling() - n.abs()).abs())),
            None => (None, None),
        },
    };

    let mut results = serde_json::Map::new();
    results.insert("modal_system".into(), to_value(&system)?);
    results.insert("rho0".into(), json!(args.qdot0 / system.frequency_sum()));
    results.insert("envelope".into(), envelope_record(&system, args.qdot0)?);

    let provenance = match pair {
        Some(p) => {
            let report = inscribed::inscribed_radius_exact(&ResonantParam::new(p, args.qdot0))?;
            results.insert("resonant".into(), json!(true));
            results.insert("pair".into(), pair_record(&p));
            results.insert("match_residual".into(), json!(match_residual));
            results.insert("classification".into(), to_value(&p.classify(m_threshold))?);
            results.insert("inscribed".into(), to_value(&report)?);
            results.insert(
                "tolerances".into(),
                json!({
                    "theta_root": inscribed::ROOT_TOL,
                    "pair_match": tol,
                    "theta_error_bound": report.error_bound,
                }),
            );
            Provenance::Analytic
        }
        None => {
            let cfg = settings.oracle(None)?;
            let slow_period = if coupling.n() == 0.0 {
                TAU
            } else {
                TAU / coupling.n().abs()
            };
            let horizon = cfg.horizon_periods * slow_period;
            let samples = ((horizon / 0.01).ceil() as usize).clamp(10_000, 20_000_000);
            let traj = ImpulseTrajectory::new(system, args.qdot0)?;
            let sampled = inscribed::sampled_inscribed_radius(&traj, horizon, samples)?;
            results.insert("resonant".into(), json!(false));
            results.insert(
                "note".into(),
                json!(format!(
                    "no coprime pair with tau + sigma <= {max_order} matches |n| within {}; \
                     the sampled minimum radius is not certified",
                    sci(tol)
                )),
            );
            results.insert("sampled_radius".into(), to_value(&sampled)?);
            results.insert(
                "t_min_approx".into(),
                json!(if coupling.n() == 0.0 {
                    None
                } else {
                    Some(PI / coupling.n().abs())
                }),
            );
            Provenance::Oracle
        }
    };

    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        command: "analyze",
        inputs: json!({
            "coupling": args.coupling.echo(),
            "qdot0": args.qdot0,
            "tol": tol,
            "max_order": max_order,
            "m_threshold": m_threshold,
        }),
        provenance,
        passed: true,
        results: Value::Object(results),
        files: Vec::new(),
    })
}

fn trace(args: &TraceArgs, settings: &Settings) -> Result<ReportDocument, CliError> {
    let coupling = args.coupling.resolve()?;
    let traj = ImpulseTrajectory::new(ModalSystem::new(coupling.n())?, args.qdot0)?;
    let samples = traj.sample_trace(args.t_end, args.dt)?;
    let path = settings.output_path(&args.out)?;
    let h0 = traj.energy();
    let drift = samples.iter().map(|s| (s.h - h0).abs()).fold(0.0, f64::max);
    let rows = write_csv(
        &path,
        &["t", "q", "qdot", "z", "zdot", "hq", "hz", "h"],
        samples.iter().map(|s| {
            [s.t, s.q, s.qdot, s.z, s.zdot, s.hq, s.hz, s.h]
                .into_iter()
                .map(Cell::Float)
                .collect()
        }),
    )?;
    let hq_min = samples.iter().map(|s| s.hq).fold(f64::INFINITY, f64::min);
    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        command: "trace",
        inputs: json!({
            "coupling": args.coupling.echo(),
            "qdot0": args.qdot0,
            "t_end": args.t_end,
            "dt": args.dt,
        }),
        provenance: Provenance::Analytic,
        passed: true,
        results: json!({
            "modal_system": traj.system,
            "rho0": traj.rho0,
            "rows": rows,
            "energy": h0,
            "max_energy_error": drift,
            "sampled_hq_min": hq_min,
        }),
        files: vec![display(&path)],
    })
}

fn envelope(args: &EnvelopeArgs, settings: &Settings) -> Result<ReportDocument, CliError> {
    let coupling = args.coupling.resolve()?;
    let system = ModalSystem::new(coupling.n())?;
    let curve = EnvelopeCurve::sample(&system, args.qdot0, args.count)?;
    let path = settings.output_path(&args.out)?;
    write_csv(
        &path,
        &["phi", "q", "qdot"],
        curve
            .samples
            .iter()
            .map(|p| vec![Cell::Float(p.phi), Cell::Float(p.q), Cell::Float(p.qdot)]),
    )?;
    let residual = oracle::ellipse_fit_residual(&curve);
    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        command: "envelope",
        inputs: json!({
            "coupling": args.coupling.echo(),
            "qdot0": args.qdot0,
            "count": args.count,
        }),
        provenance: Provenance::Analytic,
        passed: true,
        results: json!({
            "modal_system": system,
            "rho0": curve.rho0,
            "max_radius": curve.max_radius(),
            "convex": curve.is_convex(),
            "ellipse_fit_residual": residual,
            "is_ellipse": residual <= 1e-10,
        }),
        files: vec![display(&path)],
    })
}

fn pareto(args: &ParetoArgs, settings: &Settings) -> Result<ReportDocument, CliError> {
    let max_order = args.max_order.or(settings.file.max_order).unwrap_or(60);
    let beat_min = args.beat_min.or(settings.file.beat_min).unwrap_or(1.0);
    if beat_min.is_nan() || beat_min < 1.0 {
        return Err(CliError::Usage(format!(
            "--beat-min must be >= 1, got {beat_min}"
        )));
    }
    let mode = settings.t_min_mode(args.t_min_mode);
    let points = design::pareto_frontier(max_order, beat_min, mode)?;
    let csv_path = settings.output_path(&args.out)?;
    write_csv(
        &csv_path,
        &["tau", "sigma", "n", "r_res_unit", "t_min", "dominated"],
        points.iter().map(|p| {
            vec![
                Cell::Int(p.pair.tau()),
                Cell::Int(p.pair.sigma()),
                Cell::Float(p.n),
                Cell::Float(p.r_res_unit),
                Cell::Float(p.t_min),
                Cell::Bool(p.dominated),
            ]
        }),
    )?;
    let frontier = design::non_dominated(&points);
    let json_path = settings.output_path(&args.json)?;
    write_json(&json_path, &frontier)?;
    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        command: "pareto",
        inputs: json!({ "max_order": max_order, "beat_min": beat_min, "t_min_mode": mode }),
        provenance: Provenance::Analytic,
        passed: true,
        results: json!({
            "scored": points.len(),
            "frontier_size": frontier.len(),
            "min_r_res_unit": points.iter().map(|p| p.r_res_unit).fold(f64::INFINITY, f64::min),
        }),
        files: vec![display(&csv_path), display(&json_path)],
    })
}

fn design_cmd(args: &DesignArgs, settings: &Settings) -> Result<ReportDocument, CliError> {
    let objective = match args.objective {
        ObjectiveArg::Absorb => Objective::Absorb,
        ObjectiveArg::Contain => Objective::Contain,
    };
    let mut query = DesignQuery::new(objective, args.t_max);
    query.beat_min = args
        .beat_min
        .or(settings.file.beat_min)
        .unwrap_or(query.beat_min);
    query.max_order = args
        .max_order
        .or(settings.file.max_order)
        .unwrap_or(query.max_order);
    query.exclude_low_order = args.exclude_low_order;
    query.d_bound = args.d_bound;
    query.t_min_mode = settings.t_min_mode(args.t_min_mode);
    query.delta = args.delta;
    let outcome = design::solve(&query)?;
    let path = settings.output_path(&args.out)?;
    write_json(&path, &outcome)?;
    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        command: "design",
        inputs: to_value(&query)?,
        provenance: Provenance::Analytic,
        passed: true,
        results: json!({
            "feasible": outcome.feasible,
            "chosen": outcome.chosen,
            "r_res": outcome.r_res,
            "h_q_min": outcome.h_q_min,
            "rationale": outcome.rationale,
            "frontier_size": outcome.frontier.len(),
        }),
        files: vec![display(&path)],
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
struct VerifyRow {
    pair: ResonantPair,
    degenerate: bool,
    r_exact: f64,
    r_oracle: f64,
    abs_diff: f64,
    certified: bool,
    pass: bool,
}

fn verify(args: &VerifyArgs, settings: &Settings) -> Result<ReportDocument, CliError> {
    if args.max_order < 3 {
        return Err(CliError::Usage(format!(
            "--max-order must be at least 3, got {}",
            args.max_order
        )));
    }
    let cfg = settings.oracle(args.grid_points)?;
    let tol = args.tol.or(settings.file.verify_tol).unwrap_or(1e-6);
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tol must be finite and non-negative, got {tol}"
        )));
    }
    let mut rows = Vec::new();
    for pair in resonance::enumerate_pairs(args.max_order, 1.0) {
        let param = ResonantParam::new(pair, 1.0);
        let report = inscribed::inscribed_radius_exact(&param)?;
        let (r_oracle, _) = oracle::min_radius_dense(&param, &cfg)?;
        let abs_diff = (report.r_res - r_oracle).abs();
        let degeneracy_agrees = pair.is_degenerate() == (r_oracle <= 1e-6);
        rows.push(VerifyRow {
            pair,
            degenerate: pair.is_degenerate(),
            r_exact: report.r_res,
            r_oracle,
            abs_diff,
            certified: report.certified,
            pass: abs_diff <= tol && degeneracy_agrees && report.certified,
        });
    }
    let path = settings.output_path(&args.out)?;
    write_csv(
        &path,
        &[
            "tau",
            "sigma",
            "delta",
            "degenerate",
            "r_exact",
            "r_oracle",
            "abs_diff",
            "certified",
            "pass",
        ],
        rows.iter().map(|r| {
            vec![
                Cell::Int(r.pair.tau()),
                Cell::Int(r.pair.sigma()),
                Cell::Int(r.pair.delta()),
                Cell::Bool(r.degenerate),
                Cell::Float(r.r_exact),
                Cell::Float(r.r_oracle),
                Cell::Float(r.abs_diff),
                Cell::Bool(r.certified),
                Cell::Bool(r.pass),
            ]
        }),
    )?;
    let failed: Vec<String> = rows
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.pair.to_string())
        .collect();
    let max_diff = rows.iter().map(|r| r.abs_diff).fold(0.0, f64::max);
    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        command: "verify",
        inputs: json!({ "max_order": args.max_order, "grid_points": cfg.grid_points, "tol": tol }),
        provenance: Provenance::Both,
        passed: failed.is_empty(),
        results: json!({
            "pairs": rows.len(),
            "failed": failed,
            "max_abs_diff": max_diff,
        }),
        files: vec![display(&path)],
    })
}
