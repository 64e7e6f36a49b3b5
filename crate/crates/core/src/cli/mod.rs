//! Dataset commands behind the `twinbeam` binary.
//!
//! Every command resolves its flags and preset into a [`RunConfig`], writes
//! CSV (and, for fields, a raw binary dump) atomically, and embeds the full
//! config in a JSON sidecar next to each data file.

mod output;

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::channels::ChannelParams;
use crate::error::Error;
use crate::metrology::{self, FisherEstimate, FisherRow};
use crate::oracle::{self, OracleLattice, VerificationReport};
use crate::phasespace::{self, negativity_volume, GridSpec, WignerField};
use crate::states::{self, StateKind, StateSpec, DEFAULT_TRUNCATION_TOL};
use crate::statistics::{self, FanoSweepOptions};

pub use output::{csv_bytes, json_bytes, sidecar_path, write_atomic};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] Error),
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("oracle verification failed")]
    Verification(VerificationReport),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Model(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Verification(_) => 4,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Wigner,
    Negativity,
    Fano,
    Fisher,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
}

impl Preset {
    pub fn command(self) -> Command {
        match self {
            Preset::Fig2 | Preset::Fig3 => Command::Wigner,
            Preset::Fig4 => Command::Negativity,
            Preset::Fig5 => Command::Fano,
            Preset::Fig6 | Preset::Fig7 => Command::Fisher,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.to_possible_value().expect("no skipped variants");
        f.write_str(name.get_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum KindArg {
    Subtracted,
    Thermal,
    Coherent,
    Fock,
}

#[derive(Debug, Parser)]
#[command(
    name = "twinbeam",
    version,
    about = "Datasets for photon-subtracted twin-beam states under loss"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<CommandArg>,

    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Subcommand)]
pub enum CommandArg {
    /// Wigner fields as CSV + binary dump.
    Wigner,
    /// Negativity volume versus absorption and classicality thresholds.
    Negativity,
    /// Fano factor versus λ, exact and phase-space routes.
    Fano,
    /// Marginal Fisher information versus γ or λ.
    Fisher,
    /// Cross-check the primary evaluators against the oracle routes.
    Verify,
}

impl From<&CommandArg> for Command {
    fn from(c: &CommandArg) -> Self {
        match c {
            CommandArg::Wigner => Command::Wigner,
            CommandArg::Negativity => Command::Negativity,
            CommandArg::Fano => Command::Fano,
            CommandArg::Fisher => Command::Fisher,
            CommandArg::Verify => Command::Verify,
        }
    }
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct Flags {
    /// Subtracted photon numbers (comma separated).
    #[arg(long = "m", value_delimiter = ',', global = true)]
    pub m: Vec<u32>,
    /// Mean photons per twin-beam mode (comma separated).
    #[arg(long = "lambda", value_delimiter = ',', global = true)]
    pub lambda: Vec<f64>,
    /// Coherent-state mean photon number.
    #[arg(long, global = true)]
    pub mu: Option<f64>,
    /// Fock-state photon number.
    #[arg(long, global = true)]
    pub j: Option<u32>,
    /// Absorption coefficients (comma separated).
    #[arg(long = "gamma", value_delimiter = ',', global = true)]
    pub gamma: Vec<f64>,
    /// Detection efficiency.
    #[arg(long, global = true)]
    pub eta: Option<f64>,
    /// Nodes per grid axis (odd).
    #[arg(long = "grid-points", global = true)]
    pub grid_points: Option<usize>,
    /// Fixed grid half-width; sized per state when absent.
    #[arg(long = "q-max", global = true)]
    pub q_max: Option<f64>,
    /// Truncation tolerance for photon-number distributions.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Central-difference step in γ; defaults to min(1e-3, γ/10, (1-γ)/10).
    #[arg(long, global = true)]
    pub step: Option<f64>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Named dataset preset; explicit flags override its values.
    #[arg(long, value_enum, global = true)]
    pub preset: Option<Preset>,
    /// Run the oracle agreement checks before writing anything.
    #[arg(long, global = true)]
    pub verify: bool,
    /// State family for `wigner`.
    #[arg(long, value_enum, global = true)]
    pub kind: Option<KindArg>,
}

/// Tolerances recorded in every sidecar.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub truncation: f64,
    pub normalization: f64,
    pub probability_floor: f64,
    pub richardson: f64,
    pub classicality: f64,
}

impl Tolerances {
    fn with_truncation(truncation: f64) -> Self {
        Self {
            truncation,
            normalization: phasespace::NORMALIZATION_TOL,
            probability_floor: metrology::PROBABILITY_FLOOR,
            richardson: metrology::RICHARDSON_TOL,
            classicality: phasespace::CLASSICALITY_THRESHOLD,
        }
    }
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub preset: Option<Preset>,
    pub kind: KindArg,
    pub ms: Vec<u32>,
    pub lambdas: Vec<f64>,
    pub mu: f64,
    pub j: u32,
    pub gammas: Vec<f64>,
    /// Explicit `(m, γ)` pairs; when empty the cartesian product of `ms` and `gammas` is used.
    pub pairs: Vec<(u32, f64)>,
    pub eta: f64,
    pub grid_points: usize,
    pub q_max: Option<f64>,
    pub step: Option<f64>,
    pub tolerances: Tolerances,
    pub out: PathBuf,
    pub verify: bool,
}

const DEFAULT_LAMBDA: f64 = 0.01;
const DEFAULT_ETA: f64 = 0.98;

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn round(v: f64) -> f64 {
    (v * 1e10).round() / 1e10
}

impl RunConfig {
    /// Merges a preset's defaults with explicit flags; flags win.
    pub fn resolve(command: Option<Command>, flags: &Flags) -> CliResult<Self> {
        let command = match (command, flags.preset) {
            (Some(c), Some(p)) if c != p.command() => {
                return Err(CliError::Config(format!(
                    "preset {p} belongs to the `{:?}` command",
                    p.command()
                )))
            }
            (Some(c), _) => c,
            (None, Some(p)) => p.command(),
            (None, None) => return Err(CliError::Config("no command or preset given".into())),
        };

        let all_m = vec![0, 1, 2, 3];
        let (mut ms, mut lambdas, mut gammas, mut pairs) = (all_m.clone(), vec![DEFAULT_LAMBDA], vec![0.0], vec![]);
        match (command, flags.preset) {
            (_, Some(Preset::Fig3)) => {
                pairs = vec![(0, 1.0), (1, 0.5), (2, 0.47), (3, 0.44)];
            }
            (Command::Negativity, _) => gammas = linspace(0.0, 1.0, 101).into_iter().map(round).collect(),
            (Command::Fano, _) => lambdas = linspace(0.0, 2.0, 101).into_iter().map(round).collect(),
            (Command::Fisher, Some(Preset::Fig7)) => {
                gammas = vec![0.01];
                lambdas = vec![0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0, 1.5, 2.0, 3.0, 5.0];
            }
            (Command::Fisher, _) => gammas = linspace(0.02, 0.98, 49).into_iter().map(round).collect(),
            _ => {}
        }
        if !flags.m.is_empty() {
            ms = flags.m.clone();
            pairs.clear();
        }
        if !flags.lambda.is_empty() {
            lambdas = flags.lambda.clone();
        }
        if !flags.gamma.is_empty() {
            gammas = flags.gamma.clone();
            pairs.clear();
        }
        let cfg = RunConfig {
            command,
            preset: flags.preset,
            kind: flags.kind.unwrap_or(KindArg::Subtracted),
            ms,
            lambdas,
            mu: flags.mu.unwrap_or(DEFAULT_LAMBDA),
            j: flags.j.unwrap_or(1),
            gammas,
            pairs,
            eta: flags.eta.unwrap_or(DEFAULT_ETA),
            grid_points: flags.grid_points.unwrap_or(phasespace::DEFAULT_POINTS),
            q_max: flags.q_max,
            step: flags.step,
            tolerances: Tolerances::with_truncation(flags.tol.unwrap_or(DEFAULT_TRUNCATION_TOL)),
            out: flags.out.clone().unwrap_or_else(|| PathBuf::from("out")),
            verify: flags.verify,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> CliResult<()> {
        ChannelParams::new(0.0, self.eta)?;
        for &g in &self.gammas {
            ChannelParams::new(g, self.eta)?;
        }
        for &l in &self.lambdas {
            crate::error::check_non_negative("lambda", l)?;
        }
        crate::error::check_non_negative("mu", self.mu)?;
        if !(self.tolerances.truncation > 0.0) {
            return Err(CliError::Config("--tol must be positive".into()));
        }
        GridSpec::new(self.q_max.unwrap_or(phasespace::MIN_HALF_WIDTH), self.grid_points)?;
        if self.command == Command::Fisher && self.gammas.iter().any(|&g| g <= 0.0 || g >= 1.0) {
            return Err(CliError::Config("fisher needs every γ strictly inside (0, 1)".into()));
        }
        Ok(())
    }

    /// Grid for a state of the given mean photon number.
    pub fn grid_for(&self, mean_photons: f64) -> CliResult<GridSpec> {
        Ok(match self.q_max {
            Some(q) => GridSpec::new(q, self.grid_points)?,
            None => GridSpec::for_mean_photons_with(mean_photons, self.grid_points),
        })
    }

    fn state_for(&self, m: u32, lambda: f64) -> StateSpec {
        match self.kind {
            KindArg::Subtracted => StateSpec::subtracted(m, lambda),
            KindArg::Thermal => StateSpec::thermal(lambda),
            KindArg::Coherent => StateSpec::coherent(self.mu),
            KindArg::Fock => StateSpec::fock(self.j),
        }
    }

    fn file_tag(&self) -> String {
        self.preset
            .map(|p| p.to_string())
            .unwrap_or_else(|| format!("{:?}", self.command).to_lowercase())
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    write_atomic(path, bytes).map_err(io_err(path))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let bytes = json_bytes(value).map_err(io_err(path))?;
    write_file(path, &bytes)
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> CliResult<()> {
    let bytes = csv_bytes(rows).map_err(io_err(path))?;
    write_file(path, &bytes)
}

fn fmt_num(v: f64) -> String {
    format!("{v}")
}

/// Runs the oracle checks and fails if any disagree.
pub fn run_verify(report_to: &mut dyn std::io::Write) -> CliResult<VerificationReport> {
    let report = oracle::run_verification(&OracleLattice::default())?;
    for c in &report.checks {
        let _ = writeln!(
            report_to,
            "[{}] {}: max error {:.3e} (tolerance {:.1e})",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.max_error,
            c.tolerance
        );
    }
    if report.passed() {
        Ok(report)
    } else {
        Err(CliError::Verification(report))
    }
}

/// Wigner fields for each requested `(m, γ)`; writes `.csv`, `.bin` and a
/// `.json` sidecar per field.
pub fn cmd_wigner(cfg: &RunConfig) -> CliResult<Vec<PathBuf>> {
    let pairs: Vec<(u32, f64)> = if cfg.pairs.is_empty() {
        cfg.ms
            .iter()
            .flat_map(|&m| cfg.gammas.iter().map(move |&g| (m, g)))
            .collect()
    } else {
        cfg.pairs.clone()
    };
    let lambda = cfg.lambdas.first().copied().unwrap_or(DEFAULT_LAMBDA);
    let tag = cfg.file_tag();
    let mut written = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (m, gamma) in pairs {
        let state = cfg.state_for(m, lambda);
        let key = (state.to_kv(), gamma.to_bits());
        if !seen.insert(key) {
            continue;
        }
        let channel = ChannelParams::new(gamma, cfg.eta)?;
        let grid = cfg.grid_for(states::mean_photons(&state)?)?;
        let field = phasespace::wigner_field(&state, channel.tau(), grid, cfg.tolerances.truncation)?;
        let stem = match state.kind {
            StateKind::Coherent => format!("{tag}_coherent_mu{}_gamma{}", fmt_num(state.mu), fmt_num(gamma)),
            StateKind::Fock => format!("{tag}_fock_j{}_gamma{}", state.j, fmt_num(gamma)),
            StateKind::Thermal => format!("{tag}_thermal_lambda{}_gamma{}", fmt_num(lambda), fmt_num(gamma)),
            StateKind::SubtractedTBS => {
                format!("{tag}_m{m}_lambda{}_gamma{}", fmt_num(lambda), fmt_num(gamma))
            }
        };
        written.extend(write_field(cfg, &cfg.out.join(&stem), &field, &state, &channel)?);
    }
    Ok(written)
}

fn write_field(
    cfg: &RunConfig,
    stem: &Path,
    field: &WignerField,
    state: &StateSpec,
    channel: &ChannelParams,
) -> CliResult<Vec<PathBuf>> {
    // Stems contain decimal points, so extensions are appended rather than set.
    let with_ext = |ext: &str| {
        let mut s = stem.as_os_str().to_owned();
        s.push(ext);
        PathBuf::from(s)
    };
    let csv_path = with_ext(".csv");
    let bin_path = with_ext(".bin");
    let mut csv = Vec::new();
    field.write_csv(&mut csv).map_err(io_err(&csv_path))?;
    write_file(&csv_path, &csv)?;
    let mut bin = Vec::new();
    field.write_binary(&mut bin).map_err(io_err(&bin_path))?;
    write_file(&bin_path, &bin)?;
    let sidecar = sidecar_path(&csv_path);
    write_json(
        &sidecar,
        &json!({
            "config": cfg,
            "state": state,
            "channel": channel,
            "tau": channel.tau(),
            "grid": field.grid(),
            "convention": field.convention(),
            "tolerances": cfg.tolerances,
            "binary_layout": {
                "file": bin_path.file_name().map(|s| s.to_string_lossy().into_owned()),
                "dtype": "f64-le",
                "order": "row-major, index = i_q * n_points + i_p",
                "shape": [field.grid().n_points, field.grid().n_points],
            },
            "normalization": field.normalization(),
            "max_abs": field.max_abs(),
            "negativity_volume": negativity_volume(field),
        }),
    )?;
    Ok(vec![csv_path, bin_path, sidecar])
}

#[derive(Debug, Clone, Serialize)]
struct NegativityRow {
    state_kind: StateKind,
    m: u32,
    lambda_or_mu: f64,
    eta: f64,
    gamma: f64,
    tau: f64,
    delta: f64,
}

/// Negativity volume versus `γ` for each `m` and a coherent probe with `μ = λ`,
/// plus the first `γ` at which each curve drops below the classicality threshold.
pub fn cmd_negativity(cfg: &RunConfig) -> CliResult<Vec<PathBuf>> {
    let mut written = Vec::new();
    for &lambda in &cfg.lambdas {
        let mut specs: Vec<StateSpec> = cfg.ms.iter().map(|&m| StateSpec::subtracted(m, lambda)).collect();
        specs.push(StateSpec::coherent(lambda));
        let mut rows = Vec::new();
        let mut crossings = Vec::new();
        for spec in &specs {
            let grid = cfg.grid_for(states::mean_photons(spec)?)?;
            for pt in phasespace::negativity_sweep(spec, cfg.eta, &cfg.gammas, grid)? {
                rows.push(NegativityRow {
                    state_kind: spec.kind,
                    m: spec.index(),
                    lambda_or_mu: spec.intensity(),
                    eta: cfg.eta,
                    gamma: pt.gamma,
                    tau: pt.tau,
                    delta: pt.delta,
                });
            }
            let first_sampled = rows
                .iter()
                .filter(|r| r.state_kind == spec.kind && r.m == spec.index())
                .find(|r| r.delta < cfg.tolerances.classicality)
                .map(|r| r.gamma);
            let refined =
                phasespace::classicality_threshold(spec, cfg.eta, cfg.tolerances.classicality, grid, 0.01, 1e-4)?;
            crossings.push(json!({
                "state": spec,
                "first_sampled_gamma_below_threshold": first_sampled,
                "classicality_gamma": refined,
            }));
        }
        let path = cfg
            .out
            .join(format!("{}_lambda{}.csv", cfg.file_tag(), fmt_num(lambda)));
        write_csv(&path, &rows)?;
        let sidecar = sidecar_path(&path);
        write_json(
            &sidecar,
            &json!({ "config": cfg, "lambda": lambda, "tolerances": cfg.tolerances, "crossings": crossings }),
        )?;
        written.extend([path, sidecar]);
    }
    Ok(written)
}

#[derive(Debug, Clone, Serialize)]
struct FanoCsvRow {
    m: u32,
    lambda: f64,
    eta: f64,
    fano_exact: f64,
    fano_wigner: f64,
}

/// Fano factor versus `λ` with detection loss only, both routes.
pub fn cmd_fano(cfg: &RunConfig) -> CliResult<Vec<PathBuf>> {
    let opts = FanoSweepOptions {
        with_wigner: true,
        n_points: cfg.grid_points,
    };
    let mut rows = Vec::new();
    let mut thresholds = Vec::new();
    for &m in &cfg.ms {
        for r in statistics::fano_vs_lambda(m, cfg.eta, &cfg.lambdas, opts)? {
            rows.push(FanoCsvRow {
                m: r.m,
                lambda: r.lambda,
                eta: r.eta,
                fano_exact: r.fano_exact,
                fano_wigner: r.fano_wigner.unwrap_or(f64::NAN),
            });
        }
        thresholds
            .push(json!({ "m": m, "sub_poissonian_below_lambda": statistics::sub_poissonian_threshold(m, cfg.eta)? }));
    }
    let path = cfg.out.join(format!("{}.csv", cfg.file_tag()));
    write_csv(&path, &rows)?;
    let sidecar = sidecar_path(&path);
    write_json(
        &sidecar,
        &json!({ "config": cfg, "tolerances": cfg.tolerances, "thresholds": thresholds }),
    )?;
    Ok(vec![path, sidecar])
}

/// Marginal Fisher information for subtracted states, Fock baselines and a
/// coherent probe with `μ = λ`, over every `(λ, γ)` in the config.
pub fn cmd_fisher(cfg: &RunConfig) -> CliResult<Vec<PathBuf>> {
    let mut points: Vec<(StateSpec, f64)> = Vec::new();
    for (i, &lambda) in cfg.lambdas.iter().enumerate() {
        for spec in metrology::gamma_sweep_states(&cfg.ms, lambda) {
            // Fock baselines do not depend on λ.
            if spec.kind == StateKind::Fock && i > 0 {
                continue;
            }
            for &gamma in &cfg.gammas {
                points.push((spec, gamma));
            }
        }
    }
    let estimates: Vec<FisherEstimate> = points
        .par_iter()
        .map(|(spec, gamma)| -> CliResult<FisherEstimate> {
            let grid = cfg.grid_for(states::mean_photons(spec)?)?;
            let step = cfg.step.unwrap_or_else(|| metrology::default_step(*gamma));
            Ok(metrology::fisher_from_marginal(spec, *gamma, cfg.eta, grid, step)?)
        })
        .collect::<CliResult<_>>()?;
    let rows: Vec<FisherRow> = estimates.iter().map(FisherRow::from).collect();
    let unstable: Vec<_> = estimates
        .iter()
        .filter(|e| !e.is_step_stable())
        .map(|e| json!({ "state": e.state, "gamma": e.gamma, "richardson_rel_change": e.richardson_rel_change }))
        .collect();

    let mut crossovers = Vec::new();
    if cfg.preset == Some(Preset::Fig7) {
        let gamma = cfg.gammas[0];
        let lo = cfg.lambdas.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = cfg.lambdas.iter().copied().fold(0.0, f64::max);
        for &m in cfg.ms.iter().filter(|&&m| m > 0) {
            let cross = metrology::coherent_crossover(m, cfg.eta, gamma, lo, hi, cfg.grid_points)?;
            crossovers.push(json!({ "m": m, "coherent_overtakes_at_lambda": cross }));
        }
    }

    let path = cfg.out.join(format!("{}.csv", cfg.file_tag()));
    write_csv(&path, &rows)?;
    let sidecar = sidecar_path(&path);
    write_json(
        &sidecar,
        &json!({
            "config": cfg,
            "tolerances": cfg.tolerances,
            "step_rule": "min(1e-3, gamma/10, (1-gamma)/10) unless --step is given",
            "richardson_unstable_points": unstable,
            "coherent_crossovers": crossovers,
        }),
    )?;
    Ok(vec![path, sidecar])
}

/// Dispatches a resolved config.
pub fn run(cfg: &RunConfig, log: &mut dyn std::io::Write) -> CliResult<Vec<PathBuf>> {
    if cfg.verify || cfg.command == Command::Verify {
        run_verify(log)?;
    }
    let files = match cfg.command {
        Command::Wigner => cmd_wigner(cfg)?,
        Command::Negativity => cmd_negativity(cfg)?,
        Command::Fano => cmd_fano(cfg)?,
        Command::Fisher => cmd_fisher(cfg)?,
        Command::Verify => Vec::new(),
    };
    for f in &files {
        let _ = writeln!(log, "wrote {}", f.display());
    }
    Ok(files)
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let command = cli.command.as_ref().map(Command::from);
    let result = RunConfig::resolve(command, &cli.flags).and_then(|cfg| run(&cfg, &mut std::io::stdout()));
    match result {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Verification(report) = &e {
                for c in report.checks.iter().filter(|c| !c.passed) {
                    eprintln!("  failed: {} ({:.3e} > {:.1e})", c.name, c.max_error, c.tolerance);
                }
            }
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags() -> Flags {
        Flags::default()
    }

    #[test]
    fn presets_resolve_to_their_parameters() {
        let cfg = RunConfig::resolve(
            None,
            &Flags {
                preset: Some(Preset::Fig2),
                ..flags()
            },
        )
        .unwrap();
        assert_eq!(cfg.command, Command::Wigner);
        assert_eq!(cfg.ms, vec![0, 1, 2, 3]);
        assert_eq!(cfg.lambdas, vec![0.01]);
        assert_eq!(cfg.eta, 0.98);
        assert_eq!(cfg.gammas, vec![0.0]);

        let cfg = RunConfig::resolve(
            None,
            &Flags {
                preset: Some(Preset::Fig3),
                ..flags()
            },
        )
        .unwrap();
        assert_eq!(cfg.pairs, vec![(0, 1.0), (1, 0.5), (2, 0.47), (3, 0.44)]);

        let cfg = RunConfig::resolve(
            None,
            &Flags {
                preset: Some(Preset::Fig7),
                ..flags()
            },
        )
        .unwrap();
        assert_eq!(cfg.command, Command::Fisher);
        assert_eq!(cfg.gammas, vec![0.01]);
    }

    #[test]
    fn flags_override_presets() {
        let f = Flags {
            preset: Some(Preset::Fig4),
            m: vec![1],
            eta: Some(1.0),
            ..flags()
        };
        let cfg = RunConfig::resolve(None, &f).unwrap();
        assert_eq!(cfg.ms, vec![1]);
        assert_eq!(cfg.eta, 1.0);
        assert_eq!(cfg.gammas.len(), 101);
    }

    #[test]
    fn rejects_inconsistent_configs() {
        assert!(RunConfig::resolve(None, &flags()).is_err());
        let f = Flags {
            preset: Some(Preset::Fig4),
            ..flags()
        };
        assert!(RunConfig::resolve(Some(Command::Fano), &f).is_err());
        let f = Flags {
            eta: Some(1.5),
            ..flags()
        };
        assert!(RunConfig::resolve(Some(Command::Wigner), &f).is_err());
        let f = Flags {
            gamma: vec![0.0],
            ..flags()
        };
        assert!(RunConfig::resolve(Some(Command::Fisher), &f).is_err());
        let f = Flags {
            grid_points: Some(400),
            ..flags()
        };
        assert!(RunConfig::resolve(Some(Command::Wigner), &f).is_err());
    }

    #[test]
    fn config_round_trips_through_json() {
        let cfg = RunConfig::resolve(
            None,
            &Flags {
                preset: Some(Preset::Fig6),
                ..flags()
            },
        )
        .unwrap();
        let back: RunConfig = serde_json::from_slice(&json_bytes(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }
}
