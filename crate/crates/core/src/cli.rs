//! Command-line front end.
//!
//! [`run`] takes the arguments after the program name and writes to the given
//! streams, so the binary is a two-line wrapper and tests drive it directly.
//! Exit codes: 0 success, 1 usage error, 2 invalid input, 3 infeasible.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::asymptotics::{high_snr_study, low_snr_study, AsymptoticError, AsymptoticScenario, StudyRow};
use crate::bounds::{low_snr_linear_report, optimize_bound, BoundKind};
use crate::experiments::{emit_plot_script, read_sweep_config, run_sweep, write_csv_file, ExperimentError, SweepRow};
use crate::model::scenario_file::{read_scenario, ScenarioFileError};
use crate::model::{OptimizerConfig, RateKind, RateReport, Scenario};
use crate::optimizer::{optimize_schemes, OptimizerError};
use crate::schemes::{SchemeError, SchemeId};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "relaylab", about = "Rates and cut-set bounds for the half-duplex parallel relay channel")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Optimize one scheme or all of them for a scenario.
    Rate {
        #[arg(long)]
        scenario: PathBuf,
        /// dpc, bme-succ, bme-back, bme-dpc, ddf, ssrd or all.
        #[arg(long)]
        scheme: String,
        /// Grid points per dimension for every scheme.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the rows as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Evaluate an upper bound.
    Bound {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_enum)]
        kind: BoundArg,
        /// Relay-to-source power ratios for the linear bound; default P1/P0 and P2/P0.
        #[arg(long, requires = "gamma2")]
        gamma1: Option<f64>,
        #[arg(long, requires = "gamma1")]
        gamma2: Option<f64>,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a sweep described by a TOML file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write a plot description.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Asymptotic study over a list of source powers; powers in the scenario
    /// file are ignored.
    Asym {
        #[arg(long, value_enum)]
        mode: AsymMode,
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        gamma1: f64,
        #[arg(long)]
        gamma2: f64,
        /// Comma-separated source powers in dB, e.g. -30,-20,-10.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        p0_db_list: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Every scheme and both cut-set bounds, best first.
    Compare {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BoundArg {
    Full,
    Successive,
    LowSnrLinear,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AsymMode {
    HighSnr,
    LowSnr,
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl ToString) -> Self {
        Self { code: EXIT_INVALID, message: message.to_string() }
    }
}

impl From<ScenarioFileError> for Failure {
    fn from(e: ScenarioFileError) -> Self {
        Self::invalid(format!("scenario: {e}"))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::invalid(e)
    }
}

impl From<OptimizerError> for Failure {
    fn from(e: OptimizerError) -> Self {
        let code = match &e {
            OptimizerError::NoFeasiblePoint
            | OptimizerError::Scheme(SchemeError::Infeasible(_) | SchemeError::CornerInfeasible { .. }) => EXIT_INFEASIBLE,
            _ => EXIT_INVALID,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Optimizer { source, .. } => source.into(),
            e => Self::invalid(e),
        }
    }
}

impl From<AsymptoticError> for Failure {
    fn from(e: AsymptoticError) -> Self {
        match e {
            AsymptoticError::Optimizer(e) => e.into(),
            e => Self::invalid(e),
        }
    }
}

/// Runs one command. `args` excludes the program name.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let argv = std::iter::once("relaylab".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            } else {
                let _ = write!(err, "{}", e.render());
                EXIT_USAGE
            };
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(f) => return report(f, err),
    };
    // The pool needs a `Send` closure, so output is buffered and copied out.
    let (result, text) = pool.install(|| {
        let mut buf = Vec::new();
        (dispatch(cli.command, &mut buf), buf)
    });
    let _ = out.write_all(&text);
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => report(f, err),
    }
}

fn report(f: Failure, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "error: {}", f.message);
    f.code
}

/// Worker pool capped by `RELAYLAB_THREADS` when set.
fn thread_pool() -> Result<rayon::ThreadPool, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("RELAYLAB_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => builder = builder.num_threads(n),
            _ => return Err(Failure::invalid(format!("RELAYLAB_THREADS must be a positive integer, got `{v}`"))),
        }
    }
    builder.build().map_err(Failure::invalid)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Rate { scenario, scheme, grid, seed, csv } => rate(&read_scenario(scenario)?, &scheme, grid, seed, csv, out),
        Command::Bound { scenario, kind, gamma1, gamma2, grid, seed } => {
            let s = read_scenario(scenario)?;
            let cfg = with_grid(OptimizerConfig::for_bounds().with_seed(seed), grid);
            let r = match (kind, gamma1.zip(gamma2)) {
                (BoundArg::LowSnrLinear, Some((g1, g2))) => {
                    low_snr_linear_report(&s.gains, g1, g2, s.budget.p0).map_err(Failure::invalid)?
                }
                (BoundArg::LowSnrLinear, None) => optimize_bound(BoundKind::LowSnrLinear, &s.gains, &s.budget, &cfg)?,
                (BoundArg::Full, _) => optimize_bound(BoundKind::FullCutset, &s.gains, &s.budget, &cfg)?,
                (BoundArg::Successive, _) => optimize_bound(BoundKind::SuccessiveCutset, &s.gains, &s.budget, &cfg)?,
            };
            writeln!(out, "{} {:.9}", r.kind, r.total_bpcu)?;
            Ok(())
        }
        Command::Sweep { config, out: path, plot } => {
            let cfg = read_sweep_config(&config)?;
            let rows = run_sweep(&cfg)?;
            let bytes = write_csv_file(&rows, &path)?;
            writeln!(out, "wrote {} rows ({bytes} bytes) to {}", rows.len(), path.display())?;
            if let Some(p) = plot {
                let bytes = emit_plot_script(&rows, std::fs::File::create(&p)?)?;
                writeln!(out, "wrote plot description ({bytes} bytes) to {}", p.display())?;
            }
            Ok(())
        }
        Command::Asym { mode, scenario, gamma1, gamma2, p0_db_list, seed } => {
            let s = read_scenario(scenario)?;
            let (s, relabeled) = canonical(s, matches!(mode, AsymMode::LowSnr));
            let (gamma1, gamma2) = if relabeled { (gamma2, gamma1) } else { (gamma1, gamma2) };
            let scn = AsymptoticScenario::new(s.gains, gamma1, gamma2, p0_db_list)?;
            let cfg = OptimizerConfig::default().with_seed(seed);
            let rows = match mode {
                AsymMode::HighSnr => high_snr_study(&scn, &cfg)?,
                AsymMode::LowSnr => low_snr_study(&scn, &cfg)?,
            };
            if relabeled {
                writeln!(out, "{RELABEL_NOTE}")?;
            }
            asym_table(&rows, matches!(mode, AsymMode::HighSnr), out)?;
            Ok(())
        }
        Command::Compare { scenario, seed } => compare(read_scenario(scenario)?, seed, out),
    }
}

const RELABEL_NOTE: &str = "note: h01 < h02, relays relabeled (relay 1 <-> relay 2); allocations refer to the relabeled network";

/// Swaps the relays when `needed` and `h01 < h02`.
fn canonical(s: Scenario, needed: bool) -> (Scenario, bool) {
    if needed && !s.is_canonically_ordered() {
        (s.relays_swapped(), true)
    } else {
        (s, false)
    }
}

fn with_grid(cfg: OptimizerConfig, grid: Option<usize>) -> OptimizerConfig {
    match grid {
        Some(n) => cfg.with_grid(n),
        None => cfg,
    }
}

fn rate(s: &Scenario, scheme: &str, grid: Option<usize>, seed: u64, csv: Option<PathBuf>, out: &mut dyn Write) -> Result<(), Failure> {
    let ids: Vec<SchemeId> = if scheme == "all" {
        SchemeId::ALL.to_vec()
    } else {
        vec![scheme.parse::<SchemeId>().map_err(|m| Failure { code: EXIT_USAGE, message: m })?]
    };
    let (s, relabeled) = canonical(*s, ids.iter().any(|id| id.needs_canonical_order()));
    let mut results = optimize_schemes(&ids, &s.gains, &s.budget, |id| with_grid(OptimizerConfig::for_scheme(id).with_seed(seed), grid));
    let mut reports = Vec::new();
    for id in &ids {
        reports.push(results.remove(id).expect("requested scheme is computed")?);
    }
    if relabeled {
        writeln!(out, "{RELABEL_NOTE}")?;
    }
    rate_table(&reports, None, out)?;
    if let Some(path) = csv {
        let rows: Vec<SweepRow> = reports
            .into_iter()
            .map(|report| SweepRow { scenario_id: 0, axis_value: 0.0, gains: s.gains, budget: s.budget, report })
            .collect();
        write_csv_file(&rows, &path)?;
    }
    Ok(())
}

fn compare(s: Scenario, seed: u64, out: &mut dyn Write) -> Result<(), Failure> {
    let (s, relabeled) = canonical(s, true);
    let mut results = optimize_schemes(&SchemeId::ALL, &s.gains, &s.budget, |id| OptimizerConfig::for_scheme(id).with_seed(seed));
    let mut reports = Vec::new();
    for id in SchemeId::ALL {
        reports.push(results.remove(&id).expect("every scheme is computed")?);
    }
    let cfg = OptimizerConfig::for_bounds().with_seed(seed);
    let full = optimize_bound(BoundKind::FullCutset, &s.gains, &s.budget, &cfg)?;
    let full_rate = full.total_bpcu;
    reports.push(full);
    reports.push(optimize_bound(BoundKind::SuccessiveCutset, &s.gains, &s.budget, &cfg)?);
    reports.sort_by(|a, b| b.total_bpcu.total_cmp(&a.total_bpcu));
    if relabeled {
        writeln!(out, "{RELABEL_NOTE}")?;
    }
    rate_table(&reports, Some(full_rate), out)?;
    Ok(())
}

fn rate_table(reports: &[RateReport], bound: Option<f64>, out: &mut dyn Write) -> std::io::Result<()> {
    let ratio_head = if bound.is_some() { format!(" {:>12}", "ratio_cutset") } else { String::new() };
    writeln!(out, "{:<24} {:>14}{ratio_head} {:>11} {:>11} {:>11} {:>11}  params", "rate", "total_bpcu", "t1", "t2", "t3", "t4")?;
    for r in reports {
        let ratio = match bound {
            Some(b) if b > 0.0 => format!(" {:>12.9}", r.total_bpcu / b),
            Some(_) => format!(" {:>12}", "-"),
            None => String::new(),
        };
        let t = r.allocation.times();
        let params: Vec<String> = r.allocation.params().iter().map(|(k, v)| format!("{k}={v:.6}")).collect();
        let name = match r.kind {
            RateKind::Scheme(id) => id.name().to_string(),
            RateKind::Bound(k) => format!("bound:{k}"),
        };
        writeln!(
            out,
            "{name:<24} {:>14.9}{ratio} {:>11.9} {:>11.9} {:>11.9} {:>11.9}  {}",
            r.total_bpcu,
            t[0],
            t[1],
            t[2],
            t[3],
            params.join(" ")
        )?;
    }
    Ok(())
}

fn asym_table(rows: &[StudyRow], high: bool, out: &mut dyn Write) -> std::io::Result<()> {
    let extra = if high { "t3+t4" } else { "all_common" };
    writeln!(out, "{:>8} {:>14} {:>14} {:>12} {:>14} {:>12}  flags", "p0_db", "scheme_bpcu", "bound_bpcu", "ratio", "gap_bits", extra)?;
    for r in rows {
        let x = if high { r.t_hat3_plus_t_hat4 } else { r.all_common_rate };
        let x = x.map_or("-".to_string(), |v| format!("{v:.9}"));
        let flag = if r.condition_violated { "condition-violated" } else { "" };
        writeln!(
            out,
            "{:>8.2} {:>14.9} {:>14.9} {:>12.9} {:>14.9} {:>12}  {flag}",
            r.p0_db, r.scheme_rate, r.bound_rate, r.ratio, r.gap_bits, x
        )?;
    }
    Ok(())
}
