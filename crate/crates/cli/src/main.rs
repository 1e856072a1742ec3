//! Command-line driver for the cavity-reflection cat-state model.
//!
//! Subcommands: `simulate` (one protocol run, metrics printed), `sweep`
//! (CSV of metrics along one parameter axis), `table` (loss-tolerance
//! search over requested rows), `chain` (bare splitter chain), `geometry`
//! (delay-line sizing) and `validate` (the built-in self-check suite).
//!
//! Exit codes: 0 success, 1 configuration or argument error, 2 self-check
//! failure, 3 numeric diagnostic raised by an otherwise valid run.

mod config;
mod output;

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use catoptric::{
    build_grid, find_epsilon_tolerance, geometry_estimate, metrics_report, run_all, run_chain,
    run_multiple_reflection, run_single_reflection, sweep, C64, ChainConfig, FaultInjection,
    ObjectState, SweepAxis, SweepSpec, ToleranceMetric,
};

use config::{ConfigFile, Mode};
use output::{
    chain_csv, fmt_sig, sweep_csv, table_csv, trace_csv, write_atomic, TableRequest,
};

/// Failure classes, one per exit code.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable, malformed or out-of-range input (exit 1).
    Config(String),
    /// One or more self-checks failed (exit 2).
    Validation(String),
    /// A numeric guard fired during an otherwise valid run (exit 3).
    Numeric(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(text) | CliError::Validation(text) | CliError::Numeric(text) => text,
        }
    }
}

impl From<catoptric::Error> for CliError {
    fn from(err: catoptric::Error) -> Self {
        match err {
            catoptric::Error::Truncation { .. } | catoptric::Error::NegativeCattiness { .. } => {
                CliError::Numeric(err.to_string())
            }
            _ => CliError::Config(err.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Config(err.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "catoptric",
    version,
    about = "Coherent-state model of cat generation by repeated cavity reflection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the protocol once and print its metrics.
    Simulate {
        /// Parameter file (TOML).
        #[arg(long)]
        config: PathBuf,
        /// Also write a per-pass amplitude trace to this CSV file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Evaluate metrics along one parameter axis and write a CSV table.
    Sweep {
        /// Parameter file providing the base point (TOML).
        #[arg(long)]
        config: PathBuf,
        /// Quantity to vary; gamma and delta move the dimensionless
        /// combinations kappa_r*gamma/g^2 and kappa_r*delta/g^2.
        #[arg(long, value_enum)]
        axis: AxisArg,
        /// First grid value.
        #[arg(long, allow_negative_numbers = true)]
        min: f64,
        /// Last grid value.
        #[arg(long, allow_negative_numbers = true)]
        max: f64,
        /// Number of grid points.
        #[arg(long)]
        count: usize,
        /// Space the grid logarithmically (bounds must be positive).
        #[arg(long)]
        log: bool,
        /// Add single-bounce comparison columns.
        #[arg(long)]
        single: bool,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Find the largest tolerable per-pass mirror loss for each requested
    /// row and write the results as CSV.
    Table {
        /// Parameter file providing the cavity rates (TOML); each row
        /// overrides alpha_sq and m_cycles.
        #[arg(long)]
        config: PathBuf,
        /// Quality measure held above the threshold.
        #[arg(long, value_enum)]
        metric: MetricArg,
        /// File of alpha_sq,m_cycles,threshold triples, one per line.
        #[arg(long)]
        rows: PathBuf,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Push a coherent pulse through a lossless splitter chain with an
    /// object between the splitters.
    Chain {
        /// Input intensity |alpha|^2.
        #[arg(long, allow_negative_numbers = true)]
        alpha_sq: f64,
        /// Number of splitters.
        #[arg(long)]
        stages: u32,
        /// What sits between consecutive splitters.
        #[arg(long, value_enum)]
        object: ObjectArg,
        /// Per-splitter rotation angle in radians; defaults to pi/(2*stages).
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
        /// Output CSV path; omitted prints the table to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print delay-line dimensions for a pulse length and pass count.
    Geometry {
        /// Pulse duration in microseconds.
        #[arg(long, allow_negative_numbers = true)]
        pulse_us: f64,
        /// Switching dead time in microseconds.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        switch_us: f64,
        /// Number of reflection passes.
        #[arg(long)]
        cycles: u32,
    },
    /// Run the built-in self-check suite and report every check.
    Validate {
        /// Deliberately corrupt one check input to prove the suite can fail.
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AxisArg {
    /// Combined damping kappa_r*gamma/g^2.
    Gamma,
    /// Combined detuning kappa_r*delta/g^2.
    Delta,
    /// Mirror intensity loss per pass.
    Epsilon,
    /// Reflector-port decay rate.
    #[value(name = "kappa_r")]
    KappaR,
}

impl From<AxisArg> for SweepAxis {
    fn from(axis: AxisArg) -> Self {
        match axis {
            AxisArg::Gamma => SweepAxis::GammaTilde,
            AxisArg::Delta => SweepAxis::DeltaTilde,
            AxisArg::Epsilon => SweepAxis::Epsilon,
            AxisArg::KappaR => SweepAxis::KappaR,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MetricArg {
    /// Fidelity against the cat the run itself prepared.
    Fef,
    /// Cattiness witness.
    Cattiness,
}

impl From<MetricArg> for ToleranceMetric {
    fn from(metric: MetricArg) -> Self {
        match metric {
            MetricArg::Fef => ToleranceMetric::EffectiveFidelity,
            MetricArg::Cattiness => ToleranceMetric::Cattiness,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ObjectArg {
    /// Nothing between the splitters.
    Pass,
    /// A perfect absorber emptying the far zone.
    Block,
    /// A pi phase plate on the far zone.
    Phase,
}

impl From<ObjectArg> for ObjectState {
    fn from(object: ObjectArg) -> Self {
        match object {
            ObjectArg::Pass => ObjectState::Pass,
            ObjectArg::Block => ObjectState::Block,
            ObjectArg::Phase => ObjectState::Phase,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FaultArg {
    /// Bias the closed-form loss overlap fed to the witness comparison.
    LossOverlap,
}

impl From<FaultArg> for FaultInjection {
    fn from(fault: FaultArg) -> Self {
        match fault {
            FaultArg::LossOverlap => FaultInjection::LossOverlap,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Simulate { config, trace } => run_simulate(&config, trace.as_deref()),
        Command::Sweep {
            config,
            axis,
            min,
            max,
            count,
            log,
            single,
            out,
        } => run_sweep(&config, axis, min, max, count, log, single, &out),
        Command::Table {
            config,
            metric,
            rows,
            out,
        } => run_table(&config, metric, &rows, &out),
        Command::Chain {
            alpha_sq,
            stages,
            object,
            theta,
            out,
        } => run_chain_cmd(alpha_sq, stages, object, theta, out.as_deref()),
        Command::Geometry {
            pulse_us,
            switch_us,
            cycles,
        } => run_geometry(pulse_us, switch_us, cycles),
        Command::Validate { inject_fault } => run_validate(inject_fault),
    }
}

fn run_simulate(config_path: &Path, trace_out: Option<&Path>) -> Result<(), CliError> {
    let file = ConfigFile::load(config_path)?;
    let mut run = file.to_run_config()?;
    run.trace_enabled = file.trace || trace_out.is_some();
    let outcome = match file.mode {
        Mode::Multi => run_multiple_reflection(&run)?,
        Mode::Single => run_single_reflection(&run)?,
    };
    let report = metrics_report(&outcome, run.alpha)?;
    println!("fidelity = {}", fmt_sig(report.fidelity));
    println!("effective_fidelity = {}", fmt_sig(report.effective_fidelity));
    println!("cattiness = {}", fmt_sig(report.cattiness));
    println!("alpha_ef_sq = {}", fmt_sig(report.alpha_ef_sq));
    println!("v_max = {}", fmt_sig(outcome.v_max));
    if let Some(path) = trace_out {
        let snapshots = outcome.trace.as_deref().unwrap_or(&[]);
        write_atomic(path, &trace_csv(snapshots))?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_sweep(
    config_path: &Path,
    axis: AxisArg,
    min: f64,
    max: f64,
    count: usize,
    log: bool,
    single: bool,
    out: &Path,
) -> Result<(), CliError> {
    let file = ConfigFile::load(config_path)?;
    let base = file.to_run_config()?;
    let spec = SweepSpec {
        axis: axis.into(),
        grid: build_grid(min, max, count, log)?,
        base,
        include_single_reflection: single,
    };
    let rows = sweep(&spec)?;
    write_atomic(out, &sweep_csv(spec.axis.label(), &rows, single))?;
    println!("wrote {} rows to {}", rows.len(), out.display());
    Ok(())
}

/// Parse a rows file of `alpha_sq,m_cycles,threshold` triples. Blank lines
/// and `#` comments are skipped, as is one optional literal header line.
fn parse_rows(path: &Path) -> Result<Vec<TableRequest>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let bad = |line: usize, what: &str| {
        CliError::Config(format!("{} line {line}: {what}", path.display()))
    };
    let mut rows = Vec::new();
    let mut seen_content = false;
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if !seen_content {
            seen_content = true;
            if fields == ["alpha_sq", "m_cycles", "threshold"] {
                continue;
            }
        }
        if fields.len() != 3 {
            return Err(bad(line_no, "expected alpha_sq,m_cycles,threshold"));
        }
        let alpha_sq: f64 = fields[0]
            .parse()
            .map_err(|_| bad(line_no, "cannot parse alpha_sq"))?;
        if !alpha_sq.is_finite() || alpha_sq <= 0.0 {
            return Err(bad(line_no, "alpha_sq must be a finite positive number"));
        }
        let m_cycles: u32 = fields[1]
            .parse()
            .map_err(|_| bad(line_no, "cannot parse m_cycles"))?;
        let threshold: f64 = fields[2]
            .parse()
            .map_err(|_| bad(line_no, "cannot parse threshold"))?;
        rows.push(TableRequest {
            alpha_sq,
            m_cycles,
            threshold,
        });
    }
    if rows.is_empty() {
        return Err(CliError::Config(format!(
            "{}: no data rows found",
            path.display()
        )));
    }
    Ok(rows)
}

fn run_table(
    config_path: &Path,
    metric: MetricArg,
    rows_path: &Path,
    out: &Path,
) -> Result<(), CliError> {
    let file = ConfigFile::load(config_path)?;
    let base = file.to_run_config()?;
    let requests = parse_rows(rows_path)?;
    let mut results = Vec::with_capacity(requests.len());
    for request in &requests {
        let mut point = base;
        point.alpha = C64::new(request.alpha_sq.sqrt(), 0.0);
        point.m_cycles = request.m_cycles;
        point.epsilon = 0.0;
        let result = find_epsilon_tolerance(&point, metric.into(), request.threshold)?;
        results.push((*request, result));
    }
    write_atomic(out, &table_csv(&results))?;
    println!("wrote {} rows to {}", results.len(), out.display());
    Ok(())
}

fn run_chain_cmd(
    alpha_sq: f64,
    stages: u32,
    object: ObjectArg,
    theta: Option<f64>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    if !alpha_sq.is_finite() || alpha_sq <= 0.0 {
        return Err(CliError::Config(format!(
            "invalid parameter `alpha_sq`: must be a finite positive number (got {alpha_sq})"
        )));
    }
    let theta = match theta {
        Some(value) => value,
        None if stages > 0 => PI / (2.0 * f64::from(stages)),
        // let the config validator report the zero stage count
        None => 0.1,
    };
    let config = ChainConfig {
        alpha: C64::new(alpha_sq.sqrt(), 0.0),
        n_stages: stages,
        theta,
        object: object.into(),
    };
    let outcome = run_chain(&config)?;
    let text = chain_csv(&outcome);
    match out {
        Some(path) => {
            write_atomic(path, &text)?;
            println!("wrote chain outcome to {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn run_geometry(pulse_us: f64, switch_us: f64, cycles: u32) -> Result<(), CliError> {
    let estimate = geometry_estimate(pulse_us * 1e-6, switch_us * 1e-6, cycles)?;
    println!("t_pulse_s = {}", fmt_sig(estimate.t_pulse));
    println!("t_switch_s = {}", fmt_sig(estimate.t_switch));
    println!("l_min_m = {}", fmt_sig(estimate.l_min));
    println!("total_flight_m = {}", fmt_sig(estimate.total_flight));
    Ok(())
}

fn run_validate(inject_fault: Option<FaultArg>) -> Result<(), CliError> {
    let fault = inject_fault.map_or(FaultInjection::None, Into::into);
    let checks = run_all(fault);
    let mut failed = 0usize;
    for check in &checks {
        let verdict = if check.passed { "[PASS]" } else { "[FAIL]" };
        println!("{verdict} {}: {}", check.name, check.detail);
        if !check.passed {
            failed += 1;
        }
    }
    println!(
        "{} checks: {} passed, {} failed",
        checks.len(),
        checks.len() - failed,
        failed
    );
    if failed > 0 {
        return Err(CliError::Validation(format!(
            "{failed} of {} checks failed",
            checks.len()
        )));
    }
    Ok(())
}
