//! `sfc`: validate national-accounts data, print identities, compile
//! transactions matrices and run simulations.
//!
//! Exit status: 0 clean, 1 violations found, 2 usage or I/O error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sfc_core::ingest::{fixture_2011, Dataset};
use sfc_core::matrix;
use sfc_core::MatrixError;
use sfc_core::report::{identity_report, ledger_report, validate};
use sfc_core::simulator::{self, ScenarioConfig, SimulationState};
use sfc_core::{Mode, Money};

#[derive(Parser)]
#[command(name = "sfc", version, about = "Stock-flow consistent national accounts toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check payment systems, account chains and identities.
    Validate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        check: CheckOpts,
    },
    /// GDP from expenditure, income and production, and national disposable income.
    Identities {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        check: CheckOpts,
    },
    /// Calibrate on history and run a scenario forward.
    Simulate {
        /// History dataset (CSV or JSON) to calibrate on.
        #[arg(long, value_name = "PATH", conflicts_with = "fixture_2011", required_unless_present = "fixture_2011")]
        calibrate: Option<PathBuf>,
        /// Calibrate on the embedded 2011 data.
        #[arg(long)]
        fixture_2011: bool,
        /// Scenario file (`key = value` lines).
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        /// Output CSV; standard output when omitted.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Compile a transactions matrix into equations, T-accounts or a digraph.
    CompileMatrix {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Emit::Equations)]
        emit: Emit,
        /// Also reject sector columns that cannot balance.
        #[arg(long)]
        strict: bool,
    },
    /// Full ledger with balancing items and checks.
    Report {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        check: CheckOpts,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Dataset in CSV (`year,sector,item,direction,value`) or JSON.
    #[arg(long, value_name = "PATH")]
    data: Option<PathBuf>,
    /// Use the embedded 2011 data.
    #[arg(long)]
    fixture_2011: bool,
}

#[derive(Args)]
struct CheckOpts {
    #[arg(long, value_enum, default_value_t = ModeArg::Reported)]
    mode: ModeArg,
    /// Absolute tolerance in million euro (default 0 reported, 15 recompute).
    #[arg(long, value_name = "M€")]
    tolerance: Option<Money>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

impl CheckOpts {
    fn mode(&self) -> Mode {
        match self.mode {
            ModeArg::Reported => Mode::Reported,
            ModeArg::Recompute => Mode::Recompute,
        }
    }

    fn tolerance(&self) -> Money {
        self.tolerance.unwrap_or(match self.mode {
            ModeArg::Reported => Money::ZERO,
            ModeArg::Recompute => Money::from_millions(15),
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Reported,
    Recompute,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Equations,
    Taccounts,
    Graph,
}

enum Failure {
    /// Bad arguments, unreadable input or malformed data.
    Usage(String),
    /// The input was read but breaks an invariant.
    Invalid(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn load(source: &Source) -> Result<Dataset, Failure> {
    if source.fixture_2011 {
        return Ok(Dataset::single(fixture_2011()));
    }
    let path = source.data.as_deref().expect("clap enforces one source");
    let data = Dataset::load(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    for w in &data.warnings {
        log::warn!("{w}");
    }
    Ok(data)
}

fn emit(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn run_validate(source: &Source, opts: &CheckOpts) -> Outcome {
    let data = load(source)?;
    let reports = data
        .years
        .values()
        .map(|y| validate(y, opts.mode(), opts.tolerance()))
        .collect::<Result<Vec<_>, _>>()?;
    match opts.format {
        Format::Json => emit(&json(&reports)?)?,
        Format::Text => emit(&reports.iter().map(|r| r.to_text()).collect::<Vec<_>>().join("\n"))?,
    }
    Ok(reports.iter().all(|r| r.is_clean()))
}

fn run_identities(source: &Source, opts: &CheckOpts) -> Outcome {
    let data = load(source)?;
    let reports = data
        .years
        .values()
        .map(|y| identity_report(y, opts.mode(), opts.tolerance()))
        .collect::<Result<Vec<_>, _>>()?;
    match opts.format {
        Format::Json => emit(&json(&reports)?)?,
        Format::Text => emit(&reports.iter().map(|r| r.to_text()).collect::<String>())?,
    }
    Ok(reports.iter().all(|r| r.violations == 0))
}

fn run_report(source: &Source, opts: &CheckOpts) -> Outcome {
    let data = load(source)?;
    let reports = data
        .years
        .values()
        .map(|y| ledger_report(y, opts.mode(), opts.tolerance()))
        .collect::<Result<Vec<_>, _>>()?;
    match opts.format {
        Format::Json => emit(&json(&reports)?)?,
        Format::Text => emit(&reports.iter().map(|r| r.to_text()).collect::<Vec<_>>().join("\n"))?,
    }
    Ok(true)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn run_simulate(history: Option<&Path>, config: &Path, out: Option<&Path>) -> Outcome {
    let data = match history {
        Some(path) => load(&Source {
            data: Some(path.to_path_buf()),
            fixture_2011: false,
        })?,
        None => Dataset::single(fixture_2011()),
    };
    let cfg: ScenarioConfig = read(config)?
        .parse()
        .map_err(|e| Failure::Usage(format!("{}: {e}", config.display())))?;
    let cal = simulator::calibrate(&data)?;
    let last = data.years.values().next_back().cloned().expect("calibrated history is non-empty");
    let initial = SimulationState::initial(last, &cfg.stocks)?;
    let states = simulator::run(&initial, &cal, &cfg)?;
    match out {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            simulator::write_csv(&states, io::BufWriter::new(file))?;
        }
        None => simulator::write_csv(&states, io::stdout().lock())?,
    }
    Ok(true)
}

fn run_compile(input: &Path, mode: Emit, strict: bool) -> Outcome {
    let text = read(input)?;
    let parsed = if strict {
        matrix::parse_strict(&text)
    } else {
        matrix::parse(&text)
    };
    let invalid = |e: MatrixError| Failure::Invalid(format!("{}: {e}", input.display()));
    let m = parsed.map_err(invalid)?;
    let output = match mode {
        Emit::Equations => matrix::to_equations(&m)
            .iter()
            .map(|e| format!("{e}\n"))
            .collect(),
        Emit::Taccounts => matrix::render_taccounts(&matrix::to_taccounts(&m)),
        Emit::Graph => matrix::to_flow_graph(&m).map_err(invalid)?.to_dot(),
    };
    emit(&output)?;
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate { source, check } => run_validate(source, check),
        Command::Identities { source, check } => run_identities(source, check),
        Command::Report { source, check } => run_report(source, check),
        Command::Simulate {
            calibrate,
            fixture_2011: _,
            config,
            out,
        } => run_simulate(calibrate.as_deref(), config, out.as_deref()),
        Command::CompileMatrix { input, emit, strict } => run_compile(input, *emit, *strict),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn default_tolerance_depends_on_mode() {
        let parse = |args: &[&str]| match Cli::parse_from(args).command {
            Command::Validate { check, .. } => (check.mode(), check.tolerance()),
            _ => unreachable!(),
        };
        assert_eq!(parse(&["sfc", "validate", "--fixture-2011"]), (Mode::Reported, Money::ZERO));
        assert_eq!(
            parse(&["sfc", "validate", "--fixture-2011", "--mode", "recompute"]),
            (Mode::Recompute, Money::from_millions(15))
        );
        assert_eq!(
            parse(&["sfc", "validate", "--fixture-2011", "--tolerance", "2.5"]).1,
            Money::from_cents(250)
        );
    }

    #[test]
    fn exactly_one_source_is_required() {
        assert!(Cli::try_parse_from(["sfc", "validate"]).is_err());
        assert!(Cli::try_parse_from(["sfc", "validate", "--fixture-2011", "--data", "x.csv"]).is_err());
        assert!(Cli::try_parse_from(["sfc", "simulate", "--config", "c"]).is_err());
        assert!(Cli::try_parse_from(["sfc", "simulate", "--fixture-2011", "--config", "c"]).is_ok());
    }
}
