//! Command-line front end for `wavebound`: argument parsing, config files,
//! and CSV/JSON output.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{execute, Command};
pub use config::{parse_key_values, Format, RunConfig};
pub use error::CliError;
pub use report::{read_csv, Cell, CsvTable, Report, CSV_MAGIC};

#[derive(Debug, Parser)]
#[command(name = "wavebound", version, about = "Bound states of strips with mixed Dirichlet/Neumann walls")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum CliCommand {
    /// Discrete eigenvalues below the threshold at one window size.
    Spectrum,
    /// Eigenvalue branches over a range of window sizes.
    Sweep,
    /// Probability density of one bound state on a grid.
    Field,
    /// Bracketing bounds on the number and position of eigenvalues.
    Bounds,
    /// Analytic and numerical emergence thresholds of model A.
    Thresholds,
    /// Finite-difference cross-check with Richardson extrapolation.
    Oracle,
    /// Corner exponent, monotonicity and scaling diagnostics.
    Analyze,
}

impl From<CliCommand> for Command {
    fn from(c: CliCommand) -> Self {
        match c {
            CliCommand::Spectrum => Command::Spectrum,
            CliCommand::Sweep => Command::Sweep,
            CliCommand::Field => Command::Field,
            CliCommand::Bounds => Command::Bounds,
            CliCommand::Thresholds => Command::Thresholds,
            CliCommand::Oracle => Command::Oracle,
            CliCommand::Analyze => Command::Analyze,
        }
    }
}

/// Every flag is optional and overrides the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// key = value file read before the flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub model: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub lambda: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub delta: Option<String>,
    /// Strip width (default 1).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub d: Option<String>,
    #[arg(long, global = true)]
    pub modes: Option<String>,
    #[arg(long = "scan-points", global = true)]
    pub scan_points: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// csv or json.
    #[arg(long, global = true)]
    pub format: Option<String>,
    #[arg(long, global = true)]
    pub jobs: Option<String>,
    #[arg(long = "lambda-lo", global = true)]
    pub lambda_lo: Option<String>,
    #[arg(long = "lambda-hi", global = true)]
    pub lambda_hi: Option<String>,
    #[arg(long, global = true)]
    pub step: Option<String>,
    #[arg(long, global = true)]
    pub branch: Option<String>,
    #[arg(long, global = true)]
    pub nx: Option<String>,
    #[arg(long, global = true)]
    pub ny: Option<String>,
    #[arg(long = "x-halfwidth", global = true)]
    pub x_halfwidth: Option<String>,
    #[arg(long, global = true)]
    pub rho: Option<String>,
    #[arg(long = "oracle-h", global = true)]
    pub oracle_h: Option<String>,
}

impl Flags {
    fn pairs(&self) -> Vec<(&'static str, &String)> {
        let all = [
            ("model", &self.model),
            ("lambda", &self.lambda),
            ("delta", &self.delta),
            ("d", &self.d),
            ("modes", &self.modes),
            ("scan_points", &self.scan_points),
            ("out", &self.out),
            ("format", &self.format),
            ("jobs", &self.jobs),
            ("lambda_lo", &self.lambda_lo),
            ("lambda_hi", &self.lambda_hi),
            ("step", &self.step),
            ("branch", &self.branch),
            ("nx", &self.nx),
            ("ny", &self.ny),
            ("x_halfwidth", &self.x_halfwidth),
            ("rho", &self.rho),
            ("oracle_h", &self.oracle_h),
        ];
        all.into_iter().filter_map(|(k, v)| v.as_ref().map(|v| (k, v))).collect()
    }

    /// Config file first, then flags on top.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
                RunConfig::from_text(&text)?
            }
            None => RunConfig::default(),
        };
        let flags = self.pairs();
        // A flag for one of lambda/delta replaces the other from the file.
        if flags.iter().any(|(k, _)| *k == "lambda") {
            cfg.delta = None;
        }
        if flags.iter().any(|(k, _)| *k == "delta") {
            cfg.lambda = None;
        }
        for (k, v) in flags {
            cfg.set(k, v)?;
        }
        Ok(cfg)
    }
}

/// Encodes a report in the configured format.
pub fn render(report: &Report, cfg: &RunConfig) -> String {
    match cfg.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(cfg),
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = cli.flags.resolve()?;
    let report = execute(cli.command.into(), &cfg)?;
    let text = render(&report, &cfg);
    match &cfg.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{path}: {e}")))?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}
