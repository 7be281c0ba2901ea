//! Command-line front end.
//!
//! Exit codes: 0 pass, 2 some acceptance check failed, 1 runtime error,
//! 64 usage error, 66 unreadable config. `SEMILAB_OUTPUT_DIR` overrides the
//! config's `output` directory.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::config::Config;
use crate::error::{LabError, Result};
use crate::experiments::Experiment;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_NO_INPUT: i32 = 66;

/// Environment variable that overrides the output directory.
pub const OUTPUT_DIR_ENV: &str = "SEMILAB_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "semilab", version, about = "Semiclassical experiment runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run an experiment and write its CSV and JSON reports.
    Run {
        config: PathBuf,
        /// Output directory (overrides the config and the environment).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a config without computing anything.
    Validate { config: PathBuf },
    /// List the built-in symbols and Hamiltonians.
    ListCatalog,
    /// Print the version.
    Version,
}

fn read_config(path: &Path) -> Result<Config> {
    let text = std::fs::read_to_string(path).map_err(|source| LabError::Unreadable {
        path: path.to_path_buf(),
        source,
    })?;
    Config::parse(&text)
}

fn exit_for(e: &LabError) -> i32 {
    match e {
        LabError::Unreadable { .. } => EXIT_NO_INPUT,
        _ => EXIT_ERROR,
    }
}

/// Parses `args` (program name first) and executes; returns the exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_PASS {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_for(&e)
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    let io = |e: std::io::Error| LabError::Write {
        path: PathBuf::from("<stdout>"),
        source: e,
    };
    match command {
        Command::Version => {
            writeln!(out, "semilab {}", env!("CARGO_PKG_VERSION")).map_err(io)?;
            Ok(EXIT_PASS)
        }
        Command::ListCatalog => {
            for name in semiclassical::symbols::catalog::names() {
                writeln!(out, "{name}").map_err(io)?;
            }
            Ok(EXIT_PASS)
        }
        Command::Validate { config } => {
            let cfg = read_config(&config)?;
            Experiment::from_config(&cfg)?;
            writeln!(out, "OK").map_err(io)?;
            Ok(EXIT_PASS)
        }
        Command::Run { config, out: dir } => {
            let cfg = read_config(&config)?;
            let exp = Experiment::from_config(&cfg)?;
            let dir = dir
                .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from(&exp.common().output));
            let report = exp.run(&cfg)?;
            let (csv, json) = report.write_files(&dir)?;
            for c in &report.summary.checks {
                writeln!(
                    out,
                    "{} {} = {} ({})",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.value,
                    c.threshold
                )
                .map_err(io)?;
            }
            for c in report.summary.cross_checks.iter().filter(|c| !c.passed) {
                writeln!(
                    out,
                    "FAIL cross-check {}: difference {:e} > {:e}",
                    c.description, c.difference, c.tolerance
                )
                .map_err(io)?;
            }
            writeln!(out, "wrote {} and {}", csv.display(), json.display()).map_err(io)?;
            Ok(if report.summary.passed {
                EXIT_PASS
            } else {
                EXIT_CHECK_FAILED
            })
        }
    }
}
