//! Command-line interface.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use randers_core::CatalogCase;

use crate::commands::{self, Format, Report, Setup};
use crate::error::{exit, CliError};

#[derive(Debug, Parser)]
#[command(name = "randers", version, about = "Left-invariant Randers metrics on four-dimensional Lie groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Catalog case or definition file.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Catalog algebra 0..=4 with its orthonormal metric.
    #[arg(long)]
    pub case: Option<u32>,
    /// TOML definition file.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

impl Source {
    fn setup(&self) -> Result<Setup, CliError> {
        match (&self.case, &self.file) {
            (Some(id), _) => Ok(Setup::from_case(CatalogCase::from_id(*id)?)),
            (None, Some(path)) => Setup::from_file(path),
            (None, None) => Err(CliError::Usage("one of --case or --file is required".into())),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the catalog algebras with derived algebra and Douglas/Berwald directions.
    Catalog {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Validate a definition file and describe its geometry.
    Check { file: PathBuf },
    /// Classify the Randers metric with one-form Q.
    Classify {
        #[command(flatten)]
        source: Source,
        /// Comma-separated rationals, e.g. 1/2,0,0,0.
        #[arg(long = "Q", value_name = "Q", allow_hyphen_values = true)]
        q: Option<String>,
    },
    /// Recompute the Douglas/Berwald classification of the catalog and compare.
    Theorem {
        /// Replace a case's algebra and metric: CASE=FILE.
        #[arg(long = "override", value_name = "CASE=FILE")]
        overrides: Vec<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Flag curvature of the flag with pole V and transverse edge U.
    Flag {
        #[command(flatten)]
        source: Source,
        #[arg(long = "Q", value_name = "Q", allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long = "V", value_name = "V", allow_hyphen_values = true)]
        v: String,
        #[arg(long = "U", value_name = "U", allow_hyphen_values = true)]
        u: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Flag curvature over seeded random flags, as CSV.
    Sweep {
        #[command(flatten)]
        source: Source,
        #[arg(long = "Q", value_name = "Q", allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Verify the hypercomplex and hyper-Hermitian axioms of a definition file.
    HyperVerify { file: PathBuf },
}

fn parse_override(text: &str) -> Result<(CatalogCase, PathBuf), CliError> {
    let (case, path) = text
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("--override {text:?}: expected CASE=FILE")))?;
    let id = case
        .trim()
        .parse::<u32>()
        .map_err(|_| CliError::Usage(format!("--override {text:?}: {case:?} is not a case number")))?;
    Ok((CatalogCase::from_id(id)?, PathBuf::from(path)))
}

pub fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Catalog { format } => commands::catalog(*format),
        Command::Check { file } => commands::check(file),
        Command::Classify { source, q } => commands::classify(&source.setup()?, q.as_deref()),
        Command::Theorem { overrides, format } => {
            let mut loaded = Vec::with_capacity(overrides.len());
            for o in overrides {
                let (case, path) = parse_override(o)?;
                loaded.push((case, commands::load_definition(&path)?));
            }
            commands::theorem(&loaded, *format)
        }
        Command::Flag { source, q, v, u, format } => commands::flag(&source.setup()?, q.as_deref(), v, u, *format),
        Command::Sweep { source, q, samples, seed } => commands::sweep(&source.setup()?, q.as_deref(), *samples, *seed),
        Command::HyperVerify { file } => commands::hyper_verify(file),
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            if out.write_all(report.text.as_bytes()).is_err() {
                return exit::IO;
            }
            if report.success {
                exit::OK
            } else {
                exit::CHECK_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "{}", e.report());
            e.exit_code()
        }
    }
}
