//! cuspq: exact invariants of level-structure quotient surfaces at the
//! section point over the cusp, and of the three-manifolds covering the
//! three-sphere branched over the trefoil.
//!
//! Exit codes: 0 success, 1 reference-check failure or skip, 2 usage
//! error, 3 enumeration bound exceeded.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cuspq_core::report::{
    build_cover_report, build_report, build_table, render_cover_json, render_cover_md, render_json,
    render_md, render_table_csv, render_table_md,
};
use cuspq_core::verify::{run_all, CheckStatus};
use cuspq_core::{Error, StructureKind, SubgroupSpec};

const BOUND_ENV: &str = "CUSPQ_LEVEL_BOUND";
const DEFAULT_BOUND: u32 = 60;

#[derive(Parser)]
#[command(
    name = "cuspq",
    version,
    about = "Exact smoothness verdicts for level-structure quotient surfaces and \
             homeomorphism types of their trefoil branched covers"
)]
struct Cli {
    /// Largest level the coset enumeration will accept (overrides the
    /// CUSPQ_LEVEL_BOUND environment variable; default 60)
    #[arg(long, global = true)]
    bound: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StructureArg {
    /// Full level structure (a basis of the N-torsion)
    Full,
    /// A point of exact order N
    Gamma1,
    /// A cyclic subgroup of order N
    Gamma0,
}

impl StructureArg {
    fn kind(self) -> StructureKind {
        match self {
            StructureArg::Full => StructureKind::Full,
            StructureArg::Gamma1 => StructureKind::Point,
            StructureArg::Gamma0 => StructureKind::Cyclic,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Md,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one structure and level
    Report {
        #[arg(long)]
        level: u32,
        #[arg(long, value_enum)]
        structure: StructureArg,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
    },
    /// One row per level from 2 up to a maximum
    Table {
        #[arg(long, value_enum)]
        structure: StructureArg,
        /// Largest level in the sweep (inclusive)
        #[arg(long)]
        max: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Components of the branched cover over the circle K
    Cover {
        #[arg(long)]
        level: u32,
        #[arg(long, value_enum)]
        structure: StructureArg,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
    },
    /// Check every computed quantity against the bundled reference values
    VerifyPaper,
}

fn resolve_bound(flag: Option<u32>) -> Result<u32, String> {
    if let Some(bound) = flag {
        return Ok(bound);
    }
    match std::env::var(BOUND_ENV) {
        Ok(raw) => raw
            .trim()
            .parse::<u32>()
            .map_err(|_| format!("{BOUND_ENV} must be a nonnegative integer, got {raw:?}")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_BOUND),
        Err(err) => Err(format!("{BOUND_ENV}: {err}")),
    }
}

fn run(command: Command, bound: u32) -> cuspq_core::Result<(String, ExitCode)> {
    match command {
        Command::Report { level, structure, format } => {
            let report = build_report(SubgroupSpec::new(structure.kind(), level)?, bound)?;
            let out = match format {
                ReportFormat::Json => render_json(&report),
                ReportFormat::Md => render_md(&report),
            };
            Ok((out, ExitCode::SUCCESS))
        }
        Command::Table { structure, max, format } => {
            let rows = build_table(structure.kind(), max, bound)?;
            let out = match format {
                TableFormat::Csv => render_table_csv(&rows),
                TableFormat::Md => render_table_md(&rows),
            };
            Ok((out, ExitCode::SUCCESS))
        }
        Command::Cover { level, structure, format } => {
            let cover = build_cover_report(SubgroupSpec::new(structure.kind(), level)?, bound)?;
            let out = match format {
                ReportFormat::Json => render_cover_json(&cover),
                ReportFormat::Md => render_cover_md(&cover),
            };
            Ok((out, ExitCode::SUCCESS))
        }
        Command::VerifyPaper => {
            let checks = run_all(bound);
            let mut out = String::new();
            let mut all_pass = true;
            for check in &checks {
                match &check.status {
                    CheckStatus::Pass => out.push_str(&format!("   pass  {}\n", check.name)),
                    CheckStatus::Fail(msg) => {
                        all_pass = false;
                        out.push_str(&format!("   FAIL  {}: {msg}\n", check.name));
                    }
                    CheckStatus::Skipped(msg) => {
                        all_pass = false;
                        out.push_str(&format!("skipped  {}: {msg}\n", check.name));
                    }
                }
            }
            if all_pass {
                out.push_str(&format!("all {} checks passed\n", checks.len()));
                Ok((out, ExitCode::SUCCESS))
            } else {
                eprintln!("error: reference values not fully verified");
                Ok((out, ExitCode::from(1)))
            }
        }
    }
}

/// Write the rendered output in one shot; a consumer that stops reading
/// (head, a closed pipe) is not an error.
fn emit(out: &str) -> Result<(), std::io::Error> {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut handle = stdout.lock();
    match handle.write_all(out.as_bytes()).and_then(|()| handle.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let bound = match resolve_bound(cli.bound) {
        Ok(bound) => bound,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(cli.command, bound) {
        Ok((out, code)) => {
            if let Err(err) = emit(&out) {
                eprintln!("error: {err}");
                return ExitCode::from(2);
            }
            code
        }
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::BoundExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
