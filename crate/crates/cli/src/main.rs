use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use fockforge::{level_one_series, list_checks, run_check, run_suite_timed, CheckReport, Params, Profile, UsageError};

#[derive(Parser)]
#[command(name = "fockforge", version, about = "Exact checks of Heisenberg, Virasoro, R-matrix and ADHM identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one registered check.
    Check {
        name: String,
        #[command(flatten)]
        flags: CheckFlags,
    },
    /// Level-one multiplicities of the Langlands-dual affine algebra.
    Char {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, default_value_t = 10)]
        max: usize,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Yang-Baxter residual at a seeded rational point.
    Ybe {
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// List registered checks, optionally those whose name or module starts with PREFIX.
    List {
        prefix: Option<String>,
        /// Print the registry as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run every check of a profile.
    Suite {
        #[arg(long, default_value = "quick")]
        profile: String,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CheckFlags {
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "type")]
    ty: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

/// Usage errors exit with 2, failed checks with 1.
enum Failure {
    Usage(String),
    Io(String),
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Writes to stdout; a closed pipe (as under `| head`) is not an error.
fn print(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}").and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Io(format!("stdout: {e}"))),
        _ => Ok(()),
    }
}

fn emit(json: &str, path: Option<&PathBuf>) -> Result<(), Failure> {
    print(json)?;
    if let Some(path) = path {
        std::fs::write(path, format!("{json}\n")).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn finish_check(report: CheckReport, start: Instant, path: Option<&PathBuf>) -> Result<u8, Failure> {
    emit(&report.to_json(), path)?;
    eprintln!("{}: {} ({:.2?})", report.check, report.status, start.elapsed());
    if !report.status.is_ok() {
        for w in &report.witnesses {
            eprintln!("  {w}");
        }
    }
    Ok(report.status.exit_code() as u8)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let start = Instant::now();
    match cli.command {
        Command::Check { name, flags } => {
            let params = Params { max_degree: flags.max_degree, seed: flags.seed, ty: flags.ty, rank: flags.rank };
            finish_check(run_check(&name, &params)?, start, flags.json.as_ref())
        }
        Command::Char { ty, max, json } => finish_check(level_one_series(&ty, max)?, start, json.as_ref()),
        Command::Ybe { degree, seed, json } => {
            finish_check(run_check("ybe", &Params::degree(degree).with_seed(seed))?, start, json.as_ref())
        }
        Command::List { prefix, json } => {
            let checks = list_checks(prefix.as_deref());
            if json {
                print(&serde_json::to_string_pretty(&checks).expect("registry serializes"))?;
            } else {
                for c in &checks {
                    let flags: Vec<String> = c.flags.iter().map(|f| format!("{} [{}]", f.name, f.default)).collect();
                    print(&format!("{:<18} {:<11} {}\n{:<30} {}", c.name, c.module, c.summary, "", flags.join(" ")))?;
                }
            }
            eprintln!("{} checks", checks.len());
            Ok(0)
        }
        Command::Suite { profile, json } => {
            let profile: Profile = profile.parse()?;
            let (report, times) = run_suite_timed(profile);
            emit(&report.to_json(), json.as_ref())?;
            for (c, t) in report.checks.iter().zip(&times) {
                eprintln!("{:<18} seed {:<3} {:<9} {t:.2?}", c.check, c.seed, c.status.to_string());
            }
            eprintln!(
                "{} profile: {} passed, {} measured, {} failed ({:.2?})",
                report.profile,
                report.passed,
                report.measured,
                report.failed,
                start.elapsed()
            );
            Ok(report.status.exit_code() as u8)
        }
    }
}
