//! `rcat-verify`: run verification campaigns over the finite models.

mod campaign;
mod checks;
mod report;

use campaign::{Config, ConfigPatch, Context, ModelKind};
use checks::Outcome;
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use report::{CheckResult, ErrorInfo, Report, Verdict};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: rcat::Error },
    #[error(transparent)]
    Check(#[from] rcat::Error),
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "IO_ERROR",
            CliError::Input { source, .. } | CliError::Check(source) => source.code(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "rcat-verify",
    version,
    about = "Run law suites and construction checks over finite models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum)]
    model: Option<ModelKind>,
    #[arg(long, global = true)]
    prime: Option<u32>,
    #[arg(long, global = true)]
    jet_depth: Option<usize>,
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Also write the JSON report here.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Record per-check wall time; reports are then no longer reproducible byte for byte.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a campaign file; exits 0 iff every check passes.
    Run { campaign: PathBuf },
    /// Explain a check and the settings it reads.
    Describe { check: String },
    /// List the registered checks.
    List,
}

impl Cli {
    fn patch(&self) -> ConfigPatch {
        ConfigPatch {
            model: self.model,
            prime: self.prime,
            jet_depth: self.jet_depth,
            budget: self.budget,
            seed: self.seed,
            ..ConfigPatch::default()
        }
    }
}

fn run_check(id: &str, cx: &Context, timings: bool) -> CheckResult {
    let start = Instant::now();
    let outcome = checks::lookup(id).and_then(|c| (c.run)(cx));
    let millis = timings.then(|| start.elapsed().as_millis() as u64);
    let mut r = CheckResult {
        id: id.into(),
        verdict: Verdict::Fail,
        laws: Vec::new(),
        skipped: None,
        error: None,
        output: None,
        millis,
    };
    match outcome {
        Ok(Outcome::Ran { laws, output }) => {
            r.verdict = if laws.iter().all(|l| l.passed()) {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            r.laws = laws;
            r.output = output;
        }
        Ok(Outcome::Skipped(why)) => {
            r.verdict = Verdict::Skipped;
            r.skipped = Some(why);
        }
        Err(e) => {
            r.error = Some(ErrorInfo {
                code: e.code(),
                message: e.to_string(),
            })
        }
    }
    r
}

fn run(cli: &Cli, path: &Path) -> Result<Report, CliError> {
    let campaign = campaign::load_campaign(path)?;
    for id in &campaign.checks {
        checks::lookup(id).map_err(|source| CliError::Input {
            path: path.to_owned(),
            source,
        })?;
    }
    let mut config = Config::default();
    config.apply(&campaign.config);
    config.apply(&cli.patch());
    let base = path.parent().unwrap_or(Path::new("."));
    let cx = Context::load(&campaign, base, config)?;
    let results: Vec<CheckResult> = campaign
        .checks
        .par_iter()
        .map(|id| run_check(id, &cx, cli.timings))
        .collect();
    Ok(Report::new(
        campaign.name.clone(),
        cx.config.clone(),
        results,
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::List => {
            for c in checks::REGISTRY {
                println!("{:<26} {}", c.id, c.summary);
            }
            ExitCode::SUCCESS
        }
        Command::Describe { check } => match checks::lookup(check) {
            Ok(c) => {
                println!("{}\n  {}", c.id, c.summary);
                let knobs = if c.knobs.is_empty() {
                    "none".to_string()
                } else {
                    c.knobs.join(", ")
                };
                println!("  settings: {knobs}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("{}: {e}", e.code());
                ExitCode::from(2)
            }
        },
        Command::Run { campaign } => match run(&cli, campaign) {
            Ok(report) => {
                if let Some(p) = &cli.report {
                    if let Err(e) = std::fs::write(p, report.to_json()) {
                        eprintln!("IO_ERROR: {}: {e}", p.display());
                        return ExitCode::from(2);
                    }
                }
                match cli.format {
                    Format::Json => print!("{}", report.to_json()),
                    Format::Text => print!("{}", report.to_text()),
                }
                if report.verdict == Verdict::Pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::FAILURE
                }
            }
            Err(e) => {
                eprintln!("{}: {e}", e.code());
                ExitCode::from(2)
            }
        },
    }
}
