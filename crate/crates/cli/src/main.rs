//! `qmckay`: build root systems, run the property suite, and emit orbifold
//! invariant predictions.

mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qmckay::campaign::{applicable_checks, run_check, CampaignConfig, CheckKind};
use qmckay::series::DEFAULT_ORDER;
use qmckay::{Error, Execution, RootSystem, RootSystemType};

#[derive(Parser, Debug)]
#[command(name = "qmckay", version, about = "Quantum McKay algebra: root systems, checks and orbifold predictions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Cartan matrix, positive roots, highest root, h and eps.
    Roots(Common),
    /// Run the property suite for a type.
    Verify(VerifyArgs),
    /// Predicted orbifold invariants for a simply-laced type.
    Crc(CrcArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Root system label, e.g. A3, D5, E8, F4, G2.
    #[arg(value_name = "TYPE")]
    label: Option<String>,
    /// Root system label (alternative to the positional argument).
    #[arg(long = "type", value_name = "TYPE", conflicts_with = "label")]
    type_flag: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random evaluation points per campaign.
    #[arg(long, default_value_t = 200)]
    trials: u64,
    /// Truncation order of the q-series.
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: u32,
    #[arg(long, default_value_t = 5)]
    max_insertions: usize,
    /// Comma-separated subset of checks; defaults to all that apply.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
}

#[derive(Args, Debug)]
struct CrcArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 4)]
    max_insertions: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Exit 2: bad usage or unmet precondition.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u.0)
    }
}

fn runtime(e: Error) -> Failure {
    match e {
        Error::InvalidArgument(_) | Error::InvalidType { .. } | Error::BadLabel(_) | Error::NotSimplyLaced(_) => {
            Failure::Usage(e.to_string())
        }
        other => Failure::Runtime(other.to_string()),
    }
}

impl Common {
    fn rstype(&self) -> Result<RootSystemType, Usage> {
        let label = self
            .label
            .as_deref()
            .or(self.type_flag.as_deref())
            .ok_or_else(|| Usage("a root system type is required (positional or --type)".into()))?;
        Ok(label.parse()?)
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display()))),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .map_err(|e| Failure::Runtime(format!("cannot write output: {e}")))
            }
        }
    }
}

fn configure_threads() -> Result<(), Usage> {
    let Ok(value) = std::env::var("QMCKAY_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Usage(format!("QMCKAY_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Usage(format!("cannot configure thread pool: {e}")))
}

fn cmd_roots(args: &Common) -> Result<bool, Failure> {
    let rs = RootSystem::build(args.rstype()?).map_err(runtime)?;
    args.emit(&output::roots(&rs, args.format))?;
    Ok(true)
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool, Failure> {
    let t = args.common.rstype()?;
    if args.trials == 0 {
        return Err(Usage("--trials must be at least 1".into()).into());
    }
    let checks: Vec<CheckKind> = if args.checks.is_empty() {
        applicable_checks(t)
    } else {
        let mut out = Vec::new();
        for name in &args.checks {
            let kind: CheckKind = name.parse().map_err(Usage::from)?;
            if !kind.applies_to(t) {
                return Err(Usage(format!("check {kind} does not apply to {t}")).into());
            }
            if !out.contains(&kind) {
                out.push(kind);
            }
        }
        out
    };
    let rs = RootSystem::build(t).map_err(runtime)?;
    let cfg = CampaignConfig {
        seed: args.seed,
        trials: args.trials,
        order: args.order,
        max_insertions: args.max_insertions,
        execution: Execution::Parallel,
    };
    let mut outcomes = Vec::with_capacity(checks.len());
    for kind in checks {
        outcomes.push(run_check(kind, &rs, &cfg).map_err(runtime)?);
    }
    let passed = outcomes.iter().all(|o| o.passed());
    args.common.emit(&output::verify(t, &cfg, &outcomes, args.common.format))?;
    Ok(passed)
}

fn cmd_crc(args: &CrcArgs) -> Result<bool, Failure> {
    let t = args.common.rstype()?;
    if args.max_insertions < 3 {
        return Err(Usage(format!(
            "--max-insertions must be at least 3 (got {}): lower-degree terms of the potential are not defined",
            args.max_insertions
        ))
        .into());
    }
    if !t.is_simply_laced() {
        return Err(Usage(format!("crc needs a simply-laced type, got {t}")).into());
    }
    let rs = RootSystem::build_ade(t).map_err(runtime)?;
    let group = qmckay::build_group(t).map_err(runtime)?;
    let records = qmckay::crc::emit_prediction(&group, &rs, args.max_insertions).map_err(runtime)?;
    args.common.emit(&output::crc(t, &group, args.max_insertions, &records, args.common.format))?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(Usage(msg)) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let result = match &cli.command {
        Command::Roots(args) => cmd_roots(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Crc(args) => cmd_crc(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `qmckay --help` for usage");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
