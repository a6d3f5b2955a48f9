use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use slring_cli::cache::BasisCache;
use slring_cli::criteria::run_suite_report;
use slring_cli::report::Report;
use slring_cli::tasks::{self, Settings, VerifyTask, DEFAULT_SAMPLES};
use slring_cli::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "slring",
    version,
    about = "Exact special linear rings over composition algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Worker threads for closure computations.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Random samples for isometry and iota checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory for cached closure bases.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Names of the built-in algebras.
    ListAlgebras,
    /// Load and validate an algebra.
    CheckAlgebra {
        #[arg(long)]
        algebra: String,
    },
    Compute {
        #[arg(long, value_enum)]
        task: ComputeTask,
        /// Built-in name or path to an algebra file.
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    Verify {
        #[arg(long, value_enum, required_unless_present = "all")]
        task: Option<TaskArg>,
        /// Built-in name or path to an algebra file.
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        /// Run the full acceptance suite.
        #[arg(long)]
        all: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ComputeTask {
    SlDim,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum TaskArg {
    IdentitySuite,
    ThAssociative,
    ThMult,
    #[value(name = "lemma-basis")]
    Sl2Basis,
    Kernel,
    Isometry,
    Iota,
    Signature,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Json,
    Markdown,
}

fn verify_task(t: TaskArg) -> Option<VerifyTask> {
    Some(match t {
        TaskArg::IdentitySuite => VerifyTask::IdentitySuite,
        TaskArg::ThAssociative => VerifyTask::ThAssociative,
        TaskArg::ThMult => VerifyTask::ThMult,
        TaskArg::Sl2Basis => VerifyTask::Sl2Basis,
        TaskArg::Kernel => VerifyTask::Kernel,
        TaskArg::Isometry => VerifyTask::Isometry,
        TaskArg::Iota => VerifyTask::Iota,
        TaskArg::Signature => VerifyTask::Signature,
        TaskArg::All => return None,
    })
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Markdown => report.to_markdown(),
    }
}

fn list(common: &Common) -> Result<(), CliError> {
    let rows = tasks::list_algebras()?;
    let text = match common.format {
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(name, dim, field, sig)| {
                    serde_json::json!({
                        "name": name,
                        "dim": dim,
                        "field": field.code(),
                        "signature": sig.map(|(p, q)| vec![p, q]),
                    })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&items).expect("plain values serialize");
            s.push('\n');
            s
        }
        Format::Markdown => {
            let mut s = String::from("| name | dim | field | signature |\n|---|---|---|---|\n");
            for (name, dim, field, sig) in &rows {
                let sig = sig
                    .map(|(p, q)| format!("({p},{q})"))
                    .unwrap_or_else(|| "-".into());
                s.push_str(&format!("| {name} | {dim} | {} | {sig} |\n", field.code()));
            }
            s
        }
    };
    emit(&text, common.out.as_ref())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let common = &cli.common;
    if common.threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    let settings = Settings {
        threads: common.threads,
        samples: common.samples,
        seed: common.seed,
        cache: common.cache_dir.clone().map(BasisCache::new),
    };
    let report = match cli.command {
        Command::ListAlgebras => {
            list(common)?;
            return Ok(true);
        }
        Command::CheckAlgebra { algebra } => {
            tasks::check_algebra(&tasks::resolve_algebra(&algebra)?)?
        }
        Command::Compute {
            task: ComputeTask::SlDim,
            algebra,
            m,
        } => tasks::compute_sl_dim(&tasks::resolve_algebra(&algebra)?, m, &settings)?,
        Command::Verify {
            task,
            algebra,
            m,
            all,
        } => match (all, task.and_then(verify_task)) {
            (true, _) | (false, None) => run_suite_report(&settings),
            (false, Some(t)) => {
                let name =
                    algebra.ok_or_else(|| CliError::Usage("--algebra is required".into()))?;
                tasks::verify(t, &tasks::resolve_algebra(&name)?, m, &settings)?
            }
        },
    };
    emit(&render(&report, common.format), common.out.as_ref())?;
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
