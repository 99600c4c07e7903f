mod config;
mod error;
mod report;
mod run;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use config::{JobConfig, DEFAULT_BUDGET};
use error::CliError;
use run::{run, Command};

const BUDGET_ENV: &str = "DRINFELD_SMB_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Md => "md",
        }
    }
}

/// Valuations of successive minimal bases, ψ-functions and conductors of Drinfeld modules.
#[derive(Parser, Debug)]
#[command(name = "drinfeld-smb", version)]
struct Args {
    command: Command,
    /// Job file, or a directory of `*.toml` jobs for batch mode.
    #[arg(long)]
    config: PathBuf,
    /// Output file; in batch mode, the output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Enumeration budget for oracle commands (overrides config and environment).
    #[arg(long)]
    budget: Option<u64>,
}

/// Per config file: output name and exit code.
type BatchResult = (PathBuf, Result<(String, i32), CliError>);

struct Rendered {
    text: String,
    exit_code: i32,
}

fn env_budget() -> Result<Option<u64>, CliError> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Validation(format!("{BUDGET_ENV}: '{s}' is not a non-negative integer"))),
        Err(_) => Ok(None),
    }
}

fn execute(cfg: JobConfig, command: Command, flag_budget: Option<u64>) -> Result<run::Outcome, CliError> {
    let job = cfg.validate()?;
    let budget = match (flag_budget, job.budget) {
        (Some(b), _) | (None, Some(b)) => b,
        (None, None) => env_budget()?.unwrap_or(DEFAULT_BUDGET),
    };
    run(&job, command, budget)
}

fn render(command: Command, format: Format, res: Result<run::Outcome, CliError>) -> Rendered {
    match res {
        Ok(o) => {
            let text = match format {
                Format::Json => pretty(&o.json),
                Format::Md => o.markdown,
            };
            Rendered { text, exit_code: o.exit_code }
        }
        Err(e) => {
            let exit_code = e.exit_code();
            let text = match format {
                Format::Json => pretty(&json!({
                    "command": command.name(),
                    "error": { "kind": e.kind(), "message": e.to_string(), "exit_code": exit_code },
                })),
                Format::Md => format!("# {}\n\nerror ({}): {e}\n", command.name(), e.kind()),
            };
            Rendered { text, exit_code }
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn single(args: &Args) -> i32 {
    let res = JobConfig::load(&args.config).and_then(|(cfg, _)| execute(cfg, args.command, args.budget));
    if let Err(e) = &res {
        eprintln!("error: {e}");
    }
    let r = render(args.command, args.format, res);
    match &args.out {
        Some(p) => {
            if let Err(e) = write(p, &r.text) {
                eprintln!("error: {e}");
                return 2;
            }
        }
        None => print!("{}", r.text),
    }
    r.exit_code
}

/// Every `*.toml` in the directory, in parallel; output names carry the config hash.
fn batch(args: &Args) -> Result<i32, CliError> {
    let out_dir = args
        .out
        .as_ref()
        .ok_or_else(|| CliError::Validation("--out: batch mode needs an output directory".into()))?;
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::Io(format!("{}: {e}", out_dir.display())))?;
    let read = std::fs::read_dir(&args.config).map_err(|e| CliError::Io(format!("{}: {e}", args.config.display())))?;
    let mut files: Vec<PathBuf> = read
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    let results: Vec<BatchResult> = files
        .par_iter()
        .map(|path| {
            let res = JobConfig::load(path).and_then(|(cfg, bytes)| {
                let digest = Sha256::digest(&bytes);
                let sha8: String = digest.iter().take(4).map(|b| format!("{b:02x}")).collect();
                let stem = path.file_stem().unwrap_or_default().to_string_lossy();
                let name = format!("{stem}-{sha8}.{}", args.format.ext());
                let r = render(args.command, args.format, execute(cfg, args.command, args.budget));
                write(&out_dir.join(&name), &r.text)?;
                Ok((name, r.exit_code))
            });
            (path.clone(), res)
        })
        .collect();
    let mut worst = 0;
    for (path, res) in results {
        match res {
            Ok((name, code)) => {
                println!("{}\t{name}\t{code}", path.display());
                worst = worst.max(code);
            }
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                worst = worst.max(e.exit_code());
            }
        }
    }
    Ok(worst)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let code = if args.config.is_dir() {
        batch(&args).unwrap_or_else(|e| {
            eprintln!("error: {e}");
            e.exit_code()
        })
    } else {
        single(&args)
    };
    ExitCode::from(code as u8)
}
