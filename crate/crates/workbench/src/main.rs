//! `reflexive`: command-line front end for the reflexive-cycle toolkit.

mod args;
mod cache;
mod classify;
mod graphs;
mod report;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::{Cli, ClassifyArgs, Command, Format};
use crate::classify::RunConfig;

const EXIT_MISMATCH: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;
const EXIT_USAGE: u8 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] reflexive_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn io(path: &Path, source: io::Error) -> CliError {
        CliError::Io { path: path.to_path_buf(), source }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(_) => EXIT_USAGE,
            _ => 1,
        }
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => io::stdout().lock().write_all(text.as_bytes()).map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

fn timings_path(args: &ClassifyArgs) -> Option<PathBuf> {
    args.timings.clone().or_else(|| {
        args.out.as_ref().map(|out| {
            let mut name = out.as_os_str().to_owned();
            name.push(".timings.jsonl");
            PathBuf::from(name)
        })
    })
}

fn cmd_classify(args: &ClassifyArgs) -> Result<u8, CliError> {
    let cfg = RunConfig::from_args(args);
    let results = classify::run(&cfg)?;
    let (records, timings): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let text = match args.format {
        Format::Json => report::to_json_lines(&records)?,
        Format::Csv => report::to_csv(&records)?,
    };
    write_output(args.out.as_deref(), &text)?;
    if let Some(path) = timings_path(args) {
        write_output(Some(&path), &report::to_json_lines(&timings)?)?;
    }
    for r in &records {
        if r.mismatch {
            eprintln!("verdict mismatch on C({})", r.canonical_word);
        }
        for e in &r.errors {
            eprintln!("C({}): {e}", r.canonical_word);
        }
    }
    Ok(if records.iter().any(|r| r.mismatch) {
        EXIT_MISMATCH
    } else if records.iter().any(|r| r.is_inconclusive()) {
        EXIT_INCONCLUSIVE
    } else if records.iter().any(|r| !r.errors.is_empty()) {
        1
    } else {
        0
    })
}

fn dispatch(cli: &Cli) -> Result<u8, CliError> {
    let text = match &cli.command {
        Command::Classify(args) => return cmd_classify(args),
        Command::Enumerate { girth } => graphs::cmd_enumerate(*girth)?,
        Command::Hom(args) => graphs::cmd_hom(args)?,
        Command::Lift(args) => graphs::cmd_lift(args)?,
        Command::ExportDot(args) => {
            let dot = graphs::cmd_export_dot(args)?;
            write_output(args.out.as_deref(), &dot)?;
            return Ok(0);
        }
    };
    write_output(None, &text)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
