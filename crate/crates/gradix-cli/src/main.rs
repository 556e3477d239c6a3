//! `gradix`: validate, analyse and decompose groupoid-graded rings from JSON specs.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gradix::Error;

#[derive(Parser, Debug)]
#[command(name = "gradix", version, about = "Exact computations with groupoid-graded rings")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Emit::Text, global = true)]
    emit: Emit,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate any spec file (groupoid, ring, matrix ring, matrix, module, category).
    Validate { file: PathBuf },
    /// The four ranks of a graded matrix.
    Rank {
        file: PathBuf,
        /// Largest matrix side for the exhaustive invertible-minor search.
        #[arg(long)]
        rank_bound: Option<usize>,
    },
    /// Two-sided inverse of a square graded matrix.
    Invert { file: PathBuf },
    /// Solve A·x = b for a single column b.
    Solve { a: PathBuf, b: PathBuf },
    /// Classification flags of a semisimple ring or graded matrix ring.
    Classify { file: PathBuf },
    /// Wedderburn blocks of a graded matrix ring or graded division ring.
    Decompose { file: PathBuf },
    /// Graded isomorphism test between two semisimple rings.
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// Largest support size for the exhaustive coboundary search.
        #[arg(long)]
        coboundary_bound: Option<usize>,
    },
    /// Pseudo-dimension report for a pseudo-free module and optional span.
    Module { file: PathBuf },
    /// Preadditive categories.
    Category {
        #[command(subcommand)]
        action: CategoryAction,
    },
}

#[derive(Subcommand, Debug)]
enum CategoryAction {
    /// Matrix-form classification with the ring-side cross-check.
    Classify { file: PathBuf },
    /// The pair-groupoid-graded ring of the category.
    ToRing { file: PathBuf },
}

/// Overrides the default brute-force bounds when set.
const BOUND_ENV: &str = "GRADIX_MAX_BRUTE_FORCE";

fn env_bound() -> Option<usize> {
    std::env::var(BOUND_ENV).ok().and_then(|v| v.trim().parse().ok())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::Parse(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, result) = commands::dispatch(&cli.command, cli.seed, env_bound());
    match result {
        Ok(out) => {
            let body = match cli.emit {
                Emit::Text => out.text.trim_end().to_string(),
                Emit::Json => serde_json::to_string_pretty(&gradix::spec_io::record(name, out.json))
                    .expect("JSON values always serialize"),
            };
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout(), "{body}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("gradix {name}: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
