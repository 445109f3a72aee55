use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::Failure;

/// Rewrite one-relator relative presentations and audit diagrams over them.
#[derive(Debug, Parser)]
#[command(name = "relpres", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rewrite `w^k` over `G * ⟨t⟩` into the canonical presentation.
    Rewrite {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        word: PathBuf,
        #[arg(long)]
        power: u32,
        /// Presentation file to write; printed inside the report otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a diagram and run the curvature and motion audits.
    Audit {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized self-checks.
    Fuzz {
        #[arg(long, value_enum)]
        kind: FuzzKind,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FuzzKind {
    GaussBonnet,
    Britton,
    Rewrite,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Rewrite { group, word, power, out } => commands::rewrite(&group, &word, power, out.as_deref()),
        Command::Audit { diagram, presentation, out } => commands::audit(&diagram, &presentation, out.as_deref()),
        Command::Fuzz { kind, count, seed, out } => commands::fuzz(kind, count, seed, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
