mod commands;
mod demo;
mod failure;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use failure::Failure;

/// Cheating analysis and point games for coin-flipping protocols.
#[derive(Parser)]
#[command(name = "bccf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a protocol file and print it normalized.
    Validate { path: PathBuf },
    /// Classical and quantum cheating probabilities with the security checks.
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        /// Write the full report as JSON.
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
        /// Seed for the solver's starting point.
        #[arg(long)]
        seed: Option<u64>,
        /// Frank–Wolfe iteration budget per solve.
        #[arg(long, default_value_t = 5000)]
        max_iter: usize,
    },
    /// Build point games from dual solutions and replay them.
    Pointgame {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::Quantum)]
        variant: VariantArg,
        /// Build both orientations and report all four coordinates.
        #[arg(long)]
        pair: bool,
        /// Export the move-by-move schedule instead of the compressed one.
        #[arg(long)]
        literal: bool,
        /// Directory for SVG figures.
        #[arg(long, value_name = "DIR")]
        svg: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 5000)]
        max_iter: usize,
    },
    /// Run a built-in protocol end to end against known values.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Quantum,
    Classical,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Quantum,
    Classical,
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoName {
    ThreeQuarters,
}

fn solve_options(seed: Option<u64>, max_iter: usize) -> bccf::SolveOptions {
    bccf::SolveOptions {
        seed,
        max_iter,
        ..Default::default()
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { path } => commands::validate(&path, out),
        Command::Analyze {
            path,
            mode,
            json,
            seed,
            max_iter,
        } => {
            let mode = match mode {
                ModeArg::Quantum => bccf::Mode::Quantum,
                ModeArg::Classical => bccf::Mode::Classical,
                ModeArg::Both => bccf::Mode::Both,
            };
            commands::analyze(
                &path,
                mode,
                json.as_deref(),
                solve_options(seed, max_iter),
                out,
            )
        }
        Command::Pointgame {
            path,
            variant,
            pair,
            literal,
            svg,
            json,
            seed,
            max_iter,
        } => {
            let opts = commands::PointgameArgs {
                kind: match variant {
                    VariantArg::Quantum => bccf::GameKind::Quantum,
                    VariantArg::Classical => bccf::GameKind::Classical,
                },
                pair,
                literal,
                svg,
                json,
                solve: solve_options(seed, max_iter),
            };
            commands::pointgame(&path, &opts, out)
        }
        Command::Demo {
            name: DemoName::ThreeQuarters,
        } => demo::three_quarters(out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
