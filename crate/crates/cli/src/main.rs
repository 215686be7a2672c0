mod commands;
mod config;
mod error;
mod manifest;
mod tables;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Globals;
use error::CliError;

/// Blockage-peeking game: channel patterns, payoff matrices, equilibria and
/// Monte-Carlo sweeps.
#[derive(Debug, Parser)]
#[command(name = "blockpeek", version)]
struct Cli {
    /// Flat JSON configuration; missing keys take default values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Seed for fading draws (overrides `master_seed` in the config).
    #[arg(long, global = true, value_name = "INT")]
    seed: Option<u64>,
    /// Directory receiving all output files.
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    /// Only report errors.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Transmit antenna pattern over [-90, 90] degrees.
    Pattern {
        /// Angular step in degrees, in (0, 5].
        #[arg(long, default_value_t = 0.1)]
        resolution: f64,
        #[arg(long, default_value = "pattern.csv")]
        output: String,
    },
    /// Payoff matrix of one fading realization.
    Payoff {
        #[arg(long, default_value = "payoff.csv")]
        output: String,
    },
    /// Mixed equilibrium of a matrix file, or of a freshly built payoff matrix.
    Solve {
        /// CSV matrix; labelled (as written by `payoff`) or bare numeric.
        #[arg(long, value_name = "PATH")]
        matrix: Option<PathBuf>,
        #[arg(long, default_value = "equilibrium.json")]
        output: String,
    },
    /// Equilibrium statistics over obstacle distances and fading realizations.
    Sweep {
        /// Also write every per-realization equilibrium.
        #[arg(long)]
        dump_realizations: bool,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("BLOCKPEEK_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| {
        CliError::parse(
            "BLOCKPEEK_THREADS",
            format!("expected a positive integer, got {raw:?}"),
        )
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Domain(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let globals = Globals {
        config: cli.config,
        seed: cli.seed,
        out: cli.out,
    };
    let files = match &cli.command {
        Command::Pattern { resolution, output } => {
            commands::pattern(&globals, *resolution, output)?
        }
        Command::Payoff { output } => commands::payoff(&globals, output)?,
        Command::Solve { matrix, output } => commands::solve(&globals, matrix.as_deref(), output)?,
        Command::Sweep { dump_realizations } => commands::sweep(&globals, *dump_realizations)?,
    };
    for f in files {
        log::debug!("output {}", f.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.quiet { "error" } else { "info" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("blockpeek: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
