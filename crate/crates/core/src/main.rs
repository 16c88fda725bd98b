use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use weakprobe::cli::{self, OutputFormat};
use weakprobe::config::{SetupConfig, SpaceConfig};
use weakprobe::search::SearchConfig;
use weakprobe::Error;

#[derive(Parser)]
#[command(
    name = "weakprobe",
    version,
    about = "Weak values and entanglement concentration with an entangled probe"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON setup (or search space) file.
    #[arg(long)]
    config: PathBuf,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the weak value of the ancilla selection.
    WeakValue {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Full concentration report: ratios, gain, success probability and verdict.
    Concentrate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// First-order vs exact entropy ratio over log-spaced couplings.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        phi_min: f64,
        #[arg(long)]
        phi_max: f64,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Search ancilla ingredients and print the Pareto front of gain vs success probability.
    Search {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0.01)]
        min_success: f64,
        /// Sweep a Bloch-angle lattice with this many points per angle instead of sampling.
        #[arg(long)]
        grid_resolution: Option<usize>,
    },
}

fn run(command: Command) -> Result<(String, Option<PathBuf>), Error> {
    let eps = cli::eps_overlap_from_env()?;
    let (text, common) = match command {
        Command::WeakValue { common, format } => {
            let config = SetupConfig::load(&common.config)?;
            (cli::cmd_weak_value(&config, eps, format.parse()?)?, common)
        }
        Command::Concentrate { common, format } => {
            let config = SetupConfig::load(&common.config)?;
            (cli::cmd_concentrate(&config, eps, format.parse()?)?, common)
        }
        Command::Sweep {
            common,
            phi_min,
            phi_max,
            points,
            format,
        } => {
            let format: OutputFormat = format.parse()?;
            let config = SetupConfig::load(&common.config)?;
            (
                cli::cmd_sweep(&config, eps, phi_min, phi_max, points, format)?,
                common,
            )
        }
        Command::Search {
            common,
            seed,
            samples,
            min_success,
            grid_resolution,
        } => {
            let space = SpaceConfig::load(&common.config)?;
            let search = match grid_resolution {
                Some(n) => SearchConfig::grid(n, min_success)?,
                None => SearchConfig::random(seed, samples, min_success)?,
            };
            (cli::cmd_search(&space, eps, &search)?, common)
        }
    };
    Ok((text, common.output))
}

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors; 2 is reserved for orthogonal post-selection
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = run(args.command).and_then(|(text, output)| match output {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display()))),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                Err(Error::Io(format!("cannot write output: {e}")))
            }
            _ => Ok(()),
        },
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
