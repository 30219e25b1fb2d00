use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lqu::cli::{self, CliError, RandomConfig, SweepConfig};
use lqu::states::{Family, StateSpec};

#[derive(Parser)]
#[command(name = "lqu", version, about = "Local quantum uncertainty of multi-qubit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-bipartition and mean LQU of a density matrix stored as JSON
    Compute {
        /// {"n_qubits": N, "matrix": [[[re, im], ...], ...]}
        input: PathBuf,
    },
    /// Sweep a state family over its parameter and write a CSV table
    Sweep {
        /// ghz3, w3, kay, ghz4, w4, dicke24, singlet4, cluster4, chi4 or random
        #[arg(long, value_parser = cli::parse_family)]
        family: Family,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
        /// Register size for the random family
        #[arg(long, default_value_t = 3)]
        qubits: usize,
        /// Seed for the random family
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Seeded random pure state mixed with white noise
    Random {
        #[arg(long)]
        qubits: usize,
        #[arg(long)]
        seed: u64,
        /// Weight of the pure state; the rest is white noise
        #[arg(long, allow_negative_numbers = true)]
        pure_fraction: f64,
        /// Write the density matrix as JSON
        #[arg(long)]
        dump: Option<PathBuf>,
        /// Print the 3x3 correlation matrices as well
        #[arg(long)]
        matrices: bool,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut stdout = io::stdout().lock();
    match cli.command {
        Command::Compute { input } => {
            cli::cmd_compute(&input, &mut stdout)?;
        }
        Command::Sweep {
            family,
            from,
            to,
            steps,
            out,
            qubits,
            seed,
        } => {
            let spec = StateSpec {
                family,
                param: from,
                n_qubits: qubits,
                seed,
            };
            cli::cmd_sweep(&SweepConfig {
                spec,
                param_from: from,
                param_to: to,
                steps,
                output_path: out,
            })?;
        }
        Command::Random {
            qubits,
            seed,
            pure_fraction,
            dump,
            matrices,
        } => {
            cli::cmd_random(
                &RandomConfig {
                    n_qubits: qubits,
                    seed,
                    pure_fraction,
                    dump,
                    show_matrices: matrices,
                },
                &mut stdout,
            )?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::from(cli::EXIT_OK),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
