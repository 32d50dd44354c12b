//! `boundent` — negativity sweeps, threshold searches, and macroscopic
//! PPT certificates for thermal oscillator rings and small XX spin chains,
//! emitted as CSV or JSON-lines tables.

mod commands;
mod table;

use clap::{Parser, Subcommand};

use commands::{
    cmd_logneg, cmd_macro_bound, cmd_phase_diagram, cmd_spin, cmd_threshold, CliError, LognegArgs,
    MacroBoundArgs, PhaseDiagramArgs, SpinArgs, ThresholdArgs,
};

#[derive(Parser, Debug)]
#[command(
    name = "boundent",
    version,
    about = "Entanglement negativity of thermal oscillator rings and XX spin chains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Log-negativity over a grid of sizes, couplings, and temperatures
    Logneg(LognegArgs),
    /// Temperature where a partition's negativity dies, per grid point
    Threshold(ThresholdArgs),
    /// Numeric, certified, and alternating phase boundaries per coupling
    PhaseDiagram(PhaseDiagramArgs),
    /// Certified PPT temperature bound in the macroscopic limit
    MacroBound(MacroBoundArgs),
    /// Thermal XX spin-chain negativities on small chains
    Spin(SpinArgs),
}

fn main() {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Logneg(args) => cmd_logneg(args),
        Command::Threshold(args) => cmd_threshold(args),
        Command::PhaseDiagram(args) => cmd_phase_diagram(args),
        Command::MacroBound(args) => cmd_macro_bound(args),
        Command::Spin(args) => cmd_spin(args),
    };
    match outcome {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}
