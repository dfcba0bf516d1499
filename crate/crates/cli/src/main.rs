//! `rhqm` — solve delta-potential configurations for complex and
//! quaternionic wave functions, sweep parameters, and verify every closed
//! form against brute-force oracles.
//!
//! Exit codes: 0 success, 1 solver/verification failure, 2 usage or
//! configuration error.

mod config;
mod output;
mod scan;
mod solve;
mod verify_cmd;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::RunConfig;

#[derive(Debug, Parser)]
#[command(name = "rhqm", version, about = "Dirac delta potential in the real Hilbert space: solvers, scans, verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args, Default)]
pub struct CommonArgs {
    /// Wave equation form: complex, left, or right
    #[arg(long)]
    pub form: Option<String>,
    /// Planck constant (default 1)
    #[arg(long, allow_negative_numbers = true)]
    pub hbar: Option<f64>,
    /// Particle mass (default 1)
    #[arg(long, allow_negative_numbers = true)]
    pub mass: Option<f64>,
    /// Real part of the complex delta strength
    #[arg(long, allow_negative_numbers = true)]
    pub q0: Option<f64>,
    /// Imaginary part of the complex delta strength
    #[arg(long, allow_negative_numbers = true)]
    pub q1: Option<f64>,
    /// Quaternionic delta strength as a,b,c,d
    #[arg(long = "Q", value_name = "a,b,c,d", allow_hyphen_values = true)]
    pub big_q: Option<String>,
    /// Complex background potential as v0,v1 (or a single real)
    #[arg(long = "V", value_name = "v0,v1", allow_hyphen_values = true)]
    pub v: Option<String>,
    /// Quaternionic background potential as a,b,c,d
    #[arg(long = "U", value_name = "a,b,c,d", allow_hyphen_values = true)]
    pub u: Option<String>,
    /// Energy parameter as e0,e1
    #[arg(long = "E", value_name = "e0,e1", allow_hyphen_values = true)]
    pub e: Option<String>,
    /// Wave parameter as k0,k1 (scattering input)
    #[arg(long = "K", value_name = "k0,k1", allow_hyphen_values = true)]
    pub k: Option<String>,
    /// Eigenvalue branch: plus or minus
    #[arg(long)]
    pub eig: Option<String>,
    /// Expectation/report window as lo,hi
    #[arg(long, value_name = "lo,hi", allow_hyphen_values = true)]
    pub window: Option<String>,
    /// Evaluation time
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    /// Output file path (stdout when omitted)
    #[arg(long)]
    pub out: Option<String>,
    /// Output format: csv or json
    #[arg(long)]
    pub format: Option<String>,
    /// Seed for randomized verification draws
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of randomized draws per identity
    #[arg(long)]
    pub draws: Option<usize>,
    /// Flat key = value configuration file; flags override its entries
    #[arg(long)]
    pub config: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a single configuration (autonomous, bound/confined, or scattering)
    Solve {
        #[command(flatten)]
        common: CommonArgs,
        /// Solve the normalizable bound (confined) state of the delta well
        #[arg(long)]
        bound: bool,
        /// Solve the scattering configuration for the given K
        #[arg(long)]
        scatter: bool,
    },
    /// Sweep parameters on a Cartesian grid and tabulate dispersion data
    Scan {
        #[command(flatten)]
        common: CommonArgs,
        /// Scan range, repeatable: name=start:stop:count
        /// (names: e0 e1 v0 v1 w0 w1 q0 q1 k1)
        #[arg(long = "scan", value_name = "name=start:stop:count", allow_hyphen_values = true)]
        ranges: Vec<String>,
    },
    /// Run the verification suite: every closed form against its oracle
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Inject a deliberate fault (dispersion, flux, eigen) to prove
        /// the corresponding identity fails; testing aid
        #[arg(long = "inject-fault", value_name = "name")]
        fault: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve {
            common,
            bound,
            scatter,
        } => RunConfig::from_args(&common).and_then(|config| solve::run(&config, bound, scatter)),
        Command::Scan { common, ranges } => {
            RunConfig::from_args(&common).and_then(|config| scan::run(&config, &ranges))
        }
        Command::Verify { common, fault } => {
            RunConfig::from_args(&common).and_then(|config| verify_cmd::run(&config, fault.as_deref()))
        }
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
