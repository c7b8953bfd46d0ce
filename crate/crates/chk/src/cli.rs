use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::args::{ComplexArg, GridSpec, Interval, NList};
use crate::checks::{Level, Suite};

#[derive(Debug, Parser)]
#[command(name = "chk", version, about = "Confluent hypergeometric kernel toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Kernel,
    Tcal,
    Rho,
    Psi,
    Z,
    /// The circle weight w_s(θ) at θ = x.
    Weight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Bnr,
    KerConv,
    UnitNorm,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quantity and print {"re":…,"im":…}.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        s: ComplexArg,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        /// Second point for the kernel; defaults to x.
        #[arg(long, allow_hyphen_values = true)]
        y: Option<f64>,
        #[arg(long, value_enum)]
        what: Quantity,
    },
    /// Run a verification suite, one "name, value, bound, PASS|FAIL" line per check.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        s: ComplexArg,
        #[arg(long, value_enum, default_value = "fast")]
        level: Level,
    },
    /// Print an "n,error" convergence table.
    Converge {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, allow_hyphen_values = true)]
        s: ComplexArg,
        #[arg(long)]
        n_list: NList,
        /// Exit 1 when the last error is above this; defaults per target.
        #[arg(long)]
        ceiling: Option<f64>,
    },
    /// Write samples of the basis function L_n to CSV.
    Basis {
        #[arg(long, allow_hyphen_values = true)]
        s: ComplexArg,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=8))]
        n: u8,
        /// a:b:count
        #[arg(long, allow_hyphen_values = true)]
        grid: GridSpec,
        #[arg(long)]
        out: PathBuf,
        /// Add the closed-form route and a ratio-deviation footer.
        #[arg(long)]
        check: bool,
    },
    /// Draw configurations of the determinantal process to JSON lines.
    Sample {
        #[arg(long, allow_hyphen_values = true)]
        s: ComplexArg,
        /// a:b
        #[arg(long, allow_hyphen_values = true)]
        interval: Interval,
        #[arg(long, default_value_t = 400, value_parser = clap::value_parser!(u64).range(16..))]
        nodes: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}
