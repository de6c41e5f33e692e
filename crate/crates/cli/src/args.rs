use std::path::PathBuf;

use autexcl_core::algebra::PrimePower;
use autexcl_core::criterion::DEFAULT_N_MAX;
use autexcl_core::zeta::Mode;
use clap::{Args, Parser, Subcommand};

use crate::tables::TableId;

#[derive(Debug, Parser)]
#[command(
    name = "autexcl",
    version,
    about = "Rule out automorphisms of prime-power order from point counts"
)]
pub struct Cli {
    /// Directory holding the Hecke datasets.
    #[arg(long, global = true, env = "AUTEXCL_FIXTURES")]
    pub fixtures: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the criterion on one curve.
    Exclude(ExcludeArgs),
    /// Recompute a published table from the datasets.
    Reproduce(ReproduceArgs),
    /// Brute-force computations on an explicit curve.
    Oracle(OracleArgs),
    /// Assemble a dataset into a `weil` line.
    Ingest(IngestArgs),
    /// Point counts and new-point counts from a Weil polynomial.
    Count(CountArgs),
}

/// A Weil polynomial from a dataset, a weil file, or inline coefficients.
#[derive(Debug, Args)]
pub struct WeilInput {
    /// Dataset or weil file, or the name of a dataset in the fixtures directory.
    #[arg(required_unless_present = "coeffs")]
    pub input: Option<String>,
    /// Ascending coefficients `c0,...,1`.
    #[arg(
        long,
        conflicts_with = "input",
        requires = "q",
        allow_hyphen_values = true
    )]
    pub coeffs: Option<String>,
    #[arg(long)]
    pub q: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ArithMode {
    /// Keep all criterion arithmetic modulo N^m (default).
    #[arg(long, conflicts_with = "exact")]
    pub mod_only: bool,
    /// Use exact integer counts and reduce at the end.
    #[arg(long)]
    pub exact: bool,
}

impl ArithMode {
    pub fn mode(&self) -> Mode {
        if self.exact {
            Mode::Exact
        } else {
            Mode::Modular
        }
    }
}

#[derive(Debug, Args)]
pub struct ExcludeArgs {
    #[command(flatten)]
    pub weil: WeilInput,
    #[arg(long, default_value = "2^1")]
    pub prime_power: PrimePower,
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    pub nmax: usize,
    /// Replace the Riemann–Hurwitz bound by a sharper known one.
    #[arg(long)]
    pub bound_override: Option<u64>,
    #[command(flatten)]
    pub arith: ArithMode,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    pub table: TableId,
    /// Minimum scan depth; rows always scan at least to their published index.
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    pub nmax: usize,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    pub arith: ArithMode,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(subcommand)]
    pub action: OracleAction,
    /// Largest field size the oracle may enumerate.
    #[arg(long, global = true, default_value_t = 1 << 26)]
    pub budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum OracleAction {
    /// Enumerated point counts over F_(q^n).
    Count {
        file: PathBuf,
        /// Largest extension degree; defaults to 2g, capped by the budget.
        #[arg(long)]
        nmax: Option<u32>,
    },
    /// Frobenius polynomial from enumerated counts.
    Zeta { file: PathBuf },
    /// Verify the curve's maps and check the criterion stays inconclusive.
    Soundness {
        file: PathBuf,
        #[arg(long, default_value = "2^1")]
        prime_power: PrimePower,
        #[arg(long, default_value_t = 40)]
        nmax: usize,
    },
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    pub dataset: String,
    /// Output file; stdout if absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub weil: WeilInput,
    #[arg(long, default_value_t = 10)]
    pub nmax: usize,
}
