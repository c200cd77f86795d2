//! `mould`: brackets, predicates, dimension tables, ma conversion and identity suites.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "mould", version, about = "Exact mould calculus over finite abelian groups")]
pub struct Cli {
    /// Group shorthand: c<N> or c<N>x<M>x…
    #[arg(long, global = true, default_value = "c1")]
    pub group: String,
    #[arg(long, global = true)]
    pub weight: Option<usize>,
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Space name, or several joined by ',' for an intersection.
    #[arg(long, global = true)]
    pub space: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 25)]
    pub trials: usize,
    /// Depth guard for brackets; input depth for verify.
    #[arg(long, global = true)]
    pub max_depth: Option<usize>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ari(A, B) of two mould files.
    Ari { a: PathBuf, b: PathBuf },
    /// The product A × B.
    Mu { a: PathBuf, b: PathBuf },
    /// swap(M); flips the side tag.
    Swap { m: PathBuf },
    /// push(M) of a u-side mould.
    Push { m: PathBuf },
    /// teru(M) of a u-side mould.
    Teru { m: PathBuf },
    /// Checks a predicate (or every condition of a space) on a mould or dihedral file.
    Check { predicate: String, file: PathBuf },
    /// Dimension of a graded piece.
    Dim,
    /// Basis of a graded piece.
    Basis,
    /// ma of a Lie expression, or with --inverse the Lie preimage of a mould file.
    Ma {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Basis of the dihedral double-shuffle space at (--weight, --depth).
    Dihedral {
        /// Impose the distribution relations instead of the cyclic one.
        #[arg(long)]
        distribution: bool,
    },
    /// Runs a randomized identity suite.
    Verify {
        /// One of: jacobi, prelie, derivation, aritcomp, flexion, closure-al, closure-alal,
        /// closure-push, closure-pusnu, closure-dist, swapari, bialternal-push,
        /// bialternal-pusnu, ma-hom, kv-equiv, dihedral-sym, reform-dihedral, embedding.
        suite: String,
        /// Weight bound for Lie-word, basis and dihedral inputs.
        #[arg(long, default_value_t = 5)]
        max_weight: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
        /// Output depths checked by bracket identities.
        #[arg(long)]
        cap: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(commands::Outcome::Pass) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
