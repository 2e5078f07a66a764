//! Command-line grammar.

use crate::report::Format;
use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "superfock", version, about = "Exact checks for extended super-diffeomorphism algebras")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Trajectory dimension `N,M`.
    #[arg(long, global = true)]
    pub dim: Option<String>,
    /// Inner window `E,D`.
    #[arg(long, global = true)]
    pub window: Option<String>,
    /// Widening `dE,dD`; defaults to the smallest exact margin.
    #[arg(long, global = true)]
    pub margin: Option<String>,
    /// `trivial` or `oscillator:<bosons>[,<fermions>]`.
    #[arg(long, global = true)]
    pub aux: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Graded skewness and super-Jacobi of a mode algebra.
    Jacobi(SpecArgs),
    #[command(subcommand)]
    Modealg(Modealg),
    #[command(subcommand)]
    Fock(Fock),
    #[command(subcommand)]
    Gauge(Gauge),
    #[command(subcommand)]
    Suite(Suite),
}

#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    /// Builtin name or path of a spec file.
    #[arg(long)]
    pub spec: String,
    /// Central charge parameter `c`.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Further parameters as `key=value`.
    #[arg(long = "param")]
    pub params: Vec<String>,
    /// Finite algebra for `km`.
    #[arg(long)]
    pub algebra: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct LevelArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub c: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub k1: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub k2: String,
}

#[derive(Subcommand, Debug)]
pub enum Modealg {
    /// Same checks as `jacobi`, also printing the table size.
    Verify(SpecArgs),
    /// Redefine the extended superconformal algebra and compare it with `scalg`.
    Redefine(LevelArgs),
    /// Parameters of the extended superconformal algebra at given levels.
    Params(LevelArgs),
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub xi: String,
    #[arg(long, allow_hyphen_values = true)]
    pub eta: String,
}

#[derive(Subcommand, Debug)]
pub enum Fock {
    /// Enumerate the window basis.
    Basis,
    /// Matrix of `L_xi` on the window.
    Generator {
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
    },
    /// `[L_xi, L_eta} - L_[xi,eta]` against the extension.
    Ext(PairArgs),
    /// Central charge of the temporal Virasoro family.
    CentralCharge,
    /// Brackets of the Fock-built superconformal family.
    Superconformal {
        #[arg(long, default_value_t = 2)]
        range: i64,
    },
    /// Extension in direct and kernel form.
    Sr(PairArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CurrentArgs {
    /// `u1`, `u1^<r>` (abelian, level realized exactly).
    #[arg(long, default_value = "u1")]
    pub algebra: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub level: String,
}

#[derive(Subcommand, Debug)]
pub enum Gauge {
    /// Structure constants and metric of a finite superalgebra.
    Verify {
        #[arg(long)]
        algebra: String,
    },
    /// `[J_X, J_Y} - J_[X,Y]` against the cocycle. Maps are `;`-separated components.
    Cocycle {
        #[command(flatten)]
        current: CurrentArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// `[L_xi, J_Y}` against `J_{xi Y}`.
    Intertwine {
        #[command(flatten)]
        current: CurrentArgs,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Suite {
    /// Run every job of a TOML suite file.
    Run { file: String },
}
