//! The `nss` command line: argument parsing, dispatch and JSON reports.

mod commands;
mod report;
mod selftest;

use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use nss_core::algebra::FieldSpec;
use nss_core::sumgraph::DEFAULT_NODE_BUDGET;
use serde::Serialize;

pub use report::{Checked, Failure, Outcome, Report};

#[derive(Parser, Debug, Serialize)]
#[command(name = "nss", version, about = "Exact experiments on nonsingular sums of matrices")]
pub struct Cli {
    /// `Q` or `Fp:<p>`.
    #[arg(long, global = true, default_value = "Q")]
    pub field: FieldSpec,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Read the instance from a JSON file instead of generating it.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VariantArg {
    IdentityOnly,
    Extended,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case", tag = "name")]
pub enum Command {
    /// Expand det(A + B) into minor products and compare with det(A + B).
    Expand {
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Build H = (det(A_i + B_j)) and check rank(H) <= C(2k, k).
    RankBound {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 50)]
        n: usize,
        /// Use the sign-diagonal family for both sides.
        #[arg(long)]
        example1: bool,
        #[arg(long, default_value_t = 1)]
        s: usize,
    },
    /// Count nonsingular sums against the n^2/4^k level.
    #[command(group(ArgGroup::new("family").args(["example1", "example2"])))]
    Theorem {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(long)]
        example1: bool,
        #[arg(long)]
        example2: bool,
        #[arg(long, value_enum, default_value_t = VariantArg::Extended)]
        variant: VariantArg,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 16)]
        n: usize,
    },
    /// Maximum cliques: SL2(F_q) sum graphs, or the auxiliary graph of H.
    #[command(group(ArgGroup::new("graph").args(["sl2", "aux"]).required(true)))]
    Clique {
        #[arg(long)]
        sl2: bool,
        #[arg(long)]
        aux: bool,
        #[arg(long, default_value_t = 3)]
        q: u64,
        #[arg(long)]
        example1: bool,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 12)]
        n: usize,
        /// Search nodes per strategy.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Intersection counts for arrangements of graph-form d-flats.
    #[command(group(ArgGroup::new("check").args(["lemma", "removal", "corollary"]).required(true)))]
    Flats {
        /// Count pairs (F_i, E_j) meeting in a single point.
        #[arg(long)]
        lemma: bool,
        /// Remove a greedy vertex cover of the single-point graph.
        #[arg(long)]
        removal: bool,
        /// Find a hyperplane of R^4 holding most 2-flats.
        #[arg(long)]
        corollary: bool,
        /// Build flats from the embedded-identity families.
        #[arg(long)]
        from_example2: bool,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Generic flats in a random arrangement (default n/5).
        #[arg(long)]
        generic: Option<usize>,
        #[arg(long, default_value_t = 2)]
        outliers: usize,
    },
    /// Run every check at reduced sizes.
    Selftest {
        /// Small sizes, a few seconds (the default).
        #[arg(long, conflicts_with = "full")]
        quick: bool,
        /// Larger sizes, including SL2(F_7).
        #[arg(long)]
        full: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Expand { .. } => "expand",
            Command::RankBound { .. } => "rank-bound",
            Command::Theorem { .. } => "theorem",
            Command::Clique { .. } => "clique",
            Command::Flats { .. } => "flats",
            Command::Selftest { .. } => "selftest",
        }
    }
}

/// Runs one command and wraps its outcome in a report.
pub fn run(cli: &Cli) -> Report {
    let start = std::time::Instant::now();
    let outcome = match &cli.command {
        Command::Selftest { full, .. } => selftest::run(cli.seed, *full),
        other => commands::run(cli, other),
    };
    Report::new(cli, outcome, start.elapsed())
}
