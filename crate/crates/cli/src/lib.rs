//! Command-line front end: reproducible CSV/JSON tables of term counts,
//! single coefficients, transition matrices and verification reports.

pub mod commands;
pub mod known;
pub mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::{CoeffMethod, Outcome};
use output::Format;

#[derive(Debug, Parser)]
#[command(name = "circterms", version, about = "Term counts of the generic circulant determinant and permanent")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Worker threads for the parallel sweeps (results do not depend on it).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Write data to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// d(n), p(n) and whether they agree, for n = 1..=max-n.
    Table {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        /// Cross-check against the permutation sweep up to this n.
        #[arg(long, default_value_t = 8)]
        oracle_max: usize,
    },
    /// Coefficient of x^b in the determinant.
    Coeff {
        n: usize,
        /// Exponents b_1,...,b_n.
        b: String,
        #[arg(long, value_enum, default_value_t = CoeffMethod::Er)]
        method: CoeffMethod,
    },
    /// Dominance check (prime-power n) or cancellation report (other n).
    Verify { n: usize },
    /// Monomial to power-sum transition matrix in degree q.
    M2p { q: u32 },
}

/// Runs the parsed command on a thread pool of the requested size.
pub fn run(cli: &Cli) -> Outcome {
    let go = || match &cli.command {
        Command::Table { max_n, oracle_max } => commands::cmd_table(*max_n, *oracle_max),
        Command::Coeff { n, b, method } => commands::cmd_coeff(*n, b, *method),
        Command::Verify { n } => commands::cmd_verify(*n),
        Command::M2p { q } => commands::cmd_m2p(*q),
    };
    match cli.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .expect("thread pool")
            .install(go),
        None => go(),
    }
}
