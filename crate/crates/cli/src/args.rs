use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "nlie-envelope", version, about = "Universal associative envelopes of (n+1)-dimensional n-Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structure constants, derived dimension and the Jacobi check.
    AlgebraInfo(AlgebraArgs),
    /// Gröbner basis of the envelope ideal with the envelope checks, or a
    /// capped completion trace.
    EnvelopeBuild {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        caps: CapArgs,
        /// Largest degree for normal-word counts.
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Normal-word counts per degree and the forbidden factors.
    BasisEnumerate {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        degree: usize,
        /// Also list the normal words of each degree.
        #[arg(long)]
        words: bool,
    },
    /// Round-by-round completion of the original generators.
    GroebnerRun {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        caps: CapArgs,
        /// Reduce with randomized rewrite choices from this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Process self-overlaps together with the other compositions.
        #[arg(long)]
        eager_self_overlaps: bool,
        /// Print full basis polynomials rather than leading monomials and sizes.
        #[arg(long)]
        full_basis: bool,
    },
    /// Replays the four-round completion for the 4-dimensional simple 3-Lie
    /// algebra against the embedded reference trace.
    PaperRepro,
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    /// simple, abelian (or 0), 1a, 1b, 2a, 2b, r
    #[arg(long, required_unless_present = "algebra")]
    pub case: Option<String>,
    /// Arity; the algebra has dimension n+1.
    #[arg(long, required_unless_present = "algebra")]
    pub n: Option<usize>,
    /// Parameter of case 2b, as p/q.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Parameter of case r.
    #[arg(long)]
    pub r: Option<usize>,
    /// Read the structure constants from a JSON file instead.
    #[arg(long, conflicts_with_all = ["case", "n", "beta", "r"])]
    pub algebra: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct CapArgs {
    #[arg(long, default_value_t = 8)]
    pub max_degree: usize,
    #[arg(long, default_value_t = 6)]
    pub max_iterations: usize,
}
