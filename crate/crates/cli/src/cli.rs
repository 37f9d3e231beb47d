use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "mstd", version, about = "Sum-dominant sets: search, certificates and prime constructions")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for stochastic commands (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Maximum number of subsets a search may examine.
    #[arg(long, global = true, value_parser = parse_count)]
    pub budget: Option<u64>,

    /// Largest set diameter the dense sumset kernels may allocate for.
    #[arg(long, global = true, value_parser = parse_count)]
    pub diameter_cap: Option<u64>,

    /// Key-value TOML file supplying defaults for the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
}

/// A set given inline, from a file, or from a generator.
#[derive(Debug, Args, Clone)]
pub struct SetInput {
    /// Comma-separated integers, or @path to a file with one per line.
    pub set: Option<String>,

    /// Sequence generator: fibonacci, geometric:C,R,D, recurrence:COEFFS;SEEDS,
    /// explicit:A,B,... or a JSON sequence spec.
    #[arg(long, conflicts_with_all = ["set", "primes_upto"], requires = "terms")]
    pub seq: Option<String>,

    /// Number of sequence terms to take with --seq.
    #[arg(long)]
    pub terms: Option<usize>,

    /// All primes up to this bound.
    #[arg(long, conflicts_with = "set", value_parser = parse_count)]
    pub primes_upto: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sum and difference counts and the MSTD verdict.
    Classify(SetInput),
    /// A + A.
    Sumset(SetInput),
    /// A - A.
    Diffset(SetInput),
    /// Carry-free base expansion: { Σ a_i·m^i : a_i ∈ A }, m = 2·max + 1.
    Expand {
        #[command(flatten)]
        input: SetInput,
        #[arg(long)]
        power: u32,
    },
    /// New sums and differences created by appending one element.
    Append {
        #[command(flatten)]
        input: SetInput,
        #[arg(long)]
        element: u64,
    },
    /// Exhaustive or Monte Carlo search for MSTD subsets of a ground set.
    Search(SearchArgs),
    /// MSTD density of {0..n} by Monte Carlo sampling.
    Density {
        #[arg(long)]
        n: u64,
        #[arg(long, value_parser = parse_count)]
        samples: u64,
    },
    /// Smallest MSTD subset of a ground set.
    Minimal {
        #[command(flatten)]
        input: SetInput,
        #[arg(long, value_enum, default_value_t = MinimalObjective::MaxElement)]
        objective: MinimalObjective,
    },
    /// Certify that a sequence has no MSTD subset.
    Certify {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        upto: usize,
    },
    /// Check the hypotheses for finitely many MSTD subsets of a sequence.
    CertifyFinite {
        #[arg(long)]
        seq: String,
        /// First index of the window-3 growth condition.
        #[arg(long)]
        s: usize,
        #[arg(long)]
        upto: usize,
    },
    /// Count the sums and differences created by appending a large element.
    VerifyBound {
        #[command(flatten)]
        input: SetInput,
        #[arg(long)]
        element: u64,
        #[arg(long, default_value_t = 3)]
        r: usize,
    },
    /// Prime tuples, predictions and prime constructions.
    #[command(subcommand)]
    Primes(PrimesCommand),
    /// Re-run a named claim with its pinned parameters.
    Reproduce {
        /// Claim id; one of the ids listed by --help of this command.
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(mstd_core::reproduce::CLAIM_IDS))]
        id: String,
        /// Sample count override for the density claim.
        #[arg(long, value_parser = parse_count)]
        samples: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MinimalObjective {
    MaxElement,
    Diameter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    FirstHit,
    CountAll,
    MinimizeMaxElement,
    MinimizeDiameter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    Mstd,
    Special,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub input: SetInput,
    #[arg(long)]
    pub min_size: Option<usize>,
    #[arg(long)]
    pub max_size: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    pub mode: ModeArg,
    #[arg(long, value_parser = parse_count)]
    pub samples: Option<u64>,
    #[arg(long, value_enum, default_value_t = ObjectiveArg::CountAll)]
    pub objective: ObjectiveArg,
    #[arg(long, value_enum, default_value_t = FilterArg::Mstd)]
    pub filter: FilterArg,
    /// Skip subsets below the minimal MSTD size and diameter.
    #[arg(long)]
    pub prune: bool,
    /// Maximum number of hits listed.
    #[arg(long)]
    pub hit_cap: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum PrimesCommand {
    /// Admissibility of a tuple of offsets.
    Admissible { offsets: String },
    /// Hardy-Littlewood singular series of a tuple.
    Series {
        offsets: String,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
    /// Shifts n <= x with every n + b_i prime, against the prediction.
    Match {
        offsets: String,
        #[arg(long, value_parser = parse_count)]
        upto: u64,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Prime arithmetic progression with the smallest last term.
    Ap {
        #[arg(long)]
        length: u64,
        /// Largest allowed first term.
        #[arg(long, value_parser = parse_count)]
        bound: u64,
        /// Largest last term searched.
        #[arg(long, value_parser = parse_count)]
        max_last: Option<u64>,
    },
    /// MSTD sets of primes n + 30·{0,2,3,4,7,11,12,14} for matches n <= x.
    Mstd {
        #[arg(long, value_parser = parse_count)]
        upto: u64,
        #[arg(long, default_value_t = 100)]
        cap: usize,
    },
}

/// Accepts plain integers and exact scientific forms like `1e7`.
pub fn parse_count(s: &str) -> Result<u64, String> {
    let s = s.trim().replace('_', "");
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a count"))?;
    if v < 0.0 || v.fract() != 0.0 || v >= 1.8e19 {
        return Err(format!("{s:?} is not a nonnegative integer"));
    }
    Ok(v as u64)
}
