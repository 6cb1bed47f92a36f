use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "hyperred", version, about = "Potential good reduction, S-unit enumeration and c_K(g) bounds")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Defaults file of `key = value` lines; flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Report wall-clock time (outside the payload).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cluster pictures, bad odd primes and discriminant of a curve.
    Reduce(ReduceArgs),
    /// Solve x + y = 1 in S-units.
    Sunit(SunitArgs),
    /// Classes of curves with good reduction outside S.
    Enumerate(EnumerateArgs),
    /// Lower and upper bounds for c_K(g).
    Bounds(BoundsArgs),
    /// Search prime constellations and build the matching curves.
    #[command(subcommand)]
    Forge(ForgeCommand),
    /// Primes p admitting an S-unit triple with p-adically close entries.
    Exceptional(ExceptionalArgs),
    /// Prime ideals of odd norm up to x.
    PiOdd(PiOddArgs),
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    /// Comma-separated distinct rationals, e.g. 0,1,3/2,2,3.
    #[arg(long, allow_hyphen_values = true)]
    pub roots: String,
    /// Leading coefficient.
    #[arg(long, allow_hyphen_values = true)]
    pub twist: Option<String>,
    /// Examine every odd prime dividing a root difference (the default).
    #[arg(long, conflicts_with = "primes")]
    pub auto: bool,
    /// Comma-separated primes to examine.
    #[arg(long)]
    pub primes: Option<String>,
}

#[derive(Args, Debug)]
pub struct SunitArgs {
    /// Comma-separated primes.
    #[arg(long)]
    pub s: Option<String>,
    /// Largest absolute exponent.
    #[arg(long)]
    pub bound: Option<u32>,
    /// Also split the x-values into orbits under x -> 1 - x, x -> 1/x.
    #[arg(long)]
    pub orbits: bool,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub s: Option<String>,
    #[arg(long)]
    pub bound: Option<u32>,
    #[arg(long)]
    pub genus: Option<usize>,
    /// Stop after this many visited subsets.
    #[arg(long)]
    pub cap: Option<u64>,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    /// q, quad:d, abp:n:f or pna:n.
    #[arg(long, allow_hyphen_values = true)]
    pub field: Option<String>,
    #[arg(long)]
    pub genus: Option<u64>,
}

#[derive(Args, Debug)]
pub struct PiOddArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub field: Option<String>,
    #[arg(long)]
    pub x: u64,
}

#[derive(Args, Debug)]
pub struct ExceptionalArgs {
    #[arg(long)]
    pub s: Option<String>,
    #[arg(long)]
    pub bound: Option<u32>,
    /// Smallest prime tried.
    #[arg(long, default_value_t = 3)]
    pub from: u64,
    /// Largest prime tried.
    #[arg(long, default_value_t = 50)]
    pub to: u64,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub genus: Option<usize>,
    /// Largest candidate scanned.
    #[arg(long)]
    pub limit: Option<u64>,
    /// Write progress to FILE, starting from scratch.
    #[arg(long, value_name = "FILE", conflicts_with = "resume")]
    pub checkpoint: Option<PathBuf>,
    /// Continue from FILE if it exists, and keep it updated.
    #[arg(long, value_name = "FILE")]
    pub resume: Option<PathBuf>,
    #[arg(long, hide = true)]
    pub checkpoint_interval: Option<u64>,
    /// Stop after this many segments, as if killed.
    #[arg(long, hide = true)]
    pub interrupt_after: Option<u64>,
}

#[derive(Args, Debug)]
pub struct OmegaArgs {
    #[arg(long)]
    pub genus: Option<usize>,
    #[arg(long)]
    pub limit: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum ForgeCommand {
    /// Curves from p + i (2g)! all prime.
    Tuple {
        #[command(flatten)]
        search: SearchArgs,
        /// corrected or paper-exact.
        #[arg(long)]
        mode: Option<String>,
    },
    /// Curves from cyclotomic values at multiples of (2g)!.
    Cyclotomic {
        #[command(flatten)]
        search: SearchArgs,
    },
    /// The genus-5 family at m = 5040 k.
    Genus5 {
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Tuple parameters with the fewest prime factors, no primality needed.
    Omega(OmegaArgs),
}
