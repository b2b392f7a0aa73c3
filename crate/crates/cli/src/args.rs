use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "unipos",
    version,
    about = "Positional, unary, unary-positional and spike-train number encodings"
)]
pub struct Cli {
    /// Output format; each command picks a sensible default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Seed for randomized commands. Required whenever sampling is involved.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Worker threads for sweeps (0 = one per core). Never changes results.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Fixed,
    Order,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encode a value under one scheme.
    Encode(EncodeArgs),
    /// Decode an artifact back to its value.
    Decode(DecodeArgs),
    /// Rewrite a value in another base or as a unary-positional word.
    Convert(ConvertArgs),
    /// Apply one error event to an encoded artifact and report its impact.
    Inject(InjectArgs),
    /// Run a single-fault sweep and emit its report.
    Sweep(SweepArgs),
    /// Compactness, latency and utilization reports.
    #[command(subcommand)]
    Bench(BenchCommand),
    /// Order two encoded values.
    Compare(CompareArgs),
}

/// Scheme parameters shared by most commands.
#[derive(Debug, Clone, Args)]
pub struct SchemeArgs {
    /// positional, unary, unary-positional, rate-unary, temporal or temporal-rate
    #[arg(long)]
    pub scheme: String,

    /// Base for positional and temporal schemes.
    #[arg(long)]
    pub base: Option<u32>,

    /// Stream length / base for unary-positional and temporal-rate (a power of two).
    #[arg(long)]
    pub n: Option<usize>,

    /// Digits, streams or neurons; defaults to the fewest that fit.
    #[arg(long)]
    pub k: Option<usize>,

    /// Timeline length for rate-unary; defaults to the value.
    #[arg(long)]
    pub slot_cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,

    /// Decimal, or `<digits>_<base>`.
    #[arg(long)]
    pub value: String,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,

    /// Artifact file; stdin when absent or `-`.
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// Temporal weight assignment.
    #[arg(long, value_enum, default_value_t = Mode::Fixed)]
    pub mode: Mode,

    /// Clamp temporal-rate counts of n or more instead of rejecting them.
    #[arg(long)]
    pub lenient: bool,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Decimal, `<digits>_<base>`, or a `..._u<n>` word.
    #[arg(long)]
    pub value: String,

    /// Target base.
    #[arg(long, conflicts_with = "to_n")]
    pub to_base: Option<u32>,

    /// Target unary-positional stream length.
    #[arg(long)]
    pub to_n: Option<usize>,

    /// Stream count for `--to-n`.
    #[arg(long, requires = "to_n")]
    pub k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct InjectArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,

    /// Encode this value first.
    #[arg(long, conflicts_with = "input")]
    pub value: Option<String>,

    /// Read the artifact from a file (`-` for stdin).
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// flip:S:B, insert:N:T, delete:N:T or shift:N:T:D
    #[arg(long)]
    pub event: String,

    #[arg(long, value_enum, default_value_t = Mode::Fixed)]
    pub mode: Mode,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,

    /// exhaustive, sample:<count>, or a comma-separated list
    #[arg(long, default_value = "exhaustive")]
    pub values: String,

    /// digit-flip, spike-insert, spike-delete, spike-insert-delete or spike-shift
    #[arg(long)]
    pub errors: String,

    /// exhaustive (every valid event per value) or sampled (one per value)
    #[arg(long, default_value = "exhaustive")]
    pub events: String,

    #[arg(long, value_enum, default_value_t = Mode::Fixed)]
    pub mode: Mode,
}

#[derive(Debug, Subcommand)]
pub enum BenchCommand {
    /// Unary length base^digits for each base and digit count.
    Table1 {
        /// Comma-separated bases.
        #[arg(long, default_value = "2,10")]
        bases: String,
        /// Inclusive range `a..b`, or a single count.
        #[arg(long, default_value = "1..4")]
        digits: String,
    },
    /// The two worked rows, 1101_2 and 9876_10.
    Examples,
    /// Metrics for one value under one scheme.
    Measure {
        #[arg(long)]
        value: String,
        /// e.g. rate-unary, temporal-2:9, temporal-rate-8
        #[arg(long)]
        scheme: String,
    },
    /// Side-by-side comparison over a value set.
    Tradeoff {
        /// Comma-separated values.
        #[arg(long)]
        values: String,
        /// Comma-separated schemes, e.g. rate-unary,temporal-2,temporal-rate-8
        #[arg(long)]
        schemes: String,
    },
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// temporal or temporal-rate
    #[arg(long)]
    pub scheme: String,

    /// Base (temporal) or n (temporal-rate).
    #[arg(long, default_value_t = 2)]
    pub base: u32,

    /// Neuron count when encoding from `--values`; defaults to fit both.
    #[arg(long)]
    pub k: Option<usize>,

    /// Two values to encode and compare, `a,b`.
    #[arg(long, conflicts_with_all = ["a", "b"])]
    pub values: Option<String>,

    /// First raster file.
    #[arg(long, requires = "b")]
    pub a: Option<PathBuf>,

    /// Second raster file.
    #[arg(long, requires = "a")]
    pub b: Option<PathBuf>,
}
