use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Valuation-based verification of binomial coefficient divisibility.
#[derive(Parser, Debug)]
#[command(name = "binomdiv", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify one (a, b, n) instance and print its certificate
    Verify(VerifyArgs),
    /// Verify every triple in a box, in parallel
    Sweep(SweepArgs),
    /// Replay the per-prime argument for one modulus
    Trace(TraceArgs),
    /// Check the floor inequality on seeded random exact rationals
    LemmaFuzz(LemmaFuzzArgs),
    /// Check integrality of a factorial ratio for n = 1..n_max
    Integrality(IntegralityArgs),
    /// Run the cross-validation suites against the big-integer oracle
    OracleCheck(OracleCheckArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write the report here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,

    /// Report every wall-clock time as zero, for byte-identical reruns
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub a: u64,
    #[arg(long)]
    pub b: u64,
    #[arg(long)]
    pub n: u64,

    /// Claim family to verify
    #[arg(long, default_value = "amdeberhan-moll")]
    pub family: String,

    /// Certificate rows shown in human output
    #[arg(long, default_value_t = 40)]
    pub max_rows: usize,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CertificateDetail {
    /// Embed every certificate entry of every triple
    All,
    /// Embed entries only for failing triples
    Violations,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub a_max: u64,
    #[arg(long)]
    pub b_max: u64,
    #[arg(long)]
    pub n_max: u64,

    #[arg(long, default_value_t = 1)]
    pub jobs: usize,

    /// Check this many seeded random triples from the box instead of all of them
    #[arg(long)]
    pub sample: Option<usize>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, default_value = "amdeberhan-moll")]
    pub family: String,

    #[arg(long, value_enum, default_value_t = CertificateDetail::All)]
    pub certificates: CertificateDetail,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModulusSelector {
    #[value(name = "2bn+1")]
    TwoBnPlus1,
    #[value(name = "2bn+3")]
    TwoBnPlus3,
}

#[derive(Args, Debug)]
pub struct TraceArgs {
    #[arg(long)]
    pub a: u64,
    #[arg(long)]
    pub b: u64,
    #[arg(long)]
    pub n: u64,

    #[arg(long, value_enum)]
    pub modulus: ModulusSelector,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct LemmaFuzzArgs {
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,

    /// Largest denominator drawn
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(i64).range(1..))]
    pub max_den: i64,

    /// Largest absolute numerator drawn
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(i64).range(0..))]
    pub max_num: i64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct IntegralityArgs {
    /// Numerator coefficients: (c₁n)!(c₂n)!…
    #[arg(long, value_delimiter = ',', required_unless_present = "ratio")]
    pub num: Vec<u64>,

    /// Denominator coefficients
    #[arg(long, value_delimiter = ',', required_unless_present = "ratio")]
    pub den: Vec<u64>,

    /// A ratio in canonical text form, e.g. "(2n)!^1 (n)!^-2"
    #[arg(long, conflicts_with_all = ["num", "den"])]
    pub ratio: Option<String>,

    #[arg(long)]
    pub n_max: u64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct OracleCheckArgs {
    /// Suites to run; all registered suites when omitted
    #[arg(long = "suite")]
    pub suites: Vec<String>,

    /// List the registered suites and exit
    #[arg(long)]
    pub list: bool,

    #[command(flatten)]
    pub output: OutputArgs,
}
