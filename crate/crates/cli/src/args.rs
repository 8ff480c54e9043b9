use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "caustics",
    version,
    about = "Exact and numeric checks for caustic rigidity of nearly circular billiards"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    /// Write the result here and a run manifest next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expansion coefficients.
    #[command(subcommand)]
    Coeffs(CoeffsCommand),
    /// Exact combinatorial identities.
    Identities(IdentitiesArgs),
    /// Good primes and smoothness constants.
    #[command(subcommand)]
    Primes(PrimesCommand),
    /// Kernel certificates for the caustic-preservation systems.
    #[command(subcommand)]
    Rigidity(RigidityCommand),
    /// Floating-point elliptic billiard checks.
    #[command(subcommand)]
    Billiard(BilliardCommand),
    /// The worked examples: a nondegenerate 4x4 system and root orbits.
    Examples(ExamplesArgs),
}

#[derive(Debug, Subcommand)]
pub enum CoeffsCommand {
    /// `beta_{j,l}` for `1 <= l <= j <= jmax`.
    Beta {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=16))]
        jmax: u32,
        #[command(flatten)]
        output: Output,
    },
    /// `xi_{j,l}(k)` for `1 <= j <= jmax`, `|l| <= j`, `1 <= k <= kmax`.
    Xi {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=10))]
        jmax: u32,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..=64))]
        kmax: u64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, Args)]
pub struct IdentitiesArgs {
    /// Alternating binomial sum, `j <= jmax`.
    #[arg(long)]
    pub alternating: bool,
    /// Composition sum, `j <= min(jmax, 8)` and `k <= kmax`.
    #[arg(long)]
    pub composition: bool,
    /// Assembled top-coefficient sum, `j <= min(jmax, 6)`.
    #[arg(long)]
    pub assembled: bool,
    /// Chebyshev expansion and shared kernel, odd `k <= kmax`.
    #[arg(long)]
    pub chebyshev: bool,
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u32).range(1..=200))]
    pub jmax: u32,
    #[arg(long)]
    pub kmax: Option<u64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Subcommand)]
pub enum PrimesCommand {
    /// Smoothness constants, one row per `q0`.
    Table {
        /// May be repeated; defaults to 3 5 7 9 11 19 29 49 99 199.
        #[arg(long)]
        q0: Vec<u64>,
        /// Required for `q0 >= 499`.
        #[arg(long)]
        allow_long: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Goodness record of one prime, cross-checked against the sufficient
    /// condition and the order-based closure.
    Check {
        #[arg(long)]
        q0: u64,
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Subcommand)]
pub enum RigidityCommand {
    /// Runs the reduction and prints the certificate.
    Certify {
        #[arg(long)]
        q0: u64,
        #[arg(long, default_value = "odd")]
        mode: String,
        #[arg(long, default_value_t = 2)]
        m: u64,
        #[arg(long)]
        hmax: Option<u64>,
        #[arg(long)]
        allow_long: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Subcommand)]
pub enum BilliardCommand {
    /// Caustic invariance, rigid rotation, rotation-number inversion and
    /// periodic closure.
    Verify {
        #[arg(long, default_value_t = 0.3)]
        e: f64,
        /// Caustic parameter; defaults to half the minor semi-axis.
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ExamplesArgs {
    #[command(flatten)]
    pub output: Output,
}
