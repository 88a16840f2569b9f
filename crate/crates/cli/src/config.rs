use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use hwbound_core::Side;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Subcommand {
    /// Optimal radius r* and the constant kappa = r*/4.
    Kappa,
    /// CSV of r/4, 1/(8 xi_r) and their minimum over a grid in (0,1).
    Figure,
    /// Universal, radius-r and exact Chernoff tail bounds for a matrix.
    Bound,
    /// Bounds plus a seeded Monte Carlo estimate of the true tail.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Upper,
    Lower,
    TwoSided,
}

impl From<SideArg> for Side {
    fn from(side: SideArg) -> Self {
        match side {
            SideArg::Upper => Side::Upper,
            SideArg::Lower => Side::Lower,
            SideArg::TwoSided => Side::TwoSided,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
}

/// Explicit Gaussian Hanson-Wright constant and tail bounds.
#[derive(Debug, Clone, Parser)]
#[command(name = "hwbound", version)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Subcommand,

    /// Matrix file (required for bound and verify).
    #[arg(long = "matrix", value_name = "PATH")]
    pub matrix_path: Option<PathBuf>,

    /// Deviation threshold a > 0 (required for bound and verify).
    #[arg(long = "a", value_name = "REAL", allow_hyphen_values = true)]
    pub a: Option<f64>,

    /// Radius in (0,1) for the parametrized bound [default: r*].
    #[arg(long, value_name = "REAL", allow_hyphen_values = true)]
    pub r: Option<f64>,

    #[arg(long, value_name = "INT", default_value_t = 1_000_000)]
    pub samples: u64,

    #[arg(long, value_name = "UINT64", env = "HWBOUND_SEED", default_value_t = 42)]
    pub seed: u64,

    #[arg(long, value_name = "REAL", default_value_t = 0.99, allow_hyphen_values = true)]
    pub confidence: f64,

    /// Grid points for figure.
    #[arg(long, value_name = "INT", default_value_t = 999)]
    pub steps: usize,

    #[arg(long, value_enum, default_value_t = SideArg::TwoSided)]
    pub side: SideArg,

    /// Replace the matrix by (A + A^T)/2 instead of rejecting asymmetry.
    #[arg(long)]
    pub symmetrize: bool,

    #[arg(long = "output-format", value_enum, default_value_t = OutputFormat::Text)]
    pub output_format: OutputFormat,

    /// Monte Carlo chunks [default: available processors].
    #[arg(long, value_name = "INT")]
    pub chunks: Option<usize>,
}
