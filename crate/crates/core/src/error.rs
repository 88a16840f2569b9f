use core::fmt;

/// Everything that can go wrong in the core library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// `entries.len()` does not equal `n * n`, or `n == 0`.
    DimensionMismatch { n: usize, len: usize },
    /// Strict construction saw `|A_ij − A_ji|` above tolerance.
    Asymmetric { row: usize, col: usize, diff: f64 },
    ZeroMatrix,
    NonFinite,
    /// Jacobi sweeps exhausted before the off-diagonal mass vanished.
    NoConvergence { sweeps: usize, off_diagonal: f64 },
    /// A scalar argument fell outside its admissible domain.
    OutOfDomain { name: &'static str, value: f64 },
    /// The Chernoff bracket kept decreasing through every doubling.
    BracketExpansion { doublings: usize },
    TooFewSamples { samples: u64, floor: u64 },
    /// Estimate and bound report describe different queries.
    QueryMismatch,
    /// A computed report broke the exponent ordering the proof guarantees.
    NestingViolated { detail: &'static str, slack: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { n, len } => {
                write!(f, "expected {n}x{n} = {} entries, got {len}", n * n)
            }
            Error::Asymmetric { row, col, diff } => write!(
                f,
                "matrix is not symmetric: |A[{row}][{col}] - A[{col}][{row}]| = {diff:e}"
            ),
            Error::ZeroMatrix => f.write_str("matrix must be nonzero"),
            Error::NonFinite => f.write_str("matrix contains non-finite entries"),
            Error::NoConvergence {
                sweeps,
                off_diagonal,
            } => write!(
                f,
                "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal mass {off_diagonal:e})"
            ),
            Error::OutOfDomain { name, value } => write!(f, "{name} = {value} is out of range"),
            Error::BracketExpansion { doublings } => write!(
                f,
                "could not bracket the Chernoff minimizer after {doublings} doublings"
            ),
            Error::TooFewSamples { samples, floor } => {
                write!(f, "{samples} samples requested, at least {floor} required")
            }
            Error::QueryMismatch => f.write_str("estimate and report were computed for different queries"),
            Error::NestingViolated { detail, slack } => {
                write!(f, "exponent nesting violated ({detail}), slack {slack:e}")
            }
        }
    }
}

impl core::error::Error for Error {}
