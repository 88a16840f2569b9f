//! Explicit constant for the Gaussian Hanson-Wright inequality on real
//! symmetric matrices.
//!
//! For `x ~ N(0, I_n)` and symmetric nonzero `A`,
//!
//! ```text
//! P(|xᵀAx − E xᵀAx| ≥ a) ≤ 2 exp(−κ · min{a²/‖A‖₂², a/‖A‖})
//! ```
//!
//! holds with `κ = ¼ · max_{0<r<1} min{r, 1/(2ξ_r)} ≈ 0.1457`, where
//! `ξ_r = Σ_{k≥0} r^k/(k+2)`.
//!
//! The crate is split along the pieces needed to compute and check that bound:
//!
//! * [`spectral`]: symmetric matrices and their Jacobi eigendecomposition.
//! * [`constants`]: `ξ_r`, the optimal radius `r*` and `κ`, plus the curve data
//!   behind the max–min problem.
//! * [`bounds`]: the universal, radius-parametrized and exact Chernoff tail
//!   bounds for a given spectrum and threshold.
//! * [`montecarlo`]: seeded estimation of the true tail with Wilson intervals.
//!
//! Everything here is `no_std` (with `alloc`). File formats, threading and the
//! command-line interface live in the `hwbound` crate.

#![no_std]

extern crate alloc;

pub mod bounds;
pub mod constants;
mod error;
pub mod montecarlo;
pub mod normal;
pub mod spectral;

pub use bounds::{assemble_report, BoundReport, Side, TailQuery};
pub use constants::{solve_kappa, xi_closed, xi_series, KappaResult, XiValue};
pub use error::Error;
pub use montecarlo::{estimate_tail, verify_bound, TailEstimate, Verdict};
pub use spectral::{decompose, Spectrum, SymmetricMatrix, SymmetryMode};

pub type Result<T, E = Error> = core::result::Result<T, E>;
