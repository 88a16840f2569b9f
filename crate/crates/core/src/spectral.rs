//! Real symmetric matrices and their eigendecomposition by cyclic Jacobi
//! rotations.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// How [`SymmetricMatrix::new`] treats input that is not exactly symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SymmetryMode {
    /// Reject entries whose mirror differs by more than [`SymmetricMatrix::SYMMETRY_TOL`].
    #[default]
    Strict,
    /// Replace `A` by `(A + Aᵀ)/2`. The quadratic form `xᵀAx` is unchanged.
    Symmetrize,
}

/// A nonzero real `n × n` symmetric matrix stored row-major.
///
/// The stored entries are exactly symmetric: strict construction averages the
/// (tolerance-equal) mirrored pairs as well.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    /// Relative symmetry tolerance, scaled by `max(1, max |A_ij|)`.
    pub const SYMMETRY_TOL: f64 = 1e-12;

    pub fn new(n: usize, entries: Vec<f64>, mode: SymmetryMode) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                n,
                len: entries.len(),
            });
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let max_abs = entries.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        if max_abs == 0.0 {
            return Err(Error::ZeroMatrix);
        }

        let mut entries = entries;
        let tol = Self::SYMMETRY_TOL * max_abs.max(1.0);
        for i in 0..n {
            for j in (i + 1)..n {
                let (upper, lower) = (entries[i * n + j], entries[j * n + i]);
                let diff = (upper - lower).abs();
                if mode == SymmetryMode::Strict && diff > tol {
                    return Err(Error::Asymmetric {
                        row: i,
                        col: j,
                        diff,
                    });
                }
                let mean = 0.5 * (upper + lower);
                entries[i * n + j] = mean;
                entries[j * n + i] = mean;
            }
        }
        Ok(Self { n, entries })
    }

    pub fn from_diagonal(diagonal: &[f64]) -> Result<Self> {
        let n = diagonal.len();
        let mut entries = vec![0.0; n * n];
        for (i, &d) in diagonal.iter().enumerate() {
            entries[i * n + i] = d;
        }
        Self::new(n, entries, SymmetryMode::Strict)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_diagonal(&vec![1.0; n])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.n + col]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// `c · A`. Fails only for `c == 0` or non-finite results.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(
            self.n,
            self.entries.iter().map(|x| c * x).collect(),
            SymmetryMode::Strict,
        )
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Squared Hilbert–Schmidt (Frobenius) norm `Σ_ij A_ij²`.
    pub fn hs_norm_sq(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum()
    }

    /// `xᵀAx`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.n, "vector length must match matrix dimension");
        self.entries
            .chunks_exact(self.n)
            .zip(x)
            .map(|(row, xi)| xi * row.iter().zip(x).map(|(a, xj)| a * xj).sum::<f64>())
            .sum()
    }
}

/// Eigenvalues of a symmetric matrix with the norms the tail bounds need.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    hs_norm_sq: f64,
    op_norm: f64,
    trace: f64,
    eigenvectors: Option<Vec<f64>>,
}

impl Spectrum {
    /// Builds a spectrum directly from eigenvalues, e.g. for a diagonal `Λ`.
    ///
    /// The values are sorted descending. At least one must be nonzero.
    pub fn from_eigenvalues(eigenvalues: &[f64]) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::DimensionMismatch { n: 0, len: 0 });
        }
        if eigenvalues.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut sorted = eigenvalues.to_vec();
        sort_descending(&mut sorted);
        let hs_norm_sq = sorted.iter().map(|x| x * x).sum();
        let trace = sorted.iter().sum();
        Self::assemble(sorted, hs_norm_sq, trace, None)
    }

    fn assemble(
        eigenvalues: Vec<f64>,
        hs_norm_sq: f64,
        trace: f64,
        eigenvectors: Option<Vec<f64>>,
    ) -> Result<Self> {
        let op_norm = eigenvalues.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        if op_norm == 0.0 {
            return Err(Error::ZeroMatrix);
        }
        Ok(Self {
            eigenvalues,
            hs_norm_sq,
            op_norm,
            trace,
            eigenvectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `λ_1 ≥ … ≥ λ_n`.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `‖A‖₂²`.
    pub fn hs_norm_sq(&self) -> f64 {
        self.hs_norm_sq
    }

    /// `‖A‖ = max |λ_i|`.
    pub fn op_norm(&self) -> f64 {
        self.op_norm
    }

    /// `tr A = E[xᵀAx]`.
    pub fn trace(&self) -> f64 {
        self.trace
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// The orthogonal `U` with `A = UᵀΛU`, row-major. Row `i` is the unit
    /// eigenvector for `eigenvalues()[i]`.
    pub fn eigenvectors(&self) -> Option<&[f64]> {
        self.eigenvectors.as_deref()
    }

    /// Spectrum of `−A`.
    pub fn negated(&self) -> Self {
        let mut eigenvalues: Vec<f64> = self.eigenvalues.iter().rev().map(|x| -x).collect();
        sort_descending(&mut eigenvalues);
        Self {
            eigenvalues,
            hs_norm_sq: self.hs_norm_sq,
            op_norm: self.op_norm,
            trace: -self.trace,
            eigenvectors: None,
        }
    }
}

/// Full sweeps allowed before [`decompose`] gives up.
pub const MAX_SWEEPS: usize = 30;

/// Converged once the squared off-diagonal mass drops below this fraction of `‖A‖₂²`.
pub const OFF_DIAGONAL_TOL: f64 = 1e-24;

/// Eigendecomposition by cyclic Jacobi rotations.
///
/// Each rotation annihilates one off-diagonal pair; a sweep visits every pair
/// `(p, q)`, `p < q`, once in row order. Iteration stops when the sum of
/// squared off-diagonal entries is at most [`OFF_DIAGONAL_TOL`]` · ‖A‖₂²`, and
/// fails with [`Error::NoConvergence`] after [`MAX_SWEEPS`] sweeps.
pub fn decompose(matrix: &SymmetricMatrix, want_vectors: bool) -> Result<Spectrum> {
    let n = matrix.dim();
    let mut a = matrix.entries().to_vec();
    let mut v = want_vectors.then(|| {
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        id
    });

    let hs_norm_sq = matrix.hs_norm_sq();
    let threshold = OFF_DIAGONAL_TOL * hs_norm_sq;

    let mut sweep = 0;
    loop {
        let off = off_diagonal_sq(&a, n);
        if off <= threshold {
            break;
        }
        if sweep == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps: sweep,
                off_diagonal: off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, v.as_deref_mut(), n, p, q);
            }
        }
        sweep += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep the diagonal order Jacobi left them in
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();

    let eigenvectors = v.map(|v| {
        let mut u = vec![0.0; n * n];
        for (row, &col) in order.iter().enumerate() {
            for k in 0..n {
                u[row * n + k] = v[k * n + col];
            }
        }
        u
    });

    Spectrum::assemble(eigenvalues, hs_norm_sq, matrix.trace(), eigenvectors)
}

fn off_diagonal_sq(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            sum += a[p * n + q] * a[p * n + q];
        }
    }
    2.0 * sum
}

/// Applies `A ← JᵀAJ` (and `V ← VJ`) for the plane rotation zeroing `A[p][q]`.
fn rotate(a: &mut [f64], v: Option<&mut [f64]>, n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];

    // smaller root of t² + 2θt − 1 = 0 keeps the rotation angle ≤ π/4
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + libm::hypot(1.0, theta));
    let c = 1.0 / libm::sqrt(1.0 + t * t);
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let new_p = c * akp - s * akq;
        let new_q = s * akp + c * akq;
        a[k * n + p] = new_p;
        a[p * n + k] = new_p;
        a[k * n + q] = new_q;
        a[q * n + k] = new_q;
    }
    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[k * n + p];
            let vkq = v[k * n + q];
            v[k * n + p] = c * vkp - s * vkq;
            v[k * n + q] = s * vkp + c * vkq;
        }
    }
}

fn sort_descending(values: &mut [f64]) {
    values.sort_by(|x, y| y.total_cmp(x));
}
