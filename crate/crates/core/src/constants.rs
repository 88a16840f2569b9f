//! The series `ξ_r = Σ_{k≥0} r^k/(k+2)` and the constant
//! `κ = ¼ · max_{0<r<1} min{r, 1/(2ξ_r)}`.

use alloc::vec::Vec;

use crate::{Error, Result};

/// `ξ_r` at a radius `0 < r < 1`. Always finite and at least ½.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiValue {
    pub r: f64,
    pub xi: f64,
}

/// Below this radius [`xi_closed`] switches to a truncated series.
pub const SMALL_R: f64 = 1e-4;

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain { name: "r", value: r })
    }
}

/// Sums the defining series until the next term is below `rel_tol` times
/// the running sum.
///
/// This is the reference evaluation; [`xi_closed`] is the production path.
pub fn xi_series(r: f64, rel_tol: f64) -> Result<XiValue> {
    check_radius(r)?;
    if rel_tol.is_nan() || rel_tol <= 0.0 {
        return Err(Error::OutOfDomain {
            name: "rel_tol",
            value: rel_tol,
        });
    }
    let mut sum = 0.5;
    let mut power = 1.0;
    let mut k = 1.0;
    loop {
        power *= r;
        let term = power / (k + 2.0);
        if term < rel_tol * sum {
            break;
        }
        sum += term;
        k += 1.0;
    }
    Ok(XiValue { r, xi: sum })
}

/// `ξ_r = (−ln(1−r) − r)/r²`.
///
/// Both `−ln(1−r)` and `r` are `O(r)` while their difference is `O(r²)`, so
/// for `r <` [`SMALL_R`] the first five series terms are used instead.
pub fn xi_closed(r: f64) -> Result<XiValue> {
    check_radius(r)?;
    let xi = if r < SMALL_R {
        0.5 + r * (1.0 / 3.0 + r * (0.25 + r * (0.2 + r / 6.0)))
    } else {
        (-libm::log1p(-r) - r) / (r * r)
    };
    Ok(XiValue { r, xi })
}

/// Solution of the max–min problem defining `κ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaResult {
    /// Maximizing radius, the root of `2rξ_r = 1`.
    pub r_star: f64,
    /// `r_star / 4`.
    pub kappa: f64,
    /// `2 r_star ξ_{r_star} − 1`.
    pub residual: f64,
}

/// Lower end of the bisection bracket; upper end is `1 − BRACKET_EDGE`.
pub const BRACKET_EDGE: f64 = 1e-6;

/// Tolerance [`solve_kappa`] is run with when callers have no preference.
pub const DEFAULT_KAPPA_TOL: f64 = 1e-12;

fn crossing(r: f64) -> f64 {
    // r is always inside the bracket here
    2.0 * r * xi_closed(r).map(|v| v.xi).unwrap_or(f64::NAN) - 1.0
}

/// Computes `r*` and `κ = r*/4`.
///
/// `r ↦ r` increases and `r ↦ 1/(2ξ_r)` decreases on `(0, 1)`, so
/// `min{r, 1/(2ξ_r)}` peaks where the two meet, i.e. at the unique root of
/// `g(r) = 2rξ_r − 1`. There `min{…} = r*`, hence `κ = r*/4`. The root is
/// found by bisection over `[1e-6, 1 − 1e-6]` (`g < 0` at the left end,
/// `g > 0` at the right) down to bracket width `tol`.
pub fn solve_kappa(tol: f64) -> Result<KappaResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::OutOfDomain {
            name: "tol",
            value: tol,
        });
    }
    let (mut lo, mut hi) = (BRACKET_EDGE, 1.0 - BRACKET_EDGE);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // bracket no longer representable
            break;
        }
        if crossing(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r_star = 0.5 * (lo + hi);
    Ok(KappaResult {
        r_star,
        kappa: r_star / 4.0,
        residual: crossing(r_star),
    })
}

/// `¼ · min{r, 1/(2ξ_r)}`: the admissible constant for a fixed radius.
pub fn kappa_at(r: f64) -> Result<f64> {
    let xi = xi_closed(r)?.xi;
    Ok(0.25 * r.min(1.0 / (2.0 * xi)))
}

/// One sample of the two curves whose pointwise minimum defines `κ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureRow {
    pub r: f64,
    /// `r/4`.
    pub quarter_r: f64,
    /// `1/(8ξ_r)`.
    pub inv_8xi: f64,
    pub min_term: f64,
}

/// Samples both curves at `r = i/(steps+1)` for `i = 1..=steps`.
pub fn figure_grid(steps: usize) -> Result<Vec<FigureRow>> {
    if steps < 2 {
        return Err(Error::OutOfDomain {
            name: "steps",
            value: steps as f64,
        });
    }
    let denom = (steps + 1) as f64;
    (1..=steps)
        .map(|i| {
            let r = i as f64 / denom;
            let xi = xi_closed(r)?.xi;
            let quarter_r = r / 4.0;
            let inv_8xi = 1.0 / (8.0 * xi);
            Ok(FigureRow {
                r,
                quarter_r,
                inv_8xi,
                min_term: quarter_r.min(inv_8xi),
            })
        })
        .collect()
}
