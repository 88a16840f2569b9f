//! Tail bounds for `Z = xᵀAx − tr A`, `x ~ N(0, I_n)`, computed from the
//! spectrum of `A`.
//!
//! Three tiers, each at least as tight as the next:
//!
//! 1. the exact Chernoff bound `inf_t e^{−ta} E[e^{tZ}]`, minimized numerically;
//! 2. the radius-`r` bound `exp(−min{a²/(8ξ_r‖A‖₂²), ra/(4‖A‖)})`, which
//!    replaces the log-MGF by the quadratic `2t²ξ_r Σλ_i²` for `2t|λ_i| ≤ r`;
//! 3. the universal bound `exp(−κ min{a²/‖A‖₂², a/‖A‖})`.
//!
//! Two-sided probabilities carry the union-bound factor 2; the lower tail is
//! the upper tail of `−A`.

use crate::constants::{kappa_at, xi_closed};
use crate::spectral::Spectrum;
use crate::{Error, Result};

/// Which deviation event is bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Side {
    /// `Z ≥ a`.
    Upper,
    /// `Z ≤ −a`.
    Lower,
    /// `|Z| ≥ a`.
    #[default]
    TwoSided,
}

impl Side {
    /// Union-bound multiplier applied to `exp(−exponent)`.
    pub fn factor(self) -> f64 {
        match self {
            Side::TwoSided => 2.0,
            Side::Upper | Side::Lower => 1.0,
        }
    }
}

/// A deviation threshold `a > 0` and the tail it applies to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailQuery {
    a: f64,
    side: Side,
}

impl TailQuery {
    pub fn new(a: f64, side: Side) -> Result<Self> {
        if a > 0.0 && a.is_finite() {
            Ok(Self { a, side })
        } else {
            Err(Error::OutOfDomain { name: "a", value: a })
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn side(&self) -> Side {
        self.side
    }
}

/// An exponent together with its clamped probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TierBound {
    pub exponent: f64,
    pub probability: f64,
}

impl TierBound {
    fn new(exponent: f64, side: Side) -> Self {
        Self {
            exponent,
            probability: clamp_probability(side.factor() * libm::exp(-exponent)),
        }
    }
}

fn clamp_probability(p: f64) -> f64 {
    p.min(1.0)
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain { name: "r", value: r })
    }
}

/// `min{a²/‖A‖₂², a/‖A‖}`, the shape shared by every tier.
pub fn deviation_scale(spec: &Spectrum, a: f64) -> f64 {
    (a * a / spec.hs_norm_sq()).min(a / spec.op_norm())
}

/// `exp(−κ · min{a²/‖A‖₂², a/‖A‖})`, times 2 for two-sided queries.
pub fn universal_bound(spec: &Spectrum, query: &TailQuery, kappa: f64) -> Result<TierBound> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::OutOfDomain {
            name: "kappa",
            value: kappa,
        });
    }
    let exponent = kappa * deviation_scale(spec, query.a());
    Ok(TierBound::new(exponent, query.side()))
}

/// `exp(−min{a²/(8ξ_r‖A‖₂²), ra/(4‖A‖)})`, times 2 for two-sided queries.
pub fn parametrized_bound(spec: &Spectrum, query: &TailQuery, r: f64) -> Result<TierBound> {
    check_radius(r)?;
    let xi = xi_closed(r)?.xi;
    let a = query.a();
    let exponent = (a * a / (8.0 * xi * spec.hs_norm_sq())).min(r * a / (4.0 * spec.op_norm()));
    Ok(TierBound::new(exponent, query.side()))
}

/// The quadratic Chernoff exponent at its constrained optimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Intermediate {
    /// `min{a/(4ξ_r‖A‖₂²), r/(2‖A‖)}`.
    pub t: f64,
    /// `ta − 2t²ξ_r‖A‖₂²`.
    pub exponent: f64,
    /// Whether the constraint `t ≤ r/(2‖A‖)` is active.
    pub boundary: bool,
}

/// Maximizes `ta − 2t²ξ_r‖A‖₂²` over `0 < t ≤ r/(2‖A‖)`.
///
/// In the interior case the value is `a²/(8ξ_r‖A‖₂²)`; on the boundary it is
/// at least `ra/(4‖A‖)`.
pub fn intermediate_exponent(spec: &Spectrum, a: f64, r: f64) -> Result<Intermediate> {
    TailQuery::new(a, Side::Upper)?;
    check_radius(r)?;
    let xi = xi_closed(r)?.xi;
    let hs = spec.hs_norm_sq();
    let interior = a / (4.0 * xi * hs);
    let edge = r / (2.0 * spec.op_norm());
    let boundary = edge <= interior;
    let t = if boundary { edge } else { interior };
    Ok(Intermediate {
        t,
        exponent: t * a - 2.0 * t * t * xi * hs,
        boundary,
    })
}

/// `−u − ½ ln(1 − 2u)`, the log-MGF of `u(y² − 1)` for `y ~ N(0,1)`.
///
/// Returns `+∞` for `u ≥ ½`. Near zero the function is `O(u²)` while both
/// terms are `O(u)`, so small arguments go through
/// `2u² Σ_{j≥0} (2u)^j/(j+2)` instead.
pub fn centered_log_mgf(u: f64) -> f64 {
    if u >= 0.5 {
        return f64::INFINITY;
    }
    let x = 2.0 * u;
    if x.abs() < 1e-2 {
        let mut sum = 0.0;
        let mut power = 1.0;
        for j in 0..12 {
            sum += power / (j as f64 + 2.0);
            power *= x;
        }
        0.5 * x * x * sum
    } else {
        -u - 0.5 * libm::log1p(-x)
    }
}

/// `E(t) = −ta + Σ_i [−tλ_i − ½ ln(1 − 2tλ_i)]`, the log of the upper-tail
/// Chernoff bound at `t`.
pub fn chernoff_log_bound(eigenvalues: &[f64], a: f64, t: f64) -> f64 {
    -t * a + eigenvalues.iter().map(|&l| centered_log_mgf(t * l)).sum::<f64>()
}

/// Cap on bracket doublings when `E(t)` is defined on all of `t ≥ 0`.
pub const MAX_DOUBLINGS: usize = 200;

/// Fraction of `1/(2λ_max)` the search may reach.
pub const DOMAIN_GUARD: f64 = 1.0 - 1e-9;

/// Optimum of one tail's Chernoff bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideOptimum {
    /// Minimizer of `E`; `+∞` when the event is impossible.
    pub t_star: f64,
    /// `−min E`; `+∞` when the event is impossible.
    pub exponent: f64,
}

/// Exact Chernoff bound for a query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernoffBound {
    /// For two-sided queries the smaller one-sided exponent.
    pub exponent: f64,
    /// Minimizer belonging to `exponent`.
    pub t_star: f64,
    /// Clamped; for two-sided queries `min(1, p_upper + p_lower)`.
    pub probability: f64,
    pub upper: Option<SideOptimum>,
    pub lower: Option<SideOptimum>,
}

/// Minimizes `E(t)` for the upper tail of the given eigenvalues.
///
/// `E` is convex with `E(0) = 0` and `E'(0) = −a`. With a positive eigenvalue
/// the domain ends at `1/(2λ_max)`, where `E → ∞`; otherwise the right end is
/// found by doubling until `E` increases. When every `λ_i ≤ 0` and
/// `a ≥ Σ|λ_i|` the event `Z ≥ a` is impossible (`Z ≤ Σ|λ_i|` surely) and `E`
/// decreases without bound, reported as an infinite exponent.
pub fn upper_tail_optimum(eigenvalues: &[f64], a: f64) -> Result<SideOptimum> {
    let lambda_max = eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let op_norm = eigenvalues.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let energy = |t: f64| chernoff_log_bound(eigenvalues, a, t);

    let hi = if lambda_max > 0.0 {
        DOMAIN_GUARD / (2.0 * lambda_max)
    } else {
        let reach: f64 = eigenvalues.iter().map(|l| l.abs()).sum();
        if a >= reach {
            return Ok(SideOptimum {
                t_star: f64::INFINITY,
                exponent: f64::INFINITY,
            });
        }
        let mut h = 1.0 / op_norm;
        let mut doublings = 0;
        while energy(2.0 * h) <= energy(h) {
            h *= 2.0;
            doublings += 1;
            if doublings > MAX_DOUBLINGS || !h.is_finite() {
                return Err(Error::BracketExpansion { doublings });
            }
        }
        2.0 * h
    };

    let (t_star, value) = golden_section(energy, 0.0, hi, 1e-12 * hi);
    Ok(SideOptimum {
        t_star,
        exponent: -value.min(0.0),
    })
}

/// Golden-section minimization of a unimodal function on `[lo, hi]`.
/// Returns the best evaluated point once the bracket is narrower than `tol`.
fn golden_section(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        if c >= d {
            break;
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Exact Chernoff bound `inf_t e^{−ta} Π_i e^{−tλ_i}/√(1 − 2tλ_i)`.
pub fn exact_chernoff_bound(spec: &Spectrum, query: &TailQuery) -> Result<ChernoffBound> {
    let a = query.a();
    let upper = || upper_tail_optimum(spec.eigenvalues(), a);
    let lower = || upper_tail_optimum(spec.negated().eigenvalues(), a);

    let bound = match query.side() {
        Side::Upper => {
            let up = upper()?;
            ChernoffBound {
                exponent: up.exponent,
                t_star: up.t_star,
                probability: clamp_probability(libm::exp(-up.exponent)),
                upper: Some(up),
                lower: None,
            }
        }
        Side::Lower => {
            let low = lower()?;
            ChernoffBound {
                exponent: low.exponent,
                t_star: low.t_star,
                probability: clamp_probability(libm::exp(-low.exponent)),
                upper: None,
                lower: Some(low),
            }
        }
        Side::TwoSided => {
            let (up, low) = (upper()?, lower()?);
            let tighter = if up.exponent <= low.exponent { up } else { low };
            ChernoffBound {
                exponent: tighter.exponent,
                t_star: tighter.t_star,
                probability: clamp_probability(
                    libm::exp(-up.exponent) + libm::exp(-low.exponent),
                ),
                upper: Some(up),
                lower: Some(low),
            }
        }
    };
    Ok(bound)
}

/// All three tiers for one `(spectrum, query)`.
///
/// Raw exponents are never clamped, so they stay comparable when the
/// probabilities saturate at 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub query: TailQuery,
    pub r_used: f64,
    pub kappa: f64,
    pub universal_exponent: f64,
    pub parametrized_exponent: f64,
    /// Quadratic exponent at the constrained optimal `t`.
    pub intermediate: Intermediate,
    pub chernoff_exponent: f64,
    pub t_star: f64,
    pub prob_universal: f64,
    pub prob_parametrized: f64,
    pub prob_chernoff: f64,
}

/// Absolute slack allowed in the exponent ordering, scaled up for large
/// exponents.
pub const NESTING_SLACK: f64 = 1e-9;

fn slack_for(value: f64) -> f64 {
    NESTING_SLACK * value.abs().max(1.0)
}

/// Builds the full report and checks the exponent ordering
/// `chernoff ≥ intermediate ≥ parametrized ≥ κ_r · scale`, where
/// `κ_r = ¼ min{r, 1/(2ξ_r)}`. If `kappa ≤ κ_r` the universal exponent must
/// also sit below the parametrized one.
pub fn assemble_report(
    spec: &Spectrum,
    query: &TailQuery,
    r: f64,
    kappa: f64,
) -> Result<BoundReport> {
    let universal = universal_bound(spec, query, kappa)?;
    let parametrized = parametrized_bound(spec, query, r)?;
    let intermediate = intermediate_exponent(spec, query.a(), r)?;
    let chernoff = exact_chernoff_bound(spec, query)?;

    let kappa_r = kappa_at(r)?;
    let scaled = kappa_r * deviation_scale(spec, query.a());
    let chain = [
        ("chernoff < intermediate", chernoff.exponent, intermediate.exponent),
        ("intermediate < parametrized", intermediate.exponent, parametrized.exponent),
        ("parametrized < radius-scaled universal", parametrized.exponent, scaled),
    ];
    for (detail, bigger, smaller) in chain {
        let slack = bigger - smaller;
        if slack < -slack_for(smaller) {
            return Err(Error::NestingViolated { detail, slack });
        }
    }
    if kappa <= kappa_r * (1.0 + 1e-12) {
        let slack = parametrized.exponent - universal.exponent;
        if slack < -slack_for(universal.exponent) {
            return Err(Error::NestingViolated {
                detail: "parametrized < universal",
                slack,
            });
        }
    }

    Ok(BoundReport {
        query: *query,
        r_used: r,
        kappa,
        universal_exponent: universal.exponent,
        parametrized_exponent: parametrized.exponent,
        intermediate,
        chernoff_exponent: chernoff.exponent,
        t_star: chernoff.t_star,
        prob_universal: universal.probability,
        prob_parametrized: parametrized.probability,
        prob_chernoff: chernoff.probability,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::solve_kappa;

    fn spectrum(values: &[f64]) -> Spectrum {
        Spectrum::from_eigenvalues(values).unwrap()
    }

    fn q(a: f64, side: Side) -> TailQuery {
        TailQuery::new(a, side).unwrap()
    }

    // ξ_{0.5} and ξ_{0.583} from 30-digit arithmetic.
    const XI_HALF: f64 = 0.772_588_722_239_781_2;
    const XI_0_583: f64 = 0.858_130_322_497_449_5;

    #[test]
    fn query_rejects_nonpositive_threshold() {
        assert!(TailQuery::new(0.0, Side::Upper).is_err());
        assert!(TailQuery::new(-1.0, Side::TwoSided).is_err());
        assert!(TailQuery::new(f64::NAN, Side::Lower).is_err());
    }

    #[test]
    fn universal_unit_norms() {
        // ‖A‖₂ = ‖A‖ = 1, a = 10: min{100, 10} = 10
        let b = universal_bound(&spectrum(&[1.0]), &q(10.0, Side::TwoSided), 0.1457).unwrap();
        assert!((b.exponent - 1.457).abs() < 1e-12);
        assert!((b.probability - 2.0 * libm::exp(-1.457)).abs() < 1e-15);
        assert!((b.probability - 0.465_868_059_326_063_8).abs() < 1e-12);
    }

    #[test]
    fn universal_small_threshold_clamps() {
        let b = universal_bound(&spectrum(&[1.0]), &q(1e-9, Side::TwoSided), 0.1457).unwrap();
        assert!(b.exponent < 1e-9);
        assert_eq!(b.probability, 1.0);
        let one_sided = universal_bound(&spectrum(&[1.0]), &q(1e-3, Side::Upper), 0.1457).unwrap();
        assert!(one_sided.probability < 1.0);
    }

    #[test]
    fn universal_rejects_bad_kappa() {
        assert!(universal_bound(&spectrum(&[1.0]), &q(1.0, Side::Upper), 0.0).is_err());
    }

    #[test]
    fn parametrized_identity_2x2() {
        let b = parametrized_bound(&spectrum(&[1.0, 1.0]), &q(4.0, Side::TwoSided), 0.5).unwrap();
        let quadratic = 16.0 / (8.0 * XI_HALF * 2.0);
        assert!(quadratic > 0.5);
        assert!((b.exponent - 0.5).abs() < 1e-15);
        assert_eq!(b.probability, 1.0);
        assert!(parametrized_bound(&spectrum(&[1.0]), &q(4.0, Side::Upper), 1.0).is_err());
    }

    #[test]
    fn intermediate_boundary_case() {
        let m = intermediate_exponent(&spectrum(&[1.0]), 10.0, 0.583).unwrap();
        assert!(m.boundary);
        assert!((m.t - 0.2915).abs() < 1e-15);
        let expected = 0.2915 * 10.0 - 2.0 * 0.2915 * 0.2915 * XI_0_583;
        assert!((m.exponent - expected).abs() < 1e-12);
        assert!((m.exponent - 2.769_165_471_408_332).abs() < 1e-12);
        assert!(m.exponent >= 0.583 * 10.0 / 4.0);
    }

    #[test]
    fn intermediate_interior_case() {
        let spec = spectrum(&[1.0; 20]);
        let m = intermediate_exponent(&spec, 2.0, 0.5).unwrap();
        assert!(!m.boundary);
        let closed = 4.0 / (8.0 * XI_HALF * 20.0);
        assert!((m.exponent - closed).abs() <= 1e-15 * closed.max(1.0));
    }

    #[test]
    fn log_mgf_branches_agree() {
        for u in [-4.9e-3, -5.1e-3, 4.9e-3, 5.1e-3] {
            let direct = -u - 0.5 * libm::log1p(-2.0 * u);
            let series = centered_log_mgf(u);
            assert!((direct - series).abs() <= 1e-12 * series.abs(), "u = {u}");
        }
        for u in [1e-7, -1e-7] {
            let leading = u * u * (1.0 + 4.0 * u / 3.0);
            assert!((centered_log_mgf(u) - leading).abs() <= 1e-13 * leading);
        }
        assert_eq!(centered_log_mgf(0.0), 0.0);
        assert_eq!(centered_log_mgf(0.5), f64::INFINITY);
    }

    #[test]
    fn chernoff_identity_matches_stationary_point() {
        // equal eigenvalues: E'(t) = 0 at t = a/(2(n+a))
        for (n, a) in [(1usize, 3.0), (3, 1.0), (5, 12.5)] {
            let spec = spectrum(&alloc::vec![1.0; n]);
            let c = exact_chernoff_bound(&spec, &q(a, Side::Upper)).unwrap();
            let nf = n as f64;
            let t_exact = a / (2.0 * (nf + a));
            let exp_exact = a / 2.0 - nf / 2.0 * libm::log(1.0 + a / nf);
            assert!((c.exponent - exp_exact).abs() < 1e-12, "n={n} a={a}");
            assert!((c.t_star - t_exact).abs() < 1e-6, "n={n} a={a}");
        }
    }

    #[test]
    fn chernoff_single_eigenvalue_a3() {
        let c = exact_chernoff_bound(&spectrum(&[1.0]), &q(3.0, Side::Upper)).unwrap();
        assert!((c.exponent - 0.806_852_819_440_054_7).abs() < 1e-12);
        assert!((c.probability - 0.446_260_320_296_859_7).abs() < 1e-12);
        // P(y² − 1 ≥ 3) = Φ̄(2)
        assert!(c.probability > 0.022_750_131_948_179_2);
    }

    #[test]
    fn chernoff_symmetric_spectrum_sides_agree() {
        let spec = spectrum(&[1.0, -1.0]);
        for a in [0.5, 3.0, 17.0] {
            let up = exact_chernoff_bound(&spec, &q(a, Side::Upper)).unwrap();
            let low = exact_chernoff_bound(&spec, &q(a, Side::Lower)).unwrap();
            assert!((up.exponent - low.exponent).abs() < 1e-12);
            let two = exact_chernoff_bound(&spec, &q(a, Side::TwoSided)).unwrap();
            let unclamped = 2.0 * libm::exp(-up.exponent);
            assert!((two.probability - unclamped.min(1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn chernoff_impossible_lower_tail() {
        // λ ≥ 0: Z ≥ −tr A, so Z ≤ −a is impossible once a ≥ tr A
        let spec = spectrum(&[1.0, 2.0]);
        let low = exact_chernoff_bound(&spec, &q(3.0, Side::Lower)).unwrap();
        assert_eq!(low.exponent, f64::INFINITY);
        assert_eq!(low.probability, 0.0);
        let near = exact_chernoff_bound(&spec, &q(2.9, Side::Lower)).unwrap();
        assert!(near.exponent.is_finite() && near.exponent > 2.0);
        let two = exact_chernoff_bound(&spec, &q(3.0, Side::TwoSided)).unwrap();
        assert!(two.exponent.is_finite());
        assert_eq!(two.lower.unwrap().exponent, f64::INFINITY);
    }

    #[test]
    fn report_ordering_identity() {
        let k = solve_kappa(1e-12).unwrap();
        let report =
            assemble_report(&spectrum(&[1.0]), &q(10.0, Side::TwoSided), k.r_star, k.kappa)
                .unwrap();
        assert!(report.prob_universal < 1.0);
        assert!(report.prob_parametrized < 1.0);
        assert!(report.prob_chernoff < 1.0);
        assert!(report.prob_chernoff <= report.prob_parametrized);
        assert!(report.prob_parametrized <= report.prob_universal);
        assert!(report.chernoff_exponent >= report.intermediate.exponent);
        assert!(report.parametrized_exponent >= report.universal_exponent - 1e-12);
    }

    #[test]
    fn report_allows_loose_radius_with_optimal_kappa() {
        // r = 0.2 gives a weaker exponent than κ*; only the κ_r chain applies
        let k = solve_kappa(1e-12).unwrap();
        let report =
            assemble_report(&spectrum(&[1.0]), &q(10.0, Side::Upper), 0.2, k.kappa).unwrap();
        assert!(report.parametrized_exponent < report.universal_exponent);
    }
}
