//! Limiting distributions of the normalized spectral radius.
//!
//! * `SphericalH`: `H(x) = Π_{k>=1} H_k(x^{-2})` where `H_k` is the
//!   Poisson(τ) cdf at `k-1`.
//! * `Gumbel`: `Λ(x) = exp(-e^{-x})`.
//! * `ProductLaw{α}`: `Φ_α(√α/2 + 2 ln(x)/√α)` with
//!   `Φ_α(x) = Π_{j>=0} Φ(x + j√α)`.
//! * `StandardNormal`.
//!
//! Both infinite products are summed in log space and truncated with a
//! certified bound on the discarded log-mass, reported in
//! [`CdfValue::truncation_bound`].

use crate::rng::RandomStream;
use crate::specfun::{
    inc_gamma_pair, ln_gamma_unchecked, log_std_normal_cdf, std_normal_cdf, std_normal_pdf,
    std_normal_sf, Accuracy,
};
use crate::summation::CompensatedSum;
use crate::{Error, Result};
use std::f64::consts::PI;
use std::fmt;

/// Below this, `exp` underflows to zero.
pub(crate) const LOG_ZERO: f64 = -745.2;

pub const DEFAULT_TERM_CAP: usize = 10_000_000;

/// Truncation tolerance used when a law's cdf is needed as a plain number.
pub const DEFAULT_CDF_TOL: f64 = 1e-13;

const MAX_BISECTION_STEPS: usize = 2_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitLaw {
    SphericalH,
    Gumbel,
    ProductLaw { alpha: f64 },
    StandardNormal,
}

impl LimitLaw {
    pub fn product(alpha: f64) -> Result<Self> {
        let law = LimitLaw::ProductLaw { alpha };
        law.validate()?;
        Ok(law)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            LimitLaw::ProductLaw { alpha } if !(alpha > 0.0 && alpha.is_finite()) => {
                Err(Error::Validation(format!(
                    "product law requires finite alpha > 0, got {alpha}"
                )))
            }
            _ => Ok(()),
        }
    }

    /// Command-line name of the law.
    pub fn name(&self) -> &'static str {
        match self {
            LimitLaw::SphericalH => "spherical-h",
            LimitLaw::Gumbel => "gumbel",
            LimitLaw::ProductLaw { .. } => "product-alpha",
            LimitLaw::StandardNormal => "normal",
        }
    }

    pub fn cdf_value(&self, x: f64, tol: f64) -> Result<CdfValue> {
        self.validate()?;
        match *self {
            LimitLaw::SphericalH => spherical_h_cdf(x, tol),
            LimitLaw::Gumbel => Ok(CdfValue::from_log(-(-x).exp(), 0.0)),
            LimitLaw::ProductLaw { alpha } => product_law_cdf(x, alpha, tol),
            LimitLaw::StandardNormal => Ok(CdfValue::from_log(log_std_normal_cdf(x), 0.0)),
        }
    }

    pub fn cdf(&self, x: f64, tol: f64) -> Result<f64> {
        match *self {
            LimitLaw::Gumbel => Ok(gumbel_cdf(x)),
            LimitLaw::StandardNormal => Ok(std_normal_cdf(x)),
            _ => self.cdf_value(x, tol).map(|v| v.value),
        }
    }

    /// `1 - cdf(x)` without cancellation.
    pub fn upper_tail(&self, x: f64, tol: f64) -> Result<f64> {
        match *self {
            LimitLaw::Gumbel => Ok(-(-(-x).exp()).exp_m1()),
            LimitLaw::StandardNormal => Ok(std_normal_sf(x)),
            _ => self.cdf_value(x, tol).map(|v| v.complement()),
        }
    }
}

impl fmt::Display for LimitLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitLaw::ProductLaw { alpha } => write!(f, "product-alpha(alpha={alpha})"),
            other => f.write_str(other.name()),
        }
    }
}

/// A cdf value carried with its logarithm and the truncation bound of
/// the infinite product that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdfValue {
    pub value: f64,
    pub log_value: f64,
    /// Upper bound on `|log_value - ln F(x)|` due to truncation.
    pub truncation_bound: f64,
}

impl CdfValue {
    fn zero() -> Self {
        Self {
            value: 0.0,
            log_value: f64::NEG_INFINITY,
            truncation_bound: 0.0,
        }
    }

    fn from_log(log_value: f64, truncation_bound: f64) -> Self {
        Self {
            value: log_value.exp(),
            log_value,
            truncation_bound,
        }
    }

    /// `1 - value`, accurate when `value` is close to one.
    pub fn complement(&self) -> f64 {
        -self.log_value.exp_m1()
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Validation(format!(
            "tolerance must be positive and finite, got {tol}"
        )))
    }
}

/// `Σ_{k>K} (1 - H_k(τ)) = E[(N - K)^+]` for `N ~ Poisson(τ)`, summed
/// from the probability mass function. Requires `K + 1 > τ`.
fn poisson_excess_mean(tau: f64, k: usize) -> f64 {
    let mut m = k as f64 + 1.0;
    let mut pmf = (m * tau.ln() - tau - ln_gamma_unchecked(m + 1.0)).exp();
    let mut sum = 0.0;
    let mut weight = 1.0;
    while pmf > 0.0 {
        let term = weight * pmf;
        sum += term;
        if term < 1e-20 * sum {
            break;
        }
        m += 1.0;
        weight += 1.0;
        pmf *= tau / m;
    }
    sum
}

/// `H(x) = Π_{k>=1} H_k(x^{-2})` with `H(x) = 0` for `x <= 0`.
pub fn spherical_h_cdf(x: f64, tol: f64) -> Result<CdfValue> {
    spherical_h_cdf_capped(x, tol, DEFAULT_TERM_CAP)
}

/// As [`spherical_h_cdf`] with an explicit cap on the number of factors.
///
/// After `K` factors the neglected log-mass is at most `R_K / H_{K+1}(τ)`
/// where `R_K = Σ_{k>K} (1 - H_k(τ))`. Because `Σ_{k>=1} (1 - H_k(τ)) = τ`,
/// `R_K` is the exact remainder of that series; it is summed from the
/// Poisson mass function, and `H_{K+1} >= 1 - R_K`.
pub fn spherical_h_cdf_capped(x: f64, tol: f64, max_terms: usize) -> Result<CdfValue> {
    check_tol(tol)?;
    if x.is_nan() {
        return Err(Error::domain("spherical_h_cdf", "x is NaN"));
    }
    if x <= 0.0 {
        return Ok(CdfValue::zero());
    }
    let tau = 1.0 / (x * x);
    if tau.is_infinite() {
        return Ok(CdfValue::zero());
    }
    let mut log_sum = CompensatedSum::new();
    let mut bound = f64::INFINITY;
    for k in 1..=max_terms {
        let (p, q) = inc_gamma_pair(k as f64, tau, &Accuracy::DEFAULT)?;
        log_sum.add(if q > 0.5 { (-p).ln_1p() } else { q.ln() });
        if log_sum.value() < LOG_ZERO {
            return Ok(CdfValue::zero());
        }
        if p <= tol && (k as f64) + 1.0 > tau {
            let remainder = poisson_excess_mean(tau, k);
            bound = remainder / (1.0 - remainder);
            if bound <= tol {
                return Ok(CdfValue::from_log(log_sum.value(), bound));
            }
        }
    }
    Err(Error::ToleranceNotReached {
        requested: tol,
        achieved: bound,
        terms: max_terms,
    })
}

pub fn gumbel_cdf(x: f64) -> f64 {
    (-(-x).exp()).exp()
}

/// `Φ_α(x) = Π_{j>=0} Φ(x + j√α)`; `α = +∞` gives `Φ(x)`.
pub fn phi_alpha(x: f64, alpha: f64, tol: f64) -> Result<CdfValue> {
    phi_alpha_capped(x, alpha, tol, DEFAULT_TERM_CAP)
}

/// As [`phi_alpha`] with an explicit cap on the number of factors.
///
/// With `t_J = x + J√α >= 1`, `u_J = 1 - Φ(t_J)` and `r_J = exp(-√α t_J)`,
/// successive tail masses shrink by at least `r_J`, so the factors from
/// `J` on contribute at most `u_J / ((1 - r_J) Φ(t_J))` to `-ln Φ_α(x)`.
pub fn phi_alpha_capped(x: f64, alpha: f64, tol: f64, max_terms: usize) -> Result<CdfValue> {
    check_tol(tol)?;
    if !(alpha > 0.0) {
        return Err(Error::domain(
            "phi_alpha",
            format!("alpha must be positive, got {alpha}"),
        ));
    }
    if x.is_nan() {
        return Err(Error::domain("phi_alpha", "x is NaN"));
    }
    if alpha.is_infinite() {
        return Ok(CdfValue::from_log(log_std_normal_cdf(x), 0.0));
    }
    let step = alpha.sqrt();
    let mut log_sum = CompensatedSum::new();
    let mut bound = f64::INFINITY;
    for j in 0..max_terms {
        let t = x + j as f64 * step;
        if t >= 1.0 {
            let u = std_normal_sf(t);
            let ratio = (-step * t).exp();
            bound = u / ((1.0 - ratio) * (1.0 - u));
            if bound <= tol {
                return Ok(CdfValue::from_log(log_sum.value(), bound));
            }
        }
        log_sum.add(log_std_normal_cdf(t));
        if log_sum.value() < LOG_ZERO {
            return Ok(CdfValue::zero());
        }
    }
    Err(Error::ToleranceNotReached {
        requested: tol,
        achieved: bound,
        terms: max_terms,
    })
}

/// Limit cdf of `max|z_j| / n^{k/2}` when `k/n -> α`.
pub fn product_law_cdf(x: f64, alpha: f64, tol: f64) -> Result<CdfValue> {
    LimitLaw::ProductLaw { alpha }.validate()?;
    check_tol(tol)?;
    if x.is_nan() {
        return Err(Error::domain("product_law_cdf", "x is NaN"));
    }
    if x <= 0.0 {
        return Ok(CdfValue::zero());
    }
    let s = alpha.sqrt();
    phi_alpha(0.5 * s + 2.0 * x.ln() / s, alpha, tol)
}

/// Leading-order approximation of `1 - cdf(x)` for `x > 1`.
///
/// * `SphericalH`: `x^{-2}`
/// * `ProductLaw{α}`: `C e^{-2 (ln x)^2/α} / (x ln x)` with
///   `C = √α e^{-α/8} / (2√(2π))`
/// * `Gumbel`: the exact tail `1 - Λ(x)`
/// * `StandardNormal`: `φ(x)/x`
pub fn tail_asymptote(law: LimitLaw, x: f64) -> Result<f64> {
    law.validate()?;
    if !(x > 1.0) {
        return Err(Error::domain(
            "tail_asymptote",
            format!("requires x > 1, got {x}"),
        ));
    }
    Ok(match law {
        LimitLaw::SphericalH => 1.0 / (x * x),
        LimitLaw::Gumbel => -(-(-x).exp()).exp_m1(),
        LimitLaw::ProductLaw { alpha } => {
            let c = alpha.sqrt() * (-alpha / 8.0).exp() / (2.0 * (2.0 * PI).sqrt());
            let l = x.ln();
            c * (-2.0 * l * l / alpha).exp() / (x * l)
        }
        LimitLaw::StandardNormal => std_normal_pdf(x) / x,
    })
}

/// `x` with `|cdf(x) - q| <= tol`, by bracket expansion and bisection.
pub fn quantile(law: LimitLaw, q: f64, tol: f64) -> Result<f64> {
    law.validate()?;
    check_tol(tol)?;
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::domain(
            "quantile",
            format!("requires 0 < q < 1, got {q}"),
        ));
    }
    if let LimitLaw::Gumbel = law {
        return Ok(-(-q.ln()).ln());
    }
    let cdf = |x: f64| law.cdf(x, DEFAULT_CDF_TOL.min(tol * 1e-3));
    let (mut lo, mut hi) = match law {
        LimitLaw::StandardNormal => (-10.0, 10.0),
        _ => (1e-3, 1e3),
    };
    let mut f_lo = cdf(lo)?;
    while f_lo > q {
        lo = if lo > 0.0 { lo / 2.0 } else { lo * 2.0 };
        if lo == 0.0 || lo.is_infinite() {
            return Err(Error::NonConvergence {
                op: "quantile bracket",
                iterations: MAX_BISECTION_STEPS,
            });
        }
        f_lo = cdf(lo)?;
    }
    let mut f_hi = cdf(hi)?;
    while f_hi < q {
        hi *= 2.0;
        if hi.is_infinite() {
            return Err(Error::NonConvergence {
                op: "quantile bracket",
                iterations: MAX_BISECTION_STEPS,
            });
        }
        f_hi = cdf(hi)?;
    }
    for _ in 0..MAX_BISECTION_STEPS {
        if (f_lo - q).abs() <= tol {
            return Ok(lo);
        }
        if (f_hi - q).abs() <= tol {
            return Ok(hi);
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = cdf(mid)?;
        if f_mid < q {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    Err(Error::NonConvergence {
        op: "quantile bisection",
        iterations: MAX_BISECTION_STEPS,
    })
}

/// One variate from `law` by inverse-cdf transform of a uniform draw.
pub fn sample_limit(law: LimitLaw, rng: &mut RandomStream) -> Result<f64> {
    let u = rng.uniform();
    match law {
        LimitLaw::Gumbel => Ok(-(-u.ln()).ln()),
        _ => quantile(law, u, 1e-10),
    }
}
