use super::{Accuracy, FPMIN, LN_SQRT_2PI};
use crate::{Error, Result};

/// Below this argument log-gamma and the polygammas are shifted upward
/// before the asymptotic series is applied.
const STIRLING_MIN: f64 = 15.0;
const POLYGAMMA_MIN: f64 = 10.0;

/// `ln Γ(x) - [(x - 1/2) ln x - x + ln sqrt(2π)]` for `x >= STIRLING_MIN`.
fn stirling_series(x: f64) -> f64 {
    let r = 1.0 / x;
    let r2 = r * r;
    r * (1.0 / 12.0
        - r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 * (1.0 / 1188.0)))))
}

pub(crate) fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < STIRLING_MIN && x.fract() == 0.0 {
        // (x-1)! is exact in f64 for these arguments
        let factorial: f64 = (1..x as u32).map(f64::from).product();
        return factorial.ln();
    }
    if x >= STIRLING_MIN {
        return (x - 0.5) * x.ln() - x + LN_SQRT_2PI + stirling_series(x);
    }
    let mut shifted = x;
    let mut product = 1.0;
    while shifted < STIRLING_MIN {
        product *= shifted;
        shifted += 1.0;
    }
    ln_gamma_unchecked(shifted) - product.ln()
}

/// Error of Stirling's formula for `ln Γ(x)`.
pub(crate) fn stirling_error(x: f64) -> f64 {
    if x >= STIRLING_MIN {
        stirling_series(x)
    } else {
        ln_gamma_unchecked(x) - ((x - 0.5) * x.ln() - x + LN_SQRT_2PI)
    }
}

/// `d - ln(1 + d)`, accurate for small `d`.
pub(crate) fn log1pmx_neg(d: f64) -> f64 {
    if d.abs() < 0.1 {
        // d^2/2 - d^3/3 + d^4/4 - ...
        let mut term = d * d;
        let mut sum = 0.0;
        let mut k = 2.0;
        loop {
            let contrib = term / k;
            sum += contrib;
            if contrib.abs() <= f64::EPSILON * 0.25 * sum.abs() {
                return sum;
            }
            term *= -d;
            k += 1.0;
        }
    }
    d - d.ln_1p()
}

pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "log_gamma",
            format!("x must be positive and finite, got {x}"),
        ));
    }
    Ok(ln_gamma_unchecked(x))
}

/// Digamma function `ψ(x) = Γ'(x)/Γ(x)` for `x > 0`.
///
/// Upward recurrence `ψ(x) = ψ(x+1) - 1/x` until `x >= 10`, then the
/// asymptotic series in Bernoulli numbers.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "digamma",
            format!("x must be positive and finite, got {x}"),
        ));
    }
    let mut shifted = x;
    let mut acc = 0.0;
    while shifted < POLYGAMMA_MIN {
        acc -= 1.0 / shifted;
        shifted += 1.0;
    }
    let r2 = 1.0 / (shifted * shifted);
    let series = r2
        * (1.0 / 12.0
            - r2 * (1.0 / 120.0
                - r2 * (1.0 / 252.0
                    - r2 * (1.0 / 240.0 - r2 * (1.0 / 132.0 - r2 * (691.0 / 32760.0))))));
    Ok(acc + shifted.ln() - 0.5 / shifted - series)
}

/// Trigamma function `ψ'(x)` for `x > 0`.
pub fn trigamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "trigamma",
            format!("x must be positive and finite, got {x}"),
        ));
    }
    let mut shifted = x;
    let mut acc = 0.0;
    while shifted < POLYGAMMA_MIN {
        acc += 1.0 / (shifted * shifted);
        shifted += 1.0;
    }
    let r = 1.0 / shifted;
    let r2 = r * r;
    let series = r
        + 0.5 * r2
        + r * r2
            * (1.0 / 6.0
                - r2 * (1.0 / 30.0
                    - r2 * (1.0 / 42.0
                        - r2 * (1.0 / 30.0 - r2 * (5.0 / 66.0 - r2 * (691.0 / 2730.0))))));
    Ok(acc + series)
}

/// `ln(x^a e^{-x} / Γ(a))`
fn ln_gamma_prefix(a: f64, x: f64) -> f64 {
    if a >= STIRLING_MIN {
        let d = (x - a) / a;
        -a * log1pmx_neg(d) + 0.5 * a.ln() - LN_SQRT_2PI - stirling_error(a)
    } else {
        a * x.ln() - x - ln_gamma_unchecked(a)
    }
}

/// Regularized incomplete gamma functions `(P(a,x), Q(a,x))`.
///
/// The series (for `x < a + 1`) yields `P` and the continued fraction
/// yields `Q`; whichever is computed directly carries full relative
/// accuracy, the other is its complement.
pub fn inc_gamma_pair(a: f64, x: f64, accuracy: &Accuracy) -> Result<(f64, f64)> {
    if !(a > 0.0) || !a.is_finite() || !(x >= 0.0) {
        return Err(Error::domain(
            "reg_inc_gamma",
            format!("requires a > 0 finite and x >= 0, got a={a}, x={x}"),
        ));
    }
    if x == 0.0 {
        return Ok((0.0, 1.0));
    }
    if x.is_infinite() {
        return Ok((1.0, 0.0));
    }
    let prefix = ln_gamma_prefix(a, x);
    if x < a + 1.0 {
        let mut ap = a;
        let mut term = 1.0 / a;
        let mut sum = term;
        for _ in 0..accuracy.max_terms {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if term.abs() < sum.abs() * accuracy.abs_tol {
                let p = (sum.ln() + prefix).exp().min(1.0);
                return Ok((p, 1.0 - p));
            }
        }
        Err(Error::NonConvergence {
            op: "incomplete gamma series",
            iterations: accuracy.max_terms,
        })
    } else {
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / FPMIN;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..=accuracy.max_terms {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < FPMIN {
                d = FPMIN;
            }
            c = b + an / c;
            if c.abs() < FPMIN {
                c = FPMIN;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < accuracy.abs_tol {
                let q = (h.ln() + prefix).exp().min(1.0);
                return Ok((1.0 - q, q));
            }
        }
        Err(Error::NonConvergence {
            op: "incomplete gamma continued fraction",
            iterations: accuracy.max_terms,
        })
    }
}

/// Lower regularized incomplete gamma `P(a, x) = γ(a, x)/Γ(a)`.
pub fn reg_inc_gamma_lower(a: f64, x: f64) -> Result<f64> {
    inc_gamma_pair(a, x, &Accuracy::DEFAULT).map(|(p, _)| p)
}

/// Upper regularized incomplete gamma `Q(a, x) = 1 - P(a, x)`.
pub fn reg_inc_gamma_upper(a: f64, x: f64) -> Result<f64> {
    inc_gamma_pair(a, x, &Accuracy::DEFAULT).map(|(_, q)| q)
}

/// `H_k(x) = e^{-x} Σ_{j<k} x^j/j! = P(Poi(x) <= k-1) = Q(k, x)`.
pub fn poisson_cdf(k: u64, x: f64) -> Result<f64> {
    if k < 1 || !(x >= 0.0) {
        return Err(Error::domain(
            "poisson_cdf",
            format!("requires k >= 1 and x >= 0, got k={k}, x={x}"),
        ));
    }
    reg_inc_gamma_upper(k as f64, x)
}

/// `ln H_k(x)`, computed from whichever of `P`, `Q` is accurate.
pub fn log_poisson_cdf(k: u64, x: f64) -> Result<f64> {
    if k < 1 || !(x >= 0.0) {
        return Err(Error::domain(
            "poisson_cdf",
            format!("requires k >= 1 and x >= 0, got k={k}, x={x}"),
        ));
    }
    let (p, q) = inc_gamma_pair(k as f64, x, &Accuracy::DEFAULT)?;
    Ok(if q > 0.5 { (-p).ln_1p() } else { q.ln() })
}
