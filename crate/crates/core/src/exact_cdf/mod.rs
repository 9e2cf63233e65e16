//! Exact finite-n distribution functions of the spectral radius.
//!
//! The radius is the maximum of independent radial variables, so its cdf
//! is a product of order-statistic cdfs:
//!
//! * spherical: `Π_j I_u(j, n-j+1)` with `u = r²/(1+r²)`
//! * truncated: `Π_{j≤p} I_{r²}(j, n-p)`
//! * product, `k = 1`: `Π_j P(j, r²)`
//! * product, `k = 2`: `Π_j P(s_1 s_2 ≤ r²)` with `s_i ~ Gamma(j)`, by quadrature
//!
//! Factors are accumulated as logarithms starting from the largest `j`,
//! whose factor is the smallest; the loop stops once the remaining factors
//! cannot move the sum.

mod quadrature;

use crate::limit_laws::{quantile, LimitLaw, DEFAULT_CDF_TOL};
use crate::norming::{EnsembleSpec, NormingConstants};
use crate::specfun::{inc_beta_pair, inc_gamma_pair, ln_gamma_unchecked, Accuracy};
use crate::summation::CompensatedSum;
use crate::{Error, Result};
use std::cell::Cell;

/// `ln(1e-320)`; log-cdfs below this are reported as exactly zero.
pub const LOG_UNDERFLOW: f64 = -736.827_260_982_309_2;

/// Default panel cap for the `k = 2` quadrature.
pub const DEFAULT_QUAD_POINTS: usize = 256;

/// Relative accuracy of each `k = 2` factor.
const K2_REL_TOL: f64 = 1e-8;

/// Log-density drop that bounds the `k = 2` integration range.
const K2_LOG_PADDING: f64 = 60.0;

/// Relative size below which the remaining factors are ignored.
const TAIL_CUTOFF: f64 = 1e-17;

fn check_radius(op: &'static str, r: f64) -> Result<()> {
    if r.is_nan() {
        return Err(Error::domain(op, "radius is NaN"));
    }
    Ok(())
}

/// `ln F` from a pair `(F, 1 - F)`, using whichever side is accurate.
#[inline]
fn log_factor(p: f64, q: f64) -> f64 {
    if q <= 0.5 {
        (-q).ln_1p()
    } else {
        p.ln()
    }
}

/// Sums `ln F_j` for `j = count, ..., 1` where `factor(j)` returns
/// `(ln F_j, 1 - F_j)` and `1 - F_j` is nondecreasing in `j`.
fn log_product_descending<F>(count: u64, mut factor: F) -> Result<f64>
where
    F: FnMut(u64) -> Result<(f64, f64)>,
{
    let mut acc = CompensatedSum::new();
    for j in (1..=count).rev() {
        let (ln_f, q) = factor(j)?;
        acc.add(ln_f);
        let total = acc.value();
        if total < LOG_UNDERFLOW {
            return Ok(f64::NEG_INFINITY);
        }
        // each of the remaining j - 1 factors contributes at most q/(1-q)
        if (j - 1) as f64 * q / (1.0 - q) <= TAIL_CUTOFF * total.abs() {
            break;
        }
    }
    Ok(acc.value())
}

fn from_log(log_cdf: f64) -> f64 {
    if log_cdf < LOG_UNDERFLOW {
        0.0
    } else {
        log_cdf.exp()
    }
}

/// `ln P(max_j |z_j| ≤ r)` for the spherical ensemble.
pub fn spherical_exact_log_cdf(n: u64, r: f64) -> Result<f64> {
    EnsembleSpec::spherical(n)?;
    check_radius("spherical_exact_cdf", r)?;
    if r <= 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    if r.is_infinite() {
        return Ok(0.0);
    }
    let r2 = r * r;
    let (u, y) = if r2.is_infinite() {
        (1.0, 0.0)
    } else {
        (r2 / (1.0 + r2), 1.0 / (1.0 + r2))
    };
    let nf = n as f64;
    log_product_descending(n, |j| {
        let (p, q) = inc_beta_pair(u, y, j as f64, nf - j as f64 + 1.0, &Accuracy::DEFAULT)?;
        Ok((log_factor(p, q), q))
    })
}

/// `P(max_j |z_j| ≤ r)` for the spherical ensemble of size `n`.
pub fn spherical_exact_cdf(n: u64, r: f64) -> Result<f64> {
    spherical_exact_log_cdf(n, r).map(from_log)
}

/// Per-`j` factors `(I_{r²}(j, n-p), 1 - I_{r²}(j, n-p))` of the truncated cdf, `j = 1..=p`.
pub fn truncated_factors(n: u64, p: u64, r: f64) -> Result<Vec<(f64, f64)>> {
    EnsembleSpec::truncated(n, p)?;
    check_radius("truncated_exact_cdf", r)?;
    (1..=p).map(|j| truncated_factor(n, p, j, r)).collect()
}

fn truncated_factor(n: u64, p: u64, j: u64, r: f64) -> Result<(f64, f64)> {
    if r <= 0.0 {
        return Ok((0.0, 1.0));
    }
    if r >= 1.0 {
        return Ok((1.0, 0.0));
    }
    let x = r * r;
    let y = (1.0 - r) * (1.0 + r);
    inc_beta_pair(x, y, j as f64, (n - p) as f64, &Accuracy::DEFAULT)
}

/// `ln P(max_j |z_j| ≤ r)` for the truncated unitary ensemble.
pub fn truncated_exact_log_cdf(n: u64, p: u64, r: f64) -> Result<f64> {
    EnsembleSpec::truncated(n, p)?;
    check_radius("truncated_exact_cdf", r)?;
    if r <= 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    if r >= 1.0 {
        return Ok(0.0);
    }
    log_product_descending(p, |j| {
        let (f, q) = truncated_factor(n, p, j, r)?;
        Ok((log_factor(f, q), q))
    })
}

/// `P(max_j |z_j| ≤ r)` for the `p x p` truncation of an `n x n` Haar
/// unitary. Radii at or above one give 1.
pub fn truncated_exact_cdf(n: u64, p: u64, r: f64) -> Result<f64> {
    truncated_exact_log_cdf(n, p, r).map(from_log)
}

/// `ln P(max_j |z_j| ≤ r)` for a single complex Ginibre matrix.
pub fn product_exact_log_cdf_k1(n: u64, r: f64) -> Result<f64> {
    EnsembleSpec::product(n, 1)?;
    check_radius("product_exact_cdf_k1", r)?;
    if r <= 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let t = r * r;
    if t.is_infinite() {
        return Ok(0.0);
    }
    log_product_descending(n, |j| {
        let (p, q) = inc_gamma_pair(j as f64, t, &Accuracy::DEFAULT)?;
        Ok((log_factor(p, q), q))
    })
}

/// `P(max_j |z_j| ≤ r)` for a single `n x n` complex Ginibre matrix.
pub fn product_exact_cdf_k1(n: u64, r: f64) -> Result<f64> {
    product_exact_log_cdf_k1(n, r).map(from_log)
}

/// `(ln F, 1 - F)` for `F = P(s_1 s_2 ≤ t)` with `s_1, s_2 ~ Gamma(j)` independent.
///
/// With `s = e^u`, `F = ∫ P(j, t e^{-u}) e^{ju - e^u} / Γ(j) du`; the
/// complement uses `Q` in place of `P` and is integrated instead when
/// `t ≥ j²`, where `F` is close to one.
pub fn product_k2_factor(j: u64, t: f64, quad_points: usize) -> Result<(f64, f64)> {
    if j == 0 {
        return Err(Error::domain("product_k2_factor", "j must be >= 1"));
    }
    if t.is_nan() || t < 0.0 {
        return Err(Error::domain(
            "product_k2_factor",
            format!("t must be >= 0, got {t}"),
        ));
    }
    if t == 0.0 {
        return Ok((f64::NEG_INFINITY, 1.0));
    }
    if t.is_infinite() {
        return Ok((0.0, 0.0));
    }
    let a = j as f64;
    let ln_gamma_a = ln_gamma_unchecked(a);
    let upper = t >= a * a;
    let failed = Cell::new(false);
    let mut phi = |u: f64| -> f64 {
        let x = t * (-u).exp();
        match inc_gamma_pair(a, x, &Accuracy::DEFAULT) {
            Ok((p, q)) => a * u - u.exp() - ln_gamma_a + if upper { q.ln() } else { p.ln() },
            Err(_) => {
                failed.set(true);
                f64::NEG_INFINITY
            }
        }
    };

    let lo = a.ln().min(t.ln() - a.ln()) - 80.0;
    let hi = (a + 40.0 * a.sqrt() + 100.0).ln();
    let (u_star, phi_star) = concave_argmax(&mut phi, lo, hi);
    if phi_star == f64::NEG_INFINITY {
        return Ok(if upper {
            (0.0, 0.0)
        } else {
            (f64::NEG_INFINITY, 1.0)
        });
    }
    let floor = phi_star - K2_LOG_PADDING;
    let left = level_crossing(&mut phi, lo, u_star, floor);
    let right = level_crossing(&mut phi, hi, u_star, floor);
    let integral = quadrature::integrate(
        |u| (phi(u) - phi_star).exp(),
        left,
        right,
        K2_REL_TOL,
        quad_points,
    )?;
    if failed.get() {
        return Err(Error::NonConvergence {
            op: "product k=2 integrand",
            iterations: Accuracy::DEFAULT.max_terms,
        });
    }
    let log_value = phi_star + integral.ln();
    if upper {
        let q = log_value.exp().min(1.0);
        Ok(((-q).ln_1p(), q))
    } else {
        let log_value = log_value.min(0.0);
        Ok((log_value, -log_value.exp_m1()))
    }
}

/// Maximizer of a concave function on `[lo, hi]`: coarse scan, then golden section.
fn concave_argmax<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> (f64, f64) {
    const SCAN: usize = 64;
    let step = (hi - lo) / SCAN as f64;
    let mut best = (lo, f(lo));
    let mut best_i = 0;
    for i in 1..=SCAN {
        let u = lo + step * i as f64;
        let v = f(u);
        if v > best.1 {
            best = (u, v);
            best_i = i;
        }
    }
    if best.1 == f64::NEG_INFINITY {
        return best;
    }
    let mut a = lo + step * best_i.saturating_sub(1) as f64;
    let mut b = (lo + step * (best_i + 1) as f64).min(hi);
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..60 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    for (u, v) in [(c, fc), (d, fd)] {
        if v > best.1 {
            best = (u, v);
        }
    }
    best
}

/// Point between `outer` and the mode `inner` where a concave `f` crosses `level`.
fn level_crossing<F: FnMut(f64) -> f64>(f: &mut F, outer: f64, inner: f64, level: f64) -> f64 {
    if f(outer) >= level {
        return outer;
    }
    let (mut below, mut above) = (outer, inner);
    for _ in 0..50 {
        let mid = 0.5 * (below + above);
        if f(mid) >= level {
            above = mid;
        } else {
            below = mid;
        }
    }
    below
}

/// `ln P(max_j |z_j| ≤ r)` for the product of two Ginibre matrices.
pub fn product_exact_log_cdf_k2(n: u64, r: f64, quad_points: usize) -> Result<f64> {
    EnsembleSpec::product(n, 2)?;
    check_radius("product_exact_cdf_k2", r)?;
    if quad_points < 64 {
        return Err(Error::Validation(format!(
            "quad_points must be >= 64, got {quad_points}"
        )));
    }
    if r <= 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let t = r * r;
    if t.is_infinite() {
        return Ok(0.0);
    }
    log_product_descending(n, |j| product_k2_factor(j, t, quad_points))
}

/// `P(max_j |z_j| ≤ r)` for the product of two `n x n` Ginibre matrices;
/// `quad_points` caps the number of quadrature panels per factor.
pub fn product_exact_cdf_k2(n: u64, r: f64, quad_points: usize) -> Result<f64> {
    product_exact_log_cdf_k2(n, r, quad_points).map(from_log)
}

/// Exact cdf of the radius (not log-radius) for every ensemble with a
/// closed finite-n form; products of three or more matrices are rejected.
pub fn exact_cdf(spec: &EnsembleSpec, r: f64) -> Result<f64> {
    match *spec {
        EnsembleSpec::Spherical { n } => spherical_exact_cdf(n, r),
        EnsembleSpec::TruncatedUnitary { n, p } => truncated_exact_cdf(n, p, r),
        EnsembleSpec::GinibreProduct { n, k: 1 } => product_exact_cdf_k1(n, r),
        EnsembleSpec::GinibreProduct { n, k: 2 } => product_exact_cdf_k2(n, r, DEFAULT_QUAD_POINTS),
        EnsembleSpec::GinibreProduct { k, .. } => Err(Error::Validation(format!(
            "no exact cdf for products of k={k} matrices; use Monte Carlo"
        ))),
    }
}

/// Exact cdf evaluated on an increasing grid of radii.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfCurve {
    pub spec: EnsembleSpec,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl CdfCurve {
    pub fn evaluate(spec: EnsembleSpec, grid: Vec<f64>) -> Result<Self> {
        if grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Validation(
                "cdf grid must be strictly increasing".into(),
            ));
        }
        let values = grid
            .iter()
            .map(|&r| exact_cdf(&spec, r))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { spec, grid, values })
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}

/// `points` values spanning the limit law's `[1e-4, 1 - 1e-4]` quantile
/// range: log-spaced for laws on `(0, ∞)`, evenly spaced otherwise.
pub fn reference_grid(law: LimitLaw, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::Validation(format!(
            "grid needs at least 2 points, got {points}"
        )));
    }
    let lo = quantile(law, 1e-4, 1e-12)?;
    let hi = quantile(law, 1.0 - 1e-4, 1e-12)?;
    let last = (points - 1) as f64;
    let positive = matches!(law, LimitLaw::SphericalH | LimitLaw::ProductLaw { .. });
    Ok((0..points)
        .map(|i| {
            let f = i as f64 / last;
            if positive {
                (lo.ln() + f * (hi.ln() - lo.ln())).exp()
            } else {
                lo + f * (hi - lo)
            }
        })
        .collect())
}

/// Largest gap between the exact cdf of the normalized statistic and the
/// limit law over `grid`, with the grid point where it occurs.
pub fn normalized_distance(
    spec: &EnsembleSpec,
    constants: &NormingConstants,
    law: LimitLaw,
    grid: &[f64],
) -> Result<(f64, f64)> {
    let mut worst = (0.0f64, f64::NAN);
    for &x in grid {
        let raw = constants.raw_from_statistic(x);
        let r = if spec.raw_is_log() { raw.exp() } else { raw };
        let gap = (exact_cdf(spec, r.max(0.0))? - law.cdf(x, DEFAULT_CDF_TOL)?).abs();
        if gap > worst.0 || worst.1.is_nan() {
            worst = (gap, x);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{reg_inc_beta, reg_inc_gamma_lower};

    fn direct_product(count: u64, f: impl Fn(u64) -> f64) -> f64 {
        (1..=count).map(f).product()
    }

    #[test]
    fn spherical_closed_forms() {
        assert!((spherical_exact_cdf(1, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((spherical_exact_cdf(1, 2.0).unwrap() - 0.8).abs() < 1e-15);
        assert_eq!(spherical_exact_cdf(5, 0.0).unwrap(), 0.0);
        assert_eq!(spherical_exact_cdf(5, f64::INFINITY).unwrap(), 1.0);
        assert!((spherical_exact_cdf(5, 1e200).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spherical_matches_plain_product() {
        for &(n, r) in &[(5u64, 1.3), (12, 2.0), (30, 4.0)] {
            let u = r * r / (1.0 + r * r);
            let direct = direct_product(n, |j| {
                reg_inc_beta(u, j as f64, (n - j + 1) as f64).unwrap()
            });
            let got = spherical_exact_cdf(n, r).unwrap();
            assert!(
                (got / direct - 1.0).abs() < 1e-12,
                "{n} {r}: {got} vs {direct}"
            );
        }
    }

    #[test]
    fn truncated_closed_forms() {
        assert!((truncated_exact_cdf(2, 1, 0.6).unwrap() - 0.36).abs() < 1e-15);
        assert_eq!(truncated_exact_cdf(10, 5, 1.0).unwrap(), 1.0);
        assert_eq!(truncated_exact_cdf(10, 5, 0.0).unwrap(), 0.0);
        let r: f64 = 0.9;
        let direct = direct_product(5, |j| reg_inc_beta(r * r, j as f64, 5.0).unwrap());
        assert!((truncated_exact_cdf(10, 5, r).unwrap() / direct - 1.0).abs() < 1e-12);
    }

    #[test]
    fn truncated_factors_ordered() {
        for r in [0.3, 0.7, 0.95] {
            let f = truncated_factors(60, 30, r).unwrap();
            assert!(f.windows(2).all(|w| w[1].0 <= w[0].0));
        }
    }

    #[test]
    fn product_k1_closed_forms() {
        let r = 2f64.ln().sqrt();
        assert!((product_exact_cdf_k1(1, r).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(product_exact_cdf_k1(8, 0.0).unwrap(), 0.0);
        let direct = direct_product(8, |j| reg_inc_gamma_lower(j as f64, 9.0).unwrap());
        assert!((product_exact_cdf_k1(8, 3.0).unwrap() / direct - 1.0).abs() < 1e-12);
    }

    #[test]
    fn early_exit_matches_full_product() {
        let (n, r) = (400u64, 22.0f64);
        let mut full = CompensatedSum::new();
        for j in 1..=n {
            let (p, q) = inc_gamma_pair(j as f64, r * r, &Accuracy::DEFAULT).unwrap();
            full.add(log_factor(p, q));
        }
        let got = product_exact_log_cdf_k1(n, r).unwrap();
        assert!((got - full.value()).abs() <= 1e-14 * full.value().abs().max(1e-300));
    }

    #[test]
    fn tiny_cdfs_underflow_to_zero() {
        assert_eq!(spherical_exact_cdf(2000, 1.0).unwrap(), 0.0);
        assert_eq!(product_exact_cdf_k1(2000, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn k2_factor_j1_closed_form() {
        // s1 s2 with Exp(1) factors: P(s1 s2 > t) = 2 sqrt(t) K_1(2 sqrt(t))
        let cases = [
            (0.25, 0.601_907_230_197_234_6),
            (1.0, 0.279_731_763_633_044_85),
            (4.0, 0.049_933_995_549_073_726),
        ];
        for (t, sf) in cases {
            let (ln_f, q) = product_k2_factor(1, t, DEFAULT_QUAD_POINTS).unwrap();
            assert!((q / sf - 1.0).abs() < 1e-8, "{t}: {q} vs {sf}");
            assert!((ln_f - (1.0 - sf).ln()).abs() < 1e-8);
        }
    }

    #[test]
    fn k2_factor_sides_agree() {
        // evaluate both integrals at the switch point t = j²
        for j in [1u64, 3, 10, 40] {
            let t = (j * j) as f64;
            let below = product_k2_factor(j, t * (1.0 - 1e-12), DEFAULT_QUAD_POINTS).unwrap();
            let at = product_k2_factor(j, t, DEFAULT_QUAD_POINTS).unwrap();
            assert!((below.1 - at.1).abs() < 1e-8, "{j}: {below:?} vs {at:?}");
        }
    }

    #[test]
    fn k2_small_values() {
        assert_eq!(product_exact_cdf_k2(1, 0.0, 64).unwrap(), 0.0);
        let a = product_exact_cdf_k2(1, 1.0, 64).unwrap();
        let b = product_exact_cdf_k2(1, 2.0, 64).unwrap();
        assert!(0.0 < a && a < b && b < 1.0);
        assert!(product_exact_cdf_k2(1, 1.0, 63).is_err());
    }

    #[test]
    fn k3_has_no_exact_cdf() {
        assert!(exact_cdf(&EnsembleSpec::product(4, 3).unwrap(), 1.0).is_err());
    }

    #[test]
    fn curve_rejects_unsorted_grid() {
        let spec = EnsembleSpec::spherical(3).unwrap();
        assert!(CdfCurve::evaluate(spec, vec![1.0, 0.5]).is_err());
        let c = CdfCurve::evaluate(spec, vec![0.5, 1.0, 2.0]).unwrap();
        assert!(c.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn reference_grids() {
        let g = reference_grid(LimitLaw::Gumbel, 200).unwrap();
        assert_eq!(g.len(), 200);
        assert!((g[0] + (-(1e-4f64).ln()).ln()).abs() < 1e-9);
        let h = reference_grid(LimitLaw::SphericalH, 200).unwrap();
        assert!(h[0] > 0.0 && h.windows(2).all(|w| w[0] < w[1]));
        assert!(reference_grid(LimitLaw::Gumbel, 1).is_err());
    }
}
