//! Ensemble descriptions and the centering/scaling maps that turn a raw
//! spectral radius into a statistic with a non-degenerate limit.
//!
//! Product-ensemble radii are of order `n^{k/2}` and overflow `f64` at
//! modest sizes, so they are carried as natural-log radii and only the
//! ratio `exp(L - (k/2) ln n)` is ever formed.

use crate::limit_laws::LimitLaw;
use crate::specfun::digamma;
use crate::{Error, Result};
use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnsembleSpec {
    /// `A^{-1} B` for independent `n x n` complex Ginibre matrices.
    Spherical { n: u64 },
    /// Upper-left `p x p` block of an `n x n` Haar unitary matrix.
    TruncatedUnitary { n: u64, p: u64 },
    /// Product of `k` independent `n x n` complex Ginibre matrices.
    GinibreProduct { n: u64, k: u64 },
}

impl EnsembleSpec {
    pub fn spherical(n: u64) -> Result<Self> {
        let spec = EnsembleSpec::Spherical { n };
        spec.validate()?;
        Ok(spec)
    }

    pub fn truncated(n: u64, p: u64) -> Result<Self> {
        let spec = EnsembleSpec::TruncatedUnitary { n, p };
        spec.validate()?;
        Ok(spec)
    }

    pub fn product(n: u64, k: u64) -> Result<Self> {
        let spec = EnsembleSpec::GinibreProduct { n, k };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            EnsembleSpec::Spherical { n } if n >= 1 => Ok(()),
            EnsembleSpec::TruncatedUnitary { n, p } if p >= 1 && p < n => Ok(()),
            EnsembleSpec::GinibreProduct { n, k } if n >= 1 && k >= 1 => Ok(()),
            EnsembleSpec::TruncatedUnitary { n, p } => Err(Error::Validation(format!(
                "truncated ensemble requires 1 <= p < n, got n={n}, p={p}"
            ))),
            other => Err(Error::Validation(format!("{other}: sizes must be >= 1"))),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            EnsembleSpec::Spherical { .. } => "spherical",
            EnsembleSpec::TruncatedUnitary { .. } => "truncated",
            EnsembleSpec::GinibreProduct { .. } => "product",
        }
    }

    pub fn n(&self) -> u64 {
        match *self {
            EnsembleSpec::Spherical { n }
            | EnsembleSpec::TruncatedUnitary { n, .. }
            | EnsembleSpec::GinibreProduct { n, .. } => n,
        }
    }

    /// True when the raw statistic is a log-radius.
    pub fn raw_is_log(&self) -> bool {
        matches!(self, EnsembleSpec::GinibreProduct { .. })
    }

    /// Number of Gamma variates one replicate consumes.
    pub fn draws_per_replicate(&self) -> u128 {
        match *self {
            EnsembleSpec::Spherical { n } => 2 * n as u128,
            EnsembleSpec::TruncatedUnitary { p, .. } => 2 * p as u128,
            EnsembleSpec::GinibreProduct { n, k } => n as u128 * k as u128,
        }
    }
}

impl fmt::Display for EnsembleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnsembleSpec::Spherical { n } => write!(f, "spherical(n={n})"),
            EnsembleSpec::TruncatedUnitary { n, p } => write!(f, "truncated(n={n},p={p})"),
            EnsembleSpec::GinibreProduct { n, k } => write!(f, "product(n={n},k={k})"),
        }
    }
}

/// Asymptotic regime of the product ensemble, by the behaviour of `k/n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProductRegime {
    /// `k/n -> 0`: Gumbel limit.
    SmallK,
    /// `k/n -> alpha`: the `Φ_α` product law.
    ProportionalK { alpha: f64 },
    /// `k/n -> ∞`: standard normal limit.
    LargeK,
}

impl ProductRegime {
    pub fn name(&self) -> &'static str {
        match self {
            ProductRegime::SmallK => "small-k",
            ProductRegime::ProportionalK { .. } => "proportional-k",
            ProductRegime::LargeK => "large-k",
        }
    }

    pub fn limit_law(&self) -> LimitLaw {
        match *self {
            ProductRegime::SmallK => LimitLaw::Gumbel,
            ProductRegime::ProportionalK { alpha } => LimitLaw::ProductLaw { alpha },
            ProductRegime::LargeK => LimitLaw::StandardNormal,
        }
    }
}

/// Finite-size classification: `k/n <= 0.01` is small, `k/n >= 100` is
/// large, anything between is proportional with `alpha = k/n`.
pub fn default_regime(n: u64, k: u64) -> ProductRegime {
    let ratio = k as f64 / n as f64;
    if ratio <= 0.01 {
        ProductRegime::SmallK
    } else if ratio >= 100.0 {
        ProductRegime::LargeK
    } else {
        ProductRegime::ProportionalK { alpha: ratio }
    }
}

/// Limit law of the normalized statistic: `H` for the spherical ensemble,
/// Gumbel for the truncated ensemble, and the [`default_regime`] law for products.
pub fn default_law(spec: &EnsembleSpec) -> LimitLaw {
    match *spec {
        EnsembleSpec::Spherical { .. } => LimitLaw::SphericalH,
        EnsembleSpec::TruncatedUnitary { .. } => LimitLaw::Gumbel,
        EnsembleSpec::GinibreProduct { n, k } => default_regime(n, k).limit_law(),
    }
}

/// Product regime whose normalization targets `law`, or `None` for the
/// spherical and truncated ensembles; inconsistent pairs are rejected.
pub fn regime_for_law(spec: &EnsembleSpec, law: LimitLaw) -> Result<Option<ProductRegime>> {
    law.validate()?;
    match (*spec, law) {
        (EnsembleSpec::Spherical { .. }, LimitLaw::SphericalH)
        | (EnsembleSpec::TruncatedUnitary { .. }, LimitLaw::Gumbel) => Ok(None),
        (EnsembleSpec::GinibreProduct { .. }, LimitLaw::Gumbel) => Ok(Some(ProductRegime::SmallK)),
        (EnsembleSpec::GinibreProduct { .. }, LimitLaw::ProductLaw { alpha }) => {
            Ok(Some(ProductRegime::ProportionalK { alpha }))
        }
        (EnsembleSpec::GinibreProduct { .. }, LimitLaw::StandardNormal) => {
            Ok(Some(ProductRegime::LargeK))
        }
        _ => Err(Error::Validation(format!(
            "law {law} is not a limit of the {} ensemble",
            spec.family()
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PreTransform {
    Identity,
    /// `raw` is a log-radius; the map sees `exp(raw - log_offset)`.
    LogSpace {
        log_offset: f64,
    },
}

/// `statistic = (pre_transform(raw) - shift) / scale`
#[derive(Debug, Clone, PartialEq)]
pub struct NormingConstants {
    pub pre_transform: PreTransform,
    pub shift: f64,
    pub scale: f64,
    /// Named intermediate constants, in a fixed order.
    pub aux: Vec<(&'static str, f64)>,
}

impl NormingConstants {
    pub fn aux(&self, name: &str) -> Option<f64> {
        self.aux.iter().find(|(k, _)| *k == name).map(|&(_, v)| v)
    }

    pub fn normalize(&self, raw: f64) -> Result<f64> {
        let pre = match self.pre_transform {
            PreTransform::Identity => raw,
            PreTransform::LogSpace { log_offset } => {
                let m = (raw - log_offset).exp();
                if m.is_infinite() {
                    return Err(Error::Overflow { raw });
                }
                m
            }
        };
        Ok((pre - self.shift) / self.scale)
    }

    /// Inverse of [`normalize`](Self::normalize). A log-space statistic
    /// whose radius would be nonpositive maps to `-inf`.
    pub fn raw_from_statistic(&self, statistic: f64) -> f64 {
        let pre = self.shift + self.scale * statistic;
        match self.pre_transform {
            PreTransform::Identity => pre,
            PreTransform::LogSpace { log_offset } if pre > 0.0 => pre.ln() + log_offset,
            PreTransform::LogSpace { .. } => f64::NEG_INFINITY,
        }
    }

    /// Norming constants for `spec`; product ensembles use `regime` or,
    /// when absent, [`default_regime`].
    pub fn for_spec(spec: &EnsembleSpec, regime: Option<ProductRegime>) -> Result<Self> {
        spec.validate()?;
        match *spec {
            EnsembleSpec::Spherical { n } => Ok(spherical_norming(n)),
            EnsembleSpec::TruncatedUnitary { n, p } => truncated_norming(n, p),
            EnsembleSpec::GinibreProduct { n, k } => {
                product_norming(n, k, regime.unwrap_or_else(|| default_regime(n, k)))
            }
        }
    }
}

/// Applies the regime map of `constants` to a raw statistic of `spec`.
pub fn normalize(spec: &EnsembleSpec, constants: &NormingConstants, raw: f64) -> Result<f64> {
    spec.validate()?;
    let log_space = matches!(constants.pre_transform, PreTransform::LogSpace { .. });
    if log_space && !spec.raw_is_log() {
        return Err(Error::Validation(format!(
            "{spec} has radius-valued statistics but the constants expect log-radii"
        )));
    }
    constants.normalize(raw)
}

fn ab_unguarded(y: f64) -> (f64, f64) {
    let l = y.ln();
    let root = l.sqrt();
    let a = root - ((2.0 * PI).sqrt() * l).ln() / root;
    (a, 1.0 / root)
}

/// `a(y) = (ln y)^{1/2} - (ln y)^{-1/2} ln(sqrt(2π) ln y)`, `b(y) = (ln y)^{-1/2}`, for `y > 3`.
pub fn ab_functions(y: f64) -> Result<(f64, f64)> {
    if !(y > 3.0) || !y.is_finite() {
        return Err(Error::domain(
            "ab_functions",
            format!("requires finite y > 3, got {y}"),
        ));
    }
    Ok(ab_unguarded(y))
}

/// `max|z_j| / sqrt(n)`
pub fn spherical_norming(n: u64) -> NormingConstants {
    let root = (n as f64).sqrt();
    NormingConstants {
        pre_transform: PreTransform::Identity,
        shift: 0.0,
        scale: root,
        aux: vec![("sqrt_n", root)],
    }
}

/// `(max|z_j| - A_n) / B_n` with
/// `c_n = ((p-1)/(n-1))^{1/2}`,
/// `A_n = c_n + (1/2)(1-c_n^2)^{1/2} (n-1)^{-1/2} a_n`,
/// `B_n = (1/2)(1-c_n^2)^{1/2} (n-1)^{-1/2} b_n`,
/// and `a_n, b_n` evaluated at `n c_n^2 / (1 - c_n^2)`.
pub fn truncated_norming(n: u64, p: u64) -> Result<NormingConstants> {
    if n < 3 || p < 1 || p >= n {
        return Err(Error::domain(
            "truncated_norming",
            format!("requires n >= 3 and 1 <= p <= n-1, got n={n}, p={p}"),
        ));
    }
    let nf = n as f64;
    let c2 = (p as f64 - 1.0) / (nf - 1.0);
    let y = nf * c2 / (1.0 - c2);
    if !(y > 3.0) {
        return Err(Error::domain(
            "truncated_norming",
            format!("n c_n^2/(1 - c_n^2) = {y} must exceed 3 (n={n}, p={p})"),
        ));
    }
    let (a_n, b_n) = ab_unguarded(y);
    let c_n = c2.sqrt();
    let half_width = 0.5 * (1.0 - c2).sqrt() / (nf - 1.0).sqrt();
    let big_a = c_n + half_width * a_n;
    let big_b = half_width * b_n;
    Ok(NormingConstants {
        pre_transform: PreTransform::Identity,
        shift: big_a,
        scale: big_b,
        aux: vec![
            ("c_n", c_n),
            ("y_n", y),
            ("a_n", a_n),
            ("b_n", b_n),
            ("A_n", big_a),
            ("B_n", big_b),
        ],
    })
}

/// Warning text when `p/n` is close to 0 or 1, where the Gumbel limit
/// is not expected to be accurate.
pub fn truncated_ratio_warning(n: u64, p: u64) -> Option<String> {
    let ratio = p as f64 / n as f64;
    (!(0.05..=0.95).contains(&ratio)).then(|| {
        format!("p/n = {ratio} is outside [0.05, 0.95]; the Gumbel approximation may be poor")
    })
}

fn small_k_constants(n: f64, k: f64) -> (f64, f64) {
    let y = n / k;
    let l = y.ln();
    let alpha_n = 2.0 * (y * l).sqrt();
    let beta_n = l - l.ln() - 0.5 * (2.0 * PI).ln();
    (alpha_n, beta_n)
}

/// Norming of the product-ensemble log-radius `L`.
///
/// * `SmallK`: `α_n (exp(L - (k/2) ln n) - 1) - β_n` with
///   `α_n = 2 ((n/k) ln(n/k))^{1/2}` and
///   `β_n = ln(n/k) - ln ln(n/k) - (1/2) ln(2π)`.
/// * `ProportionalK`: `exp(L - (k/2) ln n)`.
/// * `LargeK`: `(L - k ψ(n)/2) / (sqrt(k/n)/2)`.
pub fn product_norming(n: u64, k: u64, regime: ProductRegime) -> Result<NormingConstants> {
    if n < 1 || k < 1 {
        return Err(Error::domain(
            "product_norming",
            format!("requires n, k >= 1, got n={n}, k={k}"),
        ));
    }
    let (nf, kf) = (n as f64, k as f64);
    let log_offset = 0.5 * kf * nf.ln();
    match regime {
        ProductRegime::SmallK => {
            if !(nf / kf > std::f64::consts::E) {
                return Err(Error::domain(
                    "product_norming",
                    format!("small-k regime requires n/k > e, got n={n}, k={k}"),
                ));
            }
            let (alpha_n, beta_n) = small_k_constants(nf, kf);
            Ok(NormingConstants {
                pre_transform: PreTransform::LogSpace { log_offset },
                shift: 1.0 + beta_n / alpha_n,
                scale: 1.0 / alpha_n,
                aux: vec![
                    ("alpha_n", alpha_n),
                    ("beta_n", beta_n),
                    ("log_offset", log_offset),
                ],
            })
        }
        ProductRegime::ProportionalK { alpha } => {
            if !(alpha > 0.0 && alpha.is_finite()) {
                return Err(Error::domain(
                    "product_norming",
                    format!("proportional regime requires finite alpha > 0, got {alpha}"),
                ));
            }
            Ok(NormingConstants {
                pre_transform: PreTransform::LogSpace { log_offset },
                shift: 0.0,
                scale: 1.0,
                aux: vec![("alpha", alpha), ("log_offset", log_offset)],
            })
        }
        ProductRegime::LargeK => {
            let psi_n = digamma(nf)?;
            let center = 0.5 * kf * psi_n;
            let scale = 0.5 * (kf / nf).sqrt();
            Ok(NormingConstants {
                pre_transform: PreTransform::Identity,
                shift: center,
                scale,
                aux: vec![("psi_n", psi_n), ("center", center)],
            })
        }
    }
}
