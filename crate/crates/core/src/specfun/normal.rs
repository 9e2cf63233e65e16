use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// `1/sqrt(2) - FRAC_1_SQRT_2`
const FRAC_1_SQRT_2_LO: f64 = -4.833_646_656_726_457e-17;
const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

pub fn std_normal_pdf(x: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Upper tail `1 - Φ(x)`, relatively accurate far into the right tail.
///
/// The rounding of `x/sqrt(2)` is amplified by `2 z^2` in `erfc(z)`; the
/// lost low part is restored with a first-order correction.
pub fn std_normal_sf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let z = x * FRAC_1_SQRT_2;
    if z < 0.5 {
        return 0.5 * libm::erfc(z);
    }
    let dz = x.mul_add(FRAC_1_SQRT_2, -z) + x * FRAC_1_SQRT_2_LO;
    // d/dz ln erfc(z) ≈ -(2z + 1/z)
    0.5 * libm::erfc(z) * (-(2.0 * z + 1.0 / z) * dz).exp()
}

/// `Φ(x)`, computed as an upper tail so the left tail stays accurate.
pub fn std_normal_cdf(x: f64) -> f64 {
    std_normal_sf(-x)
}

/// `ln Φ(x)` for all real `x`, including the far left tail where `Φ`
/// underflows.
pub fn log_std_normal_cdf(x: f64) -> f64 {
    if x > 0.0 {
        return (-std_normal_sf(x)).ln_1p();
    }
    if x > -37.0 {
        return std_normal_cdf(x).ln();
    }
    log_cdf_mills(x)
}

/// Mills-ratio expansion: `Φ(x) = φ(x)/|x| (1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8 - ...)`.
fn log_cdf_mills(x: f64) -> f64 {
    let r2 = 1.0 / (x * x);
    let series = 1.0 - r2 * (1.0 - r2 * (3.0 - r2 * (15.0 - r2 * 105.0)));
    -0.5 * x * x - (-x).ln() - 0.5 * (2.0 * PI).ln() + series.ln()
}
