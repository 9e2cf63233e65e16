//! Real special functions: log-gamma, polygamma, the standard normal
//! distribution and the regularized incomplete gamma and beta functions.
//!
//! Every routine that can lose relative accuracy in a tail offers the
//! complementary value directly, so callers never have to form `1 - p`
//! for `p` near one.

mod beta;
mod gamma;
mod normal;

pub use beta::{inc_beta_pair, reg_inc_beta, reg_inc_beta_upper};
pub use gamma::{
    digamma, inc_gamma_pair, log_gamma, log_poisson_cdf, poisson_cdf, reg_inc_gamma_lower,
    reg_inc_gamma_upper, trigamma,
};
pub use normal::{log_std_normal_cdf, std_normal_cdf, std_normal_pdf, std_normal_sf};

pub(crate) use gamma::ln_gamma_unchecked;

/// Iteration controls for series and continued-fraction evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accuracy {
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Accuracy {
    pub const DEFAULT: Accuracy = Accuracy {
        abs_tol: f64::EPSILON,
        max_terms: 1_000_000,
    };

    pub fn new(abs_tol: f64, max_terms: usize) -> crate::Result<Self> {
        if !(abs_tol > 0.0) || max_terms == 0 {
            return Err(crate::Error::Validation(format!(
                "accuracy requires abs_tol > 0 and max_terms >= 1 (got {abs_tol}, {max_terms})"
            )));
        }
        Ok(Self { abs_tol, max_terms })
    }
}

impl Default for Accuracy {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// `ln(sqrt(2 pi))`
pub(crate) const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Tiny value guarding Lentz's continued-fraction recurrences.
pub(crate) const FPMIN: f64 = 1e-300;
