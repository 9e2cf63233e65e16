//! Special functions at representative arguments.
//!
//! cargo run --example special_functions

use specrad::specfun::{
    digamma, log_gamma, log_std_normal_cdf, poisson_cdf, reg_inc_beta, reg_inc_gamma_lower,
    reg_inc_gamma_upper, std_normal_sf, trigamma,
};

fn main() -> specrad::Result<()> {
    println!(
        "{:>10} {:>24} {:>24} {:>24}",
        "x", "ln Γ(x)", "ψ(x)", "ψ'(x)"
    );
    for x in [0.001, 0.5, 1.0, 3.7, 50.0, 1e8] {
        println!(
            "{x:>10} {:>24.16e} {:>24.16e} {:>24.16e}",
            log_gamma(x)?,
            digamma(x)?,
            trigamma(x)?
        );
    }

    println!("\n{:>8} {:>8} {:>24} {:>24}", "a", "x", "P(a,x)", "Q(a,x)");
    for (a, x) in [(1.0, 1.0), (5.0, 5.0), (100.0, 80.0), (1e6, 1e6)] {
        println!(
            "{a:>8} {x:>8} {:>24.16e} {:>24.16e}",
            reg_inc_gamma_lower(a, x)?,
            reg_inc_gamma_upper(a, x)?
        );
    }

    println!("\nPoisson cdf H_k(tau) = P(Poisson(tau) < k)");
    for k in [1u64, 5, 30] {
        println!("  H_{k}(10) = {:.16e}", poisson_cdf(k, 10.0)?);
    }

    println!("\n{:>6} {:>6} {:>6} {:>24}", "x", "a", "b", "I_x(a,b)");
    for (x, a, b) in [(0.5, 1.0, 1.0), (0.3, 2.0, 5.0), (0.7, 300.0, 120.0)] {
        println!("{x:>6} {a:>6} {b:>6} {:>24.16e}", reg_inc_beta(x, a, b)?);
    }

    println!("\nnormal tails");
    for x in [5.0, 10.0, 20.0, 37.0] {
        println!(
            "  1 - Φ({x}) = {:.16e}   ln Φ(-{x}) = {:.16e}",
            std_normal_sf(x),
            log_std_normal_cdf(-x)
        );
    }
    Ok(())
}
