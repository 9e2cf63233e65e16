//! Upper tails of the limit laws against their leading-order asymptotes.
//!
//! cargo run --example tail_asymptotics

use specrad::limit_laws::{quantile, tail_asymptote, LimitLaw};

fn main() -> specrad::Result<()> {
    let h = LimitLaw::SphericalH;
    println!("{:>8} {:>22} {:>14}", "x", "1 - H(x)", "x^2 (1 - H)");
    for x in [2.0, 5.0, 10.0, 30.0, 100.0] {
        let tail = h.upper_tail(x, 1e-15)?;
        println!("{x:>8} {tail:>22.15e} {:>14.10}", x * x * tail);
    }

    for alpha in [0.5, 1.0, 4.0] {
        let law = LimitLaw::ProductLaw { alpha };
        println!("\nproduct law alpha = {alpha}");
        println!(
            "{:>10} {:>14} {:>22} {:>10}",
            "tail mass", "x", "exact tail", "ratio"
        );
        for e in 2..=8 {
            let mass = 10f64.powi(-e);
            let x = quantile(law, 1.0 - mass, mass * 1e-4)?;
            let tail = law.upper_tail(x, 1e-15)?;
            println!(
                "{mass:>10.0e} {x:>14.8} {tail:>22.15e} {:>10.6}",
                tail / tail_asymptote(law, x)?
            );
        }
    }
    Ok(())
}
