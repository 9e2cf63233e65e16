//! Exact cdf of the normalized spherical spectral radius against the limit law H.
//!
//! cargo run --release --example spherical_limit

use specrad::exact_cdf::{normalized_distance, reference_grid, spherical_exact_cdf};
use specrad::limit_laws::{spherical_h_cdf, LimitLaw, DEFAULT_CDF_TOL};
use specrad::norming::{EnsembleSpec, NormingConstants};

fn main() -> specrad::Result<()> {
    let sizes = [20u64, 200, 2000];
    print!("{:>6} {:>14}", "x", "H(x)");
    for n in sizes {
        print!(" {:>14}", format!("n={n}"));
    }
    println!();
    for x in [0.5, 0.8, 1.0, 1.5, 2.0, 4.0, 10.0] {
        let h = spherical_h_cdf(x, DEFAULT_CDF_TOL)?;
        print!("{x:>6} {:>14.10}", h.value);
        for n in sizes {
            print!(" {:>14.10}", spherical_exact_cdf(n, (n as f64).sqrt() * x)?);
        }
        println!();
    }

    let law = LimitLaw::SphericalH;
    let grid = reference_grid(law, 200)?;
    println!("\nsup distance over a 200-point grid");
    for n in sizes {
        let spec = EnsembleSpec::spherical(n)?;
        let constants = NormingConstants::for_spec(&spec, None)?;
        let (d, at) = normalized_distance(&spec, &constants, law, &grid)?;
        println!("  n = {n:>5}: {d:.3e} at x = {at:.4}");
    }
    Ok(())
}
