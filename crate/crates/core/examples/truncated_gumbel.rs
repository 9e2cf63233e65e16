//! Truncated unitary ensemble: norming constants and distance to the Gumbel law.
//!
//! cargo run --release --example truncated_gumbel

use specrad::exact_cdf::{normalized_distance, reference_grid};
use specrad::limit_laws::LimitLaw;
use specrad::norming::{truncated_norming, EnsembleSpec};
use specrad::samplers::run_monte_carlo;
use specrad::stats::ks_against_law;

fn main() -> specrad::Result<()> {
    let law = LimitLaw::Gumbel;
    let grid = reference_grid(law, 200)?;
    println!(
        "{:>7} {:>7} {:>12} {:>12} {:>12} {:>12}",
        "n", "p", "c_n", "A_n", "B_n", "sup dist"
    );
    for n in [200u64, 2000, 20_000, 200_000] {
        let p = n / 2;
        let spec = EnsembleSpec::truncated(n, p)?;
        let c = truncated_norming(n, p)?;
        let (d, _) = normalized_distance(&spec, &c, law, &grid)?;
        println!(
            "{n:>7} {p:>7} {:>12.8} {:>12.8} {:>12.4e} {:>12.5}",
            c.aux("c_n").unwrap_or(f64::NAN),
            c.shift,
            c.scale,
            d
        );
    }

    let spec = EnsembleSpec::truncated(2000, 1000)?;
    let batch = run_monte_carlo(spec, 20_000, 7, 1)?;
    let ks = ks_against_law(&batch, law)?;
    println!(
        "\nMonte Carlo {spec}: KS = {:.5} (5% critical value {:.5})",
        ks.statistic, ks.critical_005
    );
    Ok(())
}
