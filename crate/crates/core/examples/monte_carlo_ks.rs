//! Monte Carlo samplers checked against the exact finite-n cdfs.
//!
//! cargo run --release --example monte_carlo_ks -- [reps] [workers]

use specrad::exact_cdf::exact_cdf;
use specrad::norming::EnsembleSpec;
use specrad::samplers::run_monte_carlo;
use specrad::stats::ks_statistic;
use std::time::Instant;

fn main() -> specrad::Result<()> {
    let mut args = std::env::args().skip(1);
    let reps: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let workers: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let specs = [
        EnsembleSpec::spherical(50)?,
        EnsembleSpec::truncated(60, 30)?,
        EnsembleSpec::product(40, 1)?,
        EnsembleSpec::product(10, 2)?,
    ];
    println!(
        "{:>22} {:>10} {:>10} {:>10}",
        "ensemble", "KS", "5% crit", "seconds"
    );
    for spec in specs {
        let start = Instant::now();
        let batch = run_monte_carlo(spec, reps, 2024, workers)?;
        let log = spec.raw_is_log();
        let ks = ks_statistic(
            &batch,
            |v| exact_cdf(&spec, if log { v.exp() } else { v }),
            "exact",
        )?;
        println!(
            "{:>22} {:>10.5} {:>10.5} {:>10.2}",
            spec.to_string(),
            ks.statistic,
            ks.critical_005,
            start.elapsed().as_secs_f64()
        );
    }

    let spec = EnsembleSpec::spherical(1000)?;
    let one = run_monte_carlo(spec, 2000, 42, 1)?;
    let many = run_monte_carlo(spec, 2000, 42, 8)?;
    println!("\nbatch identical for 1 and 8 workers: {}", one == many);
    Ok(())
}
