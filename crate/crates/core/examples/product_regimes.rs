//! The three asymptotic regimes of the product of k Ginibre matrices.
//!
//! cargo run --release --example product_regimes

use specrad::norming::{default_regime, product_norming, EnsembleSpec};
use specrad::samplers::run_monte_carlo;
use specrad::stats::ks_against_law;

fn main() -> specrad::Result<()> {
    let reps = 10_000;
    println!(
        "{:>18} {:>16} {:>22} {:>10} {:>10}",
        "ensemble", "regime", "law", "KS", "5% crit"
    );
    for (n, k) in [(2000u64, 1u64), (1000, 5), (100, 100), (10, 5_000)] {
        let spec = EnsembleSpec::product(n, k)?;
        let regime = default_regime(n, k);
        let law = regime.limit_law();
        let batch = run_monte_carlo(spec, reps, 11, 1)?;
        let ks = ks_against_law(&batch, law)?;
        println!(
            "{:>18} {:>16} {:>22} {:>10.5} {:>10.5}",
            spec.to_string(),
            regime.name(),
            law.to_string(),
            ks.statistic,
            ks.critical_005
        );
    }

    println!("\nnorming constants");
    for (n, k) in [(2000u64, 1u64), (100, 100), (10, 5_000)] {
        let c = product_norming(n, k, default_regime(n, k))?;
        let aux: Vec<String> = c
            .aux
            .iter()
            .map(|(name, v)| format!("{name}={v:.6}"))
            .collect();
        println!("  product(n={n},k={k}): {}", aux.join(", "));
    }
    Ok(())
}
