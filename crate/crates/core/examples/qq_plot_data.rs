//! Plot-ready QQ points of a normalized batch against its limit law, as CSV.
//!
//! cargo run --release --example qq_plot_data > qq.csv

use specrad::norming::{default_law, EnsembleSpec};
use specrad::samplers::run_monte_carlo;
use specrad::stats::{normalized_statistics, qq_points};

fn main() -> specrad::Result<()> {
    println!("ensemble,law,theoretical,empirical");
    let specs = [
        EnsembleSpec::spherical(500)?,
        EnsembleSpec::truncated(1000, 500)?,
        EnsembleSpec::product(100, 100)?,
    ];
    for spec in specs {
        let law = default_law(&spec);
        let batch = run_monte_carlo(spec, 10_000, 5, 1)?;
        let z = normalized_statistics(&batch, law)?;
        for (theory, empirical) in qq_points(&z, law, 99)? {
            println!("\"{spec}\",{},{theory},{empirical}", law.name());
        }
    }
    Ok(())
}
