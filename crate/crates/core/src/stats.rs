//! Empirical distribution functions and one-sample Kolmogorov–Smirnov reports.

use crate::limit_laws::{quantile, LimitLaw, DEFAULT_CDF_TOL};
use crate::norming::{regime_for_law, EnsembleSpec, NormingConstants};
use crate::samplers::{run_monte_carlo_with_budget, SampleBatch, DEFAULT_WORK_BUDGET};
use crate::{Error, Result};

/// Largest decrease of a reference cdf tolerated between order statistics.
const MONOTONE_SLACK: f64 = 1e-12;

/// Right-continuous empirical cdf of a sample.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn from_values(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyBatch);
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::Validation("sample contains NaN".into()));
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        Ok(Self { sorted })
    }

    /// Fraction of the sample `<= x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v <= x) as f64 / self.sorted.len() as f64
    }

    /// Smallest sample value whose empirical cdf is `>= level`.
    pub fn quantile(&self, level: f64) -> Result<f64> {
        if !(level > 0.0 && level <= 1.0) {
            return Err(Error::Validation(format!(
                "quantile level must lie in (0, 1], got {level}"
            )));
        }
        let n = self.sorted.len();
        let rank = ((level * n as f64).ceil() as usize).clamp(1, n);
        Ok(self.sorted[rank - 1])
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }
}

pub fn empirical_cdf(batch: &SampleBatch) -> Result<EmpiricalCdf> {
    EmpiricalCdf::from_values(&batch.statistics)
}

#[derive(Debug, Clone, PartialEq)]
pub struct KsReport {
    /// `sup_x |F_N(x) - F(x)|`
    pub statistic: f64,
    /// Order statistic at which the supremum is attained.
    pub location: f64,
    pub reps: usize,
    /// Asymptotic 5% critical value `1.358 / sqrt(reps)`.
    pub critical_005: f64,
    pub reference: String,
}

/// One-sample two-sided KS statistic of `values` against `reference`.
pub fn ks_statistic_values<F>(values: &[f64], mut reference: F, label: &str) -> Result<KsReport>
where
    F: FnMut(f64) -> Result<f64>,
{
    let ecdf = EmpiricalCdf::from_values(values)?;
    let n = ecdf.len() as f64;
    let mut statistic = -1.0;
    let mut location = f64::NAN;
    let mut previous: Option<(f64, f64)> = None;
    for (i, &x) in ecdf.sorted().iter().enumerate() {
        let f = reference(x)?;
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::Validation(format!(
                "reference cdf returned {f} at {x}"
            )));
        }
        if let Some((left, f_left)) = previous {
            if f_left - f > MONOTONE_SLACK {
                return Err(Error::NonMonotoneReference {
                    left,
                    right: x,
                    drop: f_left - f,
                });
            }
        }
        previous = Some((x, f));
        let above = (i + 1) as f64 / n - f;
        let below = f - i as f64 / n;
        let d = above.max(below);
        if d > statistic {
            statistic = d;
            location = x;
        }
    }
    Ok(KsReport {
        statistic: statistic.clamp(0.0, 1.0),
        location,
        reps: values.len(),
        critical_005: 1.358 / n.sqrt(),
        reference: label.to_string(),
    })
}

/// KS statistic of a batch's raw statistics against `reference`.
pub fn ks_statistic<F>(batch: &SampleBatch, reference: F, label: &str) -> Result<KsReport>
where
    F: FnMut(f64) -> Result<f64>,
{
    ks_statistic_values(&batch.statistics, reference, label)
}

/// Normalizes every statistic of `batch` with the constants that target `law`.
pub fn normalized_statistics(batch: &SampleBatch, law: LimitLaw) -> Result<Vec<f64>> {
    let regime = regime_for_law(&batch.spec, law)?;
    let constants = NormingConstants::for_spec(&batch.spec, regime)?;
    batch
        .statistics
        .iter()
        .map(|&raw| constants.normalize(raw))
        .collect()
}

/// KS statistic of a normalized batch against its limit law.
pub fn ks_against_law(batch: &SampleBatch, law: LimitLaw) -> Result<KsReport> {
    let normalized = normalized_statistics(batch, law)?;
    ks_statistic_values(
        &normalized,
        |x| law.cdf(x, DEFAULT_CDF_TOL),
        &law.to_string(),
    )
}

/// Samples `spec` and reports the KS distance of the normalized batch to `law`.
pub fn normalized_ks(
    spec: EnsembleSpec,
    law: LimitLaw,
    reps: usize,
    seed: u64,
    workers: usize,
    budget: u64,
) -> Result<KsReport> {
    regime_for_law(&spec, law)?;
    let batch = run_monte_carlo_with_budget(spec, reps, seed, workers, budget)?;
    ks_against_law(&batch, law)
}

/// [`convergence_table_with_budget`] with the default work budget.
pub fn convergence_table(
    specs: &[EnsembleSpec],
    law: LimitLaw,
    reps: usize,
    seed: u64,
    workers: usize,
) -> Result<Vec<(EnsembleSpec, KsReport)>> {
    convergence_table_with_budget(specs, law, reps, seed, workers, DEFAULT_WORK_BUDGET)
}

/// One KS report per spec, in the order given; every spec uses `seed`.
pub fn convergence_table_with_budget(
    specs: &[EnsembleSpec],
    law: LimitLaw,
    reps: usize,
    seed: u64,
    workers: usize,
    budget: u64,
) -> Result<Vec<(EnsembleSpec, KsReport)>> {
    if let Some(first) = specs.first() {
        if let Some(other) = specs.iter().find(|s| s.family() != first.family()) {
            return Err(Error::Validation(format!(
                "convergence table mixes {} and {} ensembles",
                first.family(),
                other.family()
            )));
        }
    }
    specs
        .iter()
        .map(|&spec| Ok((spec, normalized_ks(spec, law, reps, seed, workers, budget)?)))
        .collect()
}

/// Pairs `(law quantile, sample quantile)` at levels `(i - 1/2)/count`, `i = 1..=count`.
pub fn qq_points(values: &[f64], law: LimitLaw, count: usize) -> Result<Vec<(f64, f64)>> {
    let ecdf = EmpiricalCdf::from_values(values)?;
    if count == 0 || count > ecdf.len() {
        return Err(Error::Validation(format!(
            "qq count must lie in [1, {}], got {count}",
            ecdf.len()
        )));
    }
    (1..=count)
        .map(|i| {
            let level = (i as f64 - 0.5) / count as f64;
            Ok((quantile(law, level, 1e-10)?, ecdf.quantile(level)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit_laws::sample_limit;
    use crate::rng::RandomStream;

    fn ok(f: impl Fn(f64) -> f64) -> impl FnMut(f64) -> Result<f64> {
        move |x| Ok(f(x))
    }

    #[test]
    fn ecdf_counts() {
        let e = EmpiricalCdf::from_values(&[3.0, 1.0, 2.0]).unwrap();
        assert_eq!(e.eval(2.0), 2.0 / 3.0);
        assert_eq!(e.eval(0.5), 0.0);
        assert_eq!(e.eval(3.0), 1.0);
        assert_eq!(e.eval(f64::INFINITY), 1.0);
        assert_eq!(e.eval(f64::NEG_INFINITY), 0.0);
        assert!(matches!(
            EmpiricalCdf::from_values(&[]),
            Err(Error::EmptyBatch)
        ));
    }

    #[test]
    fn ecdf_quantiles() {
        let e = EmpiricalCdf::from_values(&[4.0, 1.0, 3.0, 2.0]).unwrap();
        assert_eq!(e.quantile(0.25).unwrap(), 1.0);
        assert_eq!(e.quantile(0.26).unwrap(), 2.0);
        assert_eq!(e.quantile(1.0).unwrap(), 4.0);
        assert!(e.quantile(0.0).is_err());
    }

    #[test]
    fn exact_quantiles_give_half_step() {
        let n = 500;
        let values: Vec<f64> = (1..=n).map(|i| (i as f64 - 0.5) / n as f64).collect();
        let r = ks_statistic_values(&values, ok(|x| x), "uniform").unwrap();
        assert!((r.statistic - 0.5 / n as f64).abs() < 1e-15);
        assert!((r.critical_005 - 1.358 / (n as f64).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn degenerate_batch() {
        let f = |x: f64| 1.0 / (1.0 + (-x).exp());
        for c in [-1.0, 0.0, 2.0] {
            let r = ks_statistic_values(&[c; 10], ok(f), "logistic").unwrap();
            assert!((r.statistic - f(c).max(1.0 - f(c))).abs() < 1e-15);
        }
    }

    #[test]
    fn uniform_null_rate() {
        let n = 1000;
        let mut inside = 0;
        for trial in 0..200 {
            let mut rng = RandomStream::new(2024, trial);
            let values: Vec<f64> = (0..n).map(|_| rng.uniform()).collect();
            let r = ks_statistic_values(&values, ok(|x| x), "uniform").unwrap();
            if r.statistic < 1.63 / (n as f64).sqrt() {
                inside += 1;
            }
        }
        assert!(inside >= 198, "{inside}");
    }

    #[test]
    fn decreasing_reference_rejected() {
        let err = ks_statistic_values(&[0.1, 0.2, 0.3], ok(|x| 1.0 - x), "bad").unwrap_err();
        assert!(matches!(err, Error::NonMonotoneReference { .. }));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn monotone_transform_invariance() {
        let batch =
            crate::samplers::run_monte_carlo(EnsembleSpec::product(5, 3).unwrap(), 2000, 9, 1)
                .unwrap();
        let logistic = |x: f64| 1.0 / (1.0 + (-(x - 2.0)).exp());
        let on_log = ks_statistic(&batch, ok(logistic), "log").unwrap();
        let radii: Vec<f64> = batch.statistics.iter().map(|l| l.exp()).collect();
        let on_radius =
            ks_statistic_values(&radii, ok(|r: f64| logistic(r.ln())), "radius").unwrap();
        assert!((on_log.statistic - on_radius.statistic).abs() < 1e-12);
    }

    #[test]
    fn table_rows_follow_input_and_repeat() {
        let specs = [
            EnsembleSpec::spherical(30).unwrap(),
            EnsembleSpec::spherical(10).unwrap(),
        ];
        let a = convergence_table(&specs, LimitLaw::SphericalH, 500, 3, 1).unwrap();
        let b = convergence_table(&specs, LimitLaw::SphericalH, 500, 3, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a[0].0, specs[0]);
        let single = convergence_table(&specs[..1], LimitLaw::SphericalH, 500, 3, 1).unwrap();
        let batch = crate::samplers::run_monte_carlo(specs[0], 500, 3, 1).unwrap();
        let direct = ks_against_law(&batch, LimitLaw::SphericalH).unwrap();
        assert_eq!(single[0].1, direct);
    }

    #[test]
    fn table_rejects_mixed_families() {
        let specs = [
            EnsembleSpec::spherical(30).unwrap(),
            EnsembleSpec::truncated(10, 5).unwrap(),
        ];
        assert!(convergence_table(&specs, LimitLaw::SphericalH, 10, 3, 1).is_err());
    }

    #[test]
    fn qq_self_consistency() {
        let law = LimitLaw::Gumbel;
        let mut rng = RandomStream::new(77, 0);
        let values: Vec<f64> = (0..100_000)
            .map(|_| sample_limit(law, &mut rng).unwrap())
            .collect();
        let points = qq_points(&values, law, 9).unwrap();
        for (theory, empirical) in &points {
            assert!((theory - empirical).abs() < 0.1);
        }
        assert!(points
            .windows(2)
            .all(|w| w[0].0 <= w[1].0 && w[0].1 <= w[1].1));
        let median = qq_points(&values, law, 1).unwrap();
        assert_eq!(median.len(), 1);
        assert!((median[0].0 + (2f64.ln()).ln()).abs() < 1e-9);
        assert!(qq_points(&values[..5], law, 6).is_err());
    }
}
