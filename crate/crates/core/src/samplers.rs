//! Exact samplers of the spectral-radius statistic.
//!
//! The eigenvalue moduli of all three ensembles are distributed as a set
//! of independent radial variables, so one replicate needs only `O(n)`
//! Gamma variates (`O(n k)` for the product ensemble) and no matrix.

use crate::norming::EnsembleSpec;
use crate::rng::RandomStream;
use crate::{Error, Result};
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;

/// Default cap on the number of Gamma variates one Monte Carlo run may draw.
pub const DEFAULT_WORK_BUDGET: u64 = 1_000_000_000;

/// Factors multiplied together before one logarithm is taken.
const PRODUCT_CHUNK: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    pub spec: EnsembleSpec,
    /// Radius per replicate; natural-log radius for the product ensemble.
    pub statistics: Vec<f64>,
    pub seed: u64,
    pub reps: usize,
}

impl SampleBatch {
    pub fn len(&self) -> usize {
        self.statistics.len()
    }

    pub fn is_empty(&self) -> bool {
        self.statistics.is_empty()
    }
}

/// One `Gamma(shape, 1)` variate.
pub fn sample_gamma(shape: f64, rng: &mut RandomStream) -> Result<f64> {
    let dist = gamma_dist(shape)?;
    Ok(dist.sample(rng))
}

fn gamma_dist(shape: f64) -> Result<Gamma<f64>> {
    if !(shape > 0.0 && shape.is_finite()) {
        return Err(Error::domain(
            "sample_gamma",
            format!("shape must be finite and > 0, got {shape}"),
        ));
    }
    Gamma::new(shape, 1.0).map_err(|e| Error::domain("sample_gamma", e.to_string()))
}

/// Gamma distributions with integer shapes `1..=len`, reused across replicates.
#[derive(Debug, Clone)]
struct GammaTable {
    dists: Vec<Gamma<f64>>,
}

impl GammaTable {
    fn new(len: u64) -> Self {
        let dists = (1..=len)
            .map(|j| Gamma::new(j as f64, 1.0).expect("positive integer shape"))
            .collect();
        Self { dists }
    }

    #[inline]
    fn sample(&self, shape: u64, rng: &mut RandomStream) -> f64 {
        self.dists[shape as usize - 1].sample(rng)
    }
}

/// Precomputed sampler for one ensemble.
#[derive(Debug, Clone)]
pub struct RadiusSampler {
    spec: EnsembleSpec,
    table: GammaTable,
    /// `Gamma(n - p)` for the truncated ensemble.
    complement: Option<Gamma<f64>>,
}

impl RadiusSampler {
    pub fn new(spec: EnsembleSpec) -> Result<Self> {
        spec.validate()?;
        let (table, complement) = match spec {
            EnsembleSpec::Spherical { n } => (GammaTable::new(n), None),
            EnsembleSpec::TruncatedUnitary { n, p } => {
                (GammaTable::new(p), Some(gamma_dist((n - p) as f64)?))
            }
            EnsembleSpec::GinibreProduct { n, .. } => (GammaTable::new(n), None),
        };
        Ok(Self {
            spec,
            table,
            complement,
        })
    }

    pub fn spec(&self) -> EnsembleSpec {
        self.spec
    }

    /// One raw statistic: radius, or log-radius for the product ensemble.
    pub fn sample(&self, rng: &mut RandomStream) -> f64 {
        match self.spec {
            EnsembleSpec::Spherical { n } => self.spherical(n, rng),
            EnsembleSpec::TruncatedUnitary { p, .. } => self.truncated(p, rng),
            EnsembleSpec::GinibreProduct { n, k } => self.product(n, k, rng),
        }
    }

    fn spherical(&self, n: u64, rng: &mut RandomStream) -> f64 {
        // |z_j|^2 = B/(1-B) with B ~ Beta(j, n-j+1), i.e. G1/G2
        let mut max_sq = 0.0f64;
        for j in 1..=n {
            let g1 = self.table.sample(j, rng);
            let g2 = self.table.sample(n - j + 1, rng);
            max_sq = max_sq.max(g1 / g2);
        }
        max_sq.sqrt()
    }

    fn truncated(&self, p: u64, rng: &mut RandomStream) -> f64 {
        let complement = self.complement.as_ref().expect("truncated sampler");
        let mut max_sq = 0.0f64;
        for j in 1..=p {
            let g1 = self.table.sample(j, rng);
            let g2 = complement.sample(rng);
            max_sq = max_sq.max(g1 / (g1 + g2));
        }
        max_sq.sqrt()
    }

    fn product(&self, n: u64, k: u64, rng: &mut RandomStream) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for j in 1..=n {
            let mut log_sum = 0.0;
            let mut remaining = k as usize;
            while remaining > 0 {
                let take = remaining.min(PRODUCT_CHUNK);
                let mut chunk = [0.0f64; PRODUCT_CHUNK];
                for slot in chunk.iter_mut().take(take) {
                    *slot = self.table.sample(j, rng);
                }
                let prod: f64 = chunk[..take].iter().product();
                log_sum += if prod.is_normal() {
                    prod.ln()
                } else {
                    chunk[..take].iter().map(|s| s.ln()).sum()
                };
                remaining -= take;
            }
            best = best.max(log_sum);
        }
        0.5 * best
    }
}

/// `max_j |z_j|` for the spherical ensemble of size `n`.
pub fn sample_spherical_radius(n: u64, rng: &mut RandomStream) -> Result<f64> {
    Ok(RadiusSampler::new(EnsembleSpec::spherical(n)?)?.sample(rng))
}

/// `max_j |z_j|` for the `p x p` truncation of an `n x n` Haar unitary.
pub fn sample_truncated_radius(n: u64, p: u64, rng: &mut RandomStream) -> Result<f64> {
    Ok(RadiusSampler::new(EnsembleSpec::truncated(n, p)?)?.sample(rng))
}

/// `ln max_j |z_j|` for the product of `k` Ginibre matrices of size `n`.
pub fn sample_product_log_radius(n: u64, k: u64, rng: &mut RandomStream) -> Result<f64> {
    Ok(RadiusSampler::new(EnsembleSpec::product(n, k)?)?.sample(rng))
}

/// [`run_monte_carlo_with_budget`] with [`DEFAULT_WORK_BUDGET`].
pub fn run_monte_carlo(
    spec: EnsembleSpec,
    reps: usize,
    master_seed: u64,
    workers: usize,
) -> Result<SampleBatch> {
    run_monte_carlo_with_budget(spec, reps, master_seed, workers, DEFAULT_WORK_BUDGET)
}

/// Draws `reps` replicates; replicate `i` uses `RandomStream(master_seed, i)`,
/// so the batch does not depend on `workers`.
pub fn run_monte_carlo_with_budget(
    spec: EnsembleSpec,
    reps: usize,
    master_seed: u64,
    workers: usize,
    budget: u64,
) -> Result<SampleBatch> {
    if reps == 0 {
        return Err(Error::Validation("reps must be >= 1".into()));
    }
    if workers == 0 {
        return Err(Error::Validation("workers must be >= 1".into()));
    }
    spec.validate()?;
    let requested = spec.draws_per_replicate() * reps as u128;
    if requested > budget as u128 {
        return Err(Error::WorkBudget { requested, budget });
    }
    let sampler = RadiusSampler::new(spec)?;
    let draw = |i: usize| sampler.sample(&mut RandomStream::new(master_seed, i as u64));
    let statistics: Vec<f64> = if workers == 1 {
        (0..reps).map(draw).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Validation(format!("cannot start worker pool: {e}")))?;
        pool.install(|| (0..reps).into_par_iter().map(draw).collect())
    };
    Ok(SampleBatch {
        spec,
        statistics,
        seed: master_seed,
        reps,
    })
}
