use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{sample_std, DiversityReport, SampleStats};
use crate::distance::{oracle_for, DistanceOracle};
use crate::domain::DomainSpec;
use crate::error::{Error, Result};
use crate::ranking::{max_distance, Ranking};

pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_REPS: usize = 10;

/// Estimates outer diversity from `reps` independent batches of `n` uniform
/// rankings; batch `r` is drawn from seed `seed + r`.
pub fn sampled_outdiv_with(oracle: &dyn DistanceOracle, n: usize, reps: usize, seed: u64) -> Result<DiversityReport> {
    if n == 0 || reps == 0 {
        return Err(Error::Argument("sampling needs n >= 1 and reps >= 1".into()));
    }
    let m = oracle.num_candidates();
    let norm = max_distance(m).max(1) as f64;
    let mut estimates = Vec::with_capacity(reps);
    for rep in 0..reps {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(rep as u64));
        let mut total = 0u64;
        for _ in 0..n {
            total += oracle.distance(&Ranking::random(m, &mut rng))? as u64;
        }
        estimates.push(total as f64 / n as f64 / norm);
    }
    let ansd = estimates.iter().sum::<f64>() / reps as f64;
    Ok(DiversityReport {
        m,
        size: None,
        ansd,
        out_div: 1.0 - 2.0 * ansd,
        ansd_numerator: None,
        layers: None,
        samples: Some(SampleStats {
            n,
            reps,
            seed,
            std: sample_std(&estimates),
            estimates,
            mean: ansd,
        }),
    })
}

/// [`sampled_outdiv_with`] using the fastest oracle for `spec`.
pub fn sampled_outdiv(spec: &DomainSpec, n: usize, reps: usize, seed: u64) -> Result<DiversityReport> {
    let oracle = oracle_for(spec)?;
    let mut report = sampled_outdiv_with(oracle.as_ref(), n, reps, seed)?;
    report.size = spec.predicted_size().and_then(|s| usize::try_from(s).ok());
    Ok(report)
}
