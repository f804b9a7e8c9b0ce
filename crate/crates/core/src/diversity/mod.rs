//! Outer diversity: exact layering of the ranking space, sampling
//! estimates, direct neighbourhoods and popularity.

mod exact;
mod export;
mod popularity;
mod sampled;

pub use exact::{
    direct_neighborhood, distance_histogram, exact_outdiv, neighborhood_profile, NeighborhoodProfile,
    MAX_EXACT_M,
};
pub use export::{distance_matrix_csv, layers_csv, popularity_csv, TableRow, TABLE_HEADER};
pub use popularity::{popularity, PopularityEntry, PopularityTable, MAX_POPULARITY_M};
pub use sampled::{sampled_outdiv, sampled_outdiv_with, DEFAULT_REPS, DEFAULT_SAMPLES};

use serde::Serialize;

/// Sampling statistics behind an estimated report.
///
/// Each repetition estimates ansd, the mean normalized distance of `n`
/// uniform rankings. The out-div scale is twice as wide: see
/// [`SampleStats::outdiv_std`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleStats {
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    /// ansd estimate of each repetition.
    pub estimates: Vec<f64>,
    pub mean: f64,
    /// Sample standard deviation of `estimates`.
    pub std: f64,
}

impl SampleStats {
    /// Standard deviation of the per-repetition out-div estimates.
    pub fn outdiv_std(&self) -> f64 {
        2.0 * self.std
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiversityReport {
    pub m: usize,
    /// Domain size, when known.
    pub size: Option<usize>,
    pub ansd: f64,
    pub out_div: f64,
    /// `sum_i i * |D_i|`; divide by `m! * C(m, 2)` for the exact ansd.
    pub ansd_numerator: Option<u64>,
    /// `|D_0|, |D_1|, ...` (exact mode).
    pub layers: Option<Vec<u64>>,
    pub samples: Option<SampleStats>,
}

pub(crate) fn sample_std(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
    var.sqrt()
}
