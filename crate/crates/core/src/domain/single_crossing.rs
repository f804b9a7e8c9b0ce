//! Random single-crossing sequences built by swapping adjacent pairs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ranking::Ranking;

/// Generates `v_0, ..., v_{m(m-1)/2}` starting from the identity ranking.
///
/// Each step swaps a uniformly chosen adjacent pair that has not been swapped
/// before. Starting from the identity, a pair is still unswapped exactly when
/// its smaller candidate is ranked first, so the sequence ends at the reverse.
pub fn single_crossing_sequence(m: usize, seed: u64) -> Result<Vec<Ranking>> {
    if m < 2 {
        return Err(Error::Argument(format!("SC sampler needs m >= 2, got {m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current: Vec<usize> = (0..m).collect();
    let steps = m * (m - 1) / 2;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(Ranking::from_vec_unchecked(current.clone()));
    let mut swappable = Vec::with_capacity(m);
    for _ in 0..steps {
        swappable.clear();
        swappable.extend((0..m - 1).filter(|&i| current[i] < current[i + 1]));
        let i = swappable[rng.random_range(0..swappable.len())];
        current.swap(i, i + 1);
        out.push(Ranking::from_vec_unchecked(current.clone()));
    }
    Ok(out)
}
