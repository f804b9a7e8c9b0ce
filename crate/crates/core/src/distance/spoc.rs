use super::DistanceOracle;
use crate::error::{check_dim, Result};
use crate::ranking::Ranking;

/// Distance from `v` to the single-peaked-on-a-circle domain, `O(m^2)`.
///
/// Builds rankings top-down: `A[i][r]` is the best distance over rankings
/// whose top `r + 1` candidates are the arc `c_i..c_{i+r}` (indices mod `m`)
/// with every prefix an arc. `lc[i][j]` counts the candidates of
/// `c_i..c_{i+j}` preferred to `c_i`; `rc[i][j]` those of `c_{i-j}..c_{i-1}`.
pub fn dist_spoc(v: &Ranking, cycle: &Ranking) -> Result<usize> {
    check_dim(cycle.len(), v.len())?;
    let m = v.len();
    if m <= 2 {
        return Ok(0);
    }
    let pos = v.positions();
    let c = cycle.as_slice();
    let p = |i: usize| pos[c[i % m]];
    let mut lc = vec![0u32; m * m];
    let mut rc = vec![0u32; m * m];
    for i in 0..m {
        for j in 1..m {
            lc[i * m + j] = lc[i * m + j - 1] + (p(i + j) < p(i)) as u32;
            rc[i * m + j] = rc[i * m + j - 1] + (p(i + m - j) < p(i)) as u32;
        }
    }
    let mut a: Vec<u32> = (0..m).map(|i| p(i) as u32).collect();
    let mut next = vec![0u32; m];
    for r in 1..=m - 2 {
        for i in 0..m {
            // c_{i+r} joins at the bottom of arc c_i..c_{i+r-1}, or c_i below c_{i+1}..c_{i+r}
            let grow_right = a[i] + lc[((i + r) % m) * m + m - 1 - r];
            let grow_left = a[(i + 1) % m] + rc[i * m + m - 1 - r];
            next[i] = grow_right.min(grow_left);
        }
        std::mem::swap(&mut a, &mut next);
    }
    Ok(*a.iter().min().expect("m >= 3") as usize)
}

#[derive(Debug, Clone)]
pub struct SpocOracle {
    cycle: Ranking,
}

impl SpocOracle {
    pub fn new(cycle: Ranking) -> Self {
        SpocOracle { cycle }
    }
}

impl DistanceOracle for SpocOracle {
    fn num_candidates(&self) -> usize {
        self.cycle.len()
    }

    fn distance(&self, v: &Ranking) -> Result<usize> {
        dist_spoc(v, &self.cycle)
    }
}
