use super::DistanceOracle;
use crate::error::{check_dim, Result};
use crate::ranking::Ranking;

/// Distance from `v` to the single-peaked domain on `axis`, `O(m^2)`.
///
/// `A[l][r]` is the best distance over rankings whose bottom `l + r`
/// positions hold the first `l` and last `r` axis candidates, with every
/// longer prefix an interval. `L[i][j]` counts the candidates of
/// `c_i..c_j` ranked below `c_i`, `R[j][i]` those of `c_j..c_i` ranked
/// below `c_i` (1-based axis indices).
pub fn dist_sp(v: &Ranking, axis: &Ranking) -> Result<usize> {
    check_dim(axis.len(), v.len())?;
    let m = v.len();
    let pos = v.positions();
    // c(i) is the i-th axis candidate, 1-based
    let c = |i: usize| axis.as_slice()[i - 1];
    let w = m + 2;
    let mut l = vec![0u32; w * w];
    let mut r = vec![0u32; w * w];
    for i in 1..=m {
        for j in i + 1..=m {
            l[i * w + j] = l[i * w + j - 1] + (pos[c(i)] < pos[c(j)]) as u32;
        }
        for j in (1..i).rev() {
            r[j * w + i] = r[(j + 1) * w + i] + (pos[c(i)] < pos[c(j)]) as u32;
        }
    }
    let mut a = vec![0u32; (m + 1) * (m + 1)];
    let at = |ll: usize, rr: usize| ll * (m + 1) + rr;
    for ll in 1..m {
        a[at(ll, 0)] = a[at(ll - 1, 0)] + l[ll * w + m];
    }
    for rr in 1..m {
        a[at(0, rr)] = a[at(0, rr - 1)] + r[w + m + 1 - rr];
        for ll in 1..m - rr {
            a[at(ll, rr)] = (a[at(ll - 1, rr)] + l[ll * w + m - rr])
                .min(a[at(ll, rr - 1)] + r[(ll + 1) * w + m + 1 - rr]);
        }
    }
    Ok((1..=m).map(|ll| a[at(ll - 1, m - ll)]).min().unwrap_or(0) as usize)
}

#[derive(Debug, Clone)]
pub struct SpOracle {
    axis: Ranking,
}

impl SpOracle {
    pub fn new(axis: Ranking) -> Self {
        SpOracle { axis }
    }
}

impl DistanceOracle for SpOracle {
    fn num_candidates(&self) -> usize {
        self.axis.len()
    }

    fn distance(&self, v: &Ranking) -> Result<usize> {
        dist_sp(v, &self.axis)
    }
}
