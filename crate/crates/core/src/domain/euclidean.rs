//! Euclidean domains: rankings induced by distances from voter points to
//! fixed candidate points in `R^d`.

use std::collections::{HashSet, VecDeque};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::lp::{max_margin, HalfSpace};
use crate::error::{Error, Result};
use crate::ranking::Ranking;

/// Half-width of the box the feasibility LP searches for a voter point.
///
/// Cells of the bisector arrangement can sit far from the candidates when
/// two bisectors are nearly parallel, so the box is much wider than `[-1, 1]^d`.
pub const VOTER_BOX: f64 = 1e5;
/// A ranking is realizable when its best margin exceeds this.
pub const FEASIBLE_EPS: f64 = 1e-9;
/// Accepted rankings with a smaller margin flag a non-generic point set.
pub const DEGENERATE_EPS: f64 = 1e-7;
/// Voter points sampled per candidate to seed the enumeration.
pub const SEEDS_PER_CANDIDATE: usize = 200;
const MARGIN_CAP: f64 = 1.0;
const MAX_RESAMPLES: usize = 100;

/// Candidate positions in `R^d`, `d` in `1..=3`.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidatePoints {
    dim: usize,
    coords: Vec<Vec<f64>>,
}

impl CandidatePoints {
    pub fn new(dim: usize, coords: Vec<Vec<f64>>) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::Validation(format!("Euclidean dimension must be 1..=3, got {dim}")));
        }
        if coords.is_empty() {
            return Err(Error::Validation("Euclidean domain needs candidates".into()));
        }
        if let Some(bad) = coords.iter().find(|p| p.len() != dim || p.iter().any(|x| !x.is_finite())) {
            return Err(Error::Validation(format!("bad candidate point {bad:?} for d = {dim}")));
        }
        Ok(CandidatePoints { dim, coords })
    }

    /// Uniform points in `[-1, 1]^d`.
    pub fn uniform<R: Rng + ?Sized>(m: usize, dim: usize, rng: &mut R) -> Result<Self> {
        let coords = (0..m)
            .map(|_| (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect())
            .collect();
        CandidatePoints::new(dim, coords)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_candidates(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Vec<f64>] {
        &self.coords
    }

    fn has_duplicates(&self) -> bool {
        (0..self.coords.len()).any(|i| (0..i).any(|j| self.coords[i] == self.coords[j]))
    }

    /// The ranking of a voter at `voter` (ties broken by candidate index).
    pub fn ranking_at(&self, voter: &[f64]) -> Ranking {
        let dist: Vec<f64> = self
            .coords
            .iter()
            .map(|p| p.iter().zip(voter).map(|(a, b)| (a - b) * (a - b)).sum())
            .collect();
        let mut perm: Vec<usize> = (0..self.coords.len()).collect();
        perm.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)));
        Ranking::from_vec_unchecked(perm)
    }

    /// Largest margin by which some voter in the box realizes `v`.
    ///
    /// Consecutive pairs suffice: `a` is closer than `b` iff
    /// `2 (b - a) . x < |b|^2 - |a|^2`. Normals are scaled to unit length so
    /// the margin is a distance.
    pub fn margin(&self, v: &[usize]) -> f64 {
        let constraints: Vec<HalfSpace> = v
            .windows(2)
            .map(|w| {
                let (a, b) = (&self.coords[w[0]], &self.coords[w[1]]);
                let diff: Vec<f64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
                let norm = diff.iter().map(|x| x * x).sum::<f64>().sqrt();
                let sq = |p: &[f64]| p.iter().map(|x| x * x).sum::<f64>();
                HalfSpace {
                    normal: diff.iter().map(|x| 2.0 * x / (2.0 * norm)).collect(),
                    rhs: (sq(b) - sq(a)) / (2.0 * norm),
                }
            })
            .collect();
        max_margin(&constraints, self.dim, VOTER_BOX, MARGIN_CAP)
    }

    pub fn is_member(&self, v: &Ranking) -> bool {
        v.len() == self.coords.len() && self.margin(v.as_slice()) > FEASIBLE_EPS
    }

    /// Enumerates the domain: seed rankings from random voters, then BFS over
    /// adjacent transpositions keeping only realizable rankings. Returns the
    /// members in lexicographic order and the smallest accepted margin.
    pub fn enumerate(&self, seed: u64) -> (Vec<Ranking>, f64) {
        let m = self.coords.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_e0c1_1d00_0000);
        let mut members: HashSet<Ranking> = HashSet::new();
        let mut rejected: HashSet<Ranking> = HashSet::new();
        let mut queue = VecDeque::new();
        let mut min_margin = f64::INFINITY;
        let mut voter = vec![0.0; self.dim];
        for _ in 0..SEEDS_PER_CANDIDATE * m {
            voter.iter_mut().for_each(|x| *x = rng.random_range(-1.0..=1.0));
            let r = self.ranking_at(&voter);
            if members.contains(&r) || rejected.contains(&r) {
                continue;
            }
            let margin = self.margin(r.as_slice());
            if margin > FEASIBLE_EPS {
                min_margin = min_margin.min(margin);
                members.insert(r.clone());
                queue.push_back(r);
            } else {
                rejected.insert(r);
            }
        }
        while let Some(v) = queue.pop_front() {
            for i in 0..m.saturating_sub(1) {
                let u = v.swap_adjacent(i);
                if members.contains(&u) || rejected.contains(&u) {
                    continue;
                }
                let margin = self.margin(u.as_slice());
                if margin > FEASIBLE_EPS {
                    min_margin = min_margin.min(margin);
                    members.insert(u.clone());
                    queue.push_back(u);
                } else {
                    rejected.insert(u);
                }
            }
        }
        let mut out: Vec<Ranking> = members.into_iter().collect();
        out.sort();
        (out, min_margin)
    }
}

/// A sampled Euclidean domain: points plus its enumerated members.
#[derive(Debug, Clone)]
pub struct EuclideanDomain {
    pub points: CandidatePoints,
    pub members: Vec<Ranking>,
}

/// Draws `m` candidate points in `[-1, 1]^d` and enumerates their domain,
/// resampling non-generic configurations.
pub fn sample_euclidean(m: usize, dim: usize, seed: u64) -> Result<EuclideanDomain> {
    if m < 2 {
        return Err(Error::Argument(format!("Euclidean sampler needs m >= 2, got {m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RESAMPLES {
        let points = CandidatePoints::uniform(m, dim, &mut rng)?;
        if points.has_duplicates() {
            continue;
        }
        let (members, min_margin) = points.enumerate(rng.random());
        if min_margin < DEGENERATE_EPS {
            continue;
        }
        return Ok(EuclideanDomain { points, members });
    }
    Err(Error::Resource(format!(
        "no generic point set found after {MAX_RESAMPLES} attempts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ranking::enumerate_all;

    /// Unsigned Stirling numbers of the first kind, row `m`.
    fn stirling_row(m: usize) -> Vec<u64> {
        let mut row = vec![1u64];
        for n in 0..m {
            let mut next = vec![0u64; n + 2];
            for (k, &val) in row.iter().enumerate() {
                next[k] += n as u64 * val;
                next[k + 1] += val;
            }
            row = next;
        }
        row
    }

    /// Maximum number of rankings realizable by `m` points in general
    /// position in `R^d`: the sum of `c(m, m - j)` for `j = 0..=d`.
    fn generic_size(m: usize, d: usize) -> u64 {
        let row = stirling_row(m);
        (0..=d.min(m - 1)).map(|j| row[m - j]).sum()
    }

    #[test]
    fn generic_size_formula_matches_known_values() {
        assert_eq!(generic_size(8, 1), 29);
        assert_eq!(generic_size(8, 2), 351);
        assert_eq!(generic_size(8, 3), 2311);
    }

    #[test]
    fn one_dimensional_example() {
        let pts = CandidatePoints::new(1, vec![vec![-0.5], vec![0.1], vec![0.7]]).unwrap();
        assert!(pts.is_member(&"1 2 0".parse().unwrap()));
        assert!(pts.is_member(&"1 0 2".parse().unwrap()));
        assert!(!pts.is_member(&"0 2 1".parse().unwrap()));
        let (members, _) = pts.enumerate(0);
        assert_eq!(members.len(), 4);
    }

    #[test]
    fn small_domains_match_brute_force() {
        for (m, d) in [(3, 2), (4, 2), (5, 2), (4, 3), (5, 3), (6, 2), (6, 3), (6, 1)] {
            for seed in 0..3 {
                let dom = sample_euclidean(m, d, seed).unwrap();
                let filtered: Vec<_> = enumerate_all(m)
                    .unwrap()
                    .filter(|v| dom.points.is_member(v))
                    .collect();
                assert_eq!(dom.members, filtered, "m={m} d={d} seed={seed}");
            }
        }
    }

    #[test]
    fn sizes_are_generic_counts() {
        for (m, d) in [(8, 1), (8, 2), (8, 3), (7, 2), (10, 2)] {
            for seed in 0..10 {
                let dom = sample_euclidean(m, d, seed).unwrap();
                assert_eq!(dom.members.len() as u64, generic_size(m, d), "m={m} d={d} seed={seed}");
            }
        }
    }

    #[test]
    fn voter_rankings_are_members() {
        let dom = sample_euclidean(6, 2, 9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let x: Vec<f64> = (0..2).map(|_| rng.random_range(-3.0..3.0)).collect();
            assert!(dom.members.contains(&dom.points.ranking_at(&x)));
        }
    }

    #[test]
    fn rejects_bad_points() {
        assert!(CandidatePoints::new(4, vec![vec![0.0; 4]]).is_err());
        assert!(CandidatePoints::new(2, vec![vec![0.0]]).is_err());
        assert!(CandidatePoints::new(1, vec![vec![f64::NAN]]).is_err());
    }
}
