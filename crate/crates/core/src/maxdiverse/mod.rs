//! Searching for the most diverse domain of a given size: random (IC)
//! domains, simulated annealing, threshold-IC, exact k-median for tiny
//! instances with an LP export for external solvers, and the
//! farthest-permutation / Kemeny 1-center radii.

mod anneal;
mod kmedian;

pub use anneal::{anneal, simulated_annealing, AnnealOutcome, AnnealingParams, MAX_EXACT_ENERGY_M, POOL_SIZE};
pub use kmedian::{exact_kmedian, export_kmedian_lp, kmedian_lp, write_kmedian_lp, MAX_KMEDIAN_SUBSETS, MAX_LP_M};

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::ranking::{enumerate_all, factorial, max_distance, Ranking};

pub const DEFAULT_THRESHOLD_BUDGET: usize = 10_000;

pub const SIZES_HEADER: &str = "method,m,size_or_t,outdiv,std";

/// Swap distance from the ranking with position vector `pos` to `w`,
/// counting for each candidate of `w` the earlier ones placed after it in
/// `pos`. Linear with a position bitmask for `m <= 64`.
pub(crate) fn pair_distance(pos: &[usize], w: &[usize]) -> usize {
    if w.len() > 64 {
        return crate::ranking::distance_from_positions(pos, w);
    }
    let mut seen = 0u64;
    let mut d = 0;
    for &c in w {
        let p = pos[c];
        d += (seen >> p).count_ones() as usize;
        seen |= 1 << p;
    }
    d
}

/// Whether `k` rankings of `m` candidates can be distinct.
pub(crate) fn check_size(m: usize, k: usize) -> Result<()> {
    if m == 0 || k == 0 {
        return Err(Error::Argument(format!("need m >= 1 and k >= 1, got m={m}, k={k}")));
    }
    // factorial(34) still fits in u128
    if m < 34 && k as u128 > factorial(m) {
        return Err(Error::Argument(format!("k={k} exceeds {m}! rankings")));
    }
    Ok(())
}

/// `k` distinct rankings drawn uniformly at random (impartial culture).
/// When `k = m!` the whole space is returned in lexicographic order.
pub fn ic_domain(m: usize, k: usize, seed: u64) -> Result<Vec<Ranking>> {
    check_size(m, k)?;
    if m < 34 && k as u128 == factorial(m) {
        return Ok(enumerate_all(m)?.collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(k);
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let v = Ranking::random(m, &mut rng);
        if seen.insert(v.clone()) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Greedy filter over `budget` uniform samples: a sample is kept when its
/// distance to every kept ranking is at least `t`. Repeats are never kept,
/// so `t = 0` behaves like `t = 1`.
pub fn threshold_ic(m: usize, t: usize, seed: u64, budget: usize) -> Result<Vec<Ranking>> {
    if m == 0 {
        return Err(Error::Argument("threshold_ic needs m >= 1".into()));
    }
    let t = t.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kept: Vec<Ranking> = Vec::new();
    for _ in 0..budget {
        let v = Ranking::random(m, &mut rng);
        let pos = v.positions();
        if kept.iter().all(|u| pair_distance(&pos, u.as_slice()) >= t) {
            kept.push(v);
        }
    }
    Ok(kept)
}

fn nearest_distance(members: &[Ranking], x: &Ranking) -> Result<usize> {
    let Some(first) = members.first() else {
        return Err(Error::Argument("domain is empty".into()));
    };
    check_dim(first.len(), x.len())?;
    let pos = x.positions();
    members
        .iter()
        .map(|u| {
            check_dim(x.len(), u.len())?;
            Ok(pair_distance(&pos, u.as_slice()))
        })
        .try_fold(usize::MAX, |best, d: Result<usize>| Ok(best.min(d?)))
}

/// Farthest-permutation radius of `x`: its distance to the domain minus one,
/// so `-1` exactly when `x` is a member.
pub fn fp_radius(members: &[Ranking], x: &Ranking) -> Result<i64> {
    Ok(nearest_distance(members, x)? as i64 - 1)
}

/// Kemeny 1-center radius of `x`: its largest distance to a member.
pub fn k1c_radius(members: &[Ranking], x: &Ranking) -> Result<usize> {
    let Some(first) = members.first() else {
        return Err(Error::Argument("domain is empty".into()));
    };
    check_dim(first.len(), x.len())?;
    let pos = x.positions();
    let mut best = 0;
    for u in members {
        check_dim(x.len(), u.len())?;
        best = best.max(pair_distance(&pos, u.as_slice()));
    }
    Ok(best)
}

/// `C(m, 2) - 1`, the constant sum of the two radii at `x` and `reverse(x)`.
pub fn duality_constant(m: usize) -> i64 {
    max_distance(m) as i64 - 1
}

/// One point of a size-versus-diversity sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizePoint {
    pub method: String,
    pub m: usize,
    /// Domain size; threshold rows carry the size the threshold produced.
    pub size_or_t: f64,
    pub outdiv: f64,
    pub std: Option<f64>,
}

impl SizePoint {
    pub fn to_csv(&self) -> String {
        let size = if self.size_or_t.fract() == 0.0 {
            format!("{}", self.size_or_t as u64)
        } else {
            format!("{:.6}", self.size_or_t)
        };
        format!(
            "{},{},{},{:.6},{}",
            self.method,
            self.m,
            size,
            self.outdiv,
            self.std.map(|s| format!("{s:.6}")).unwrap_or_default()
        )
    }
}

pub fn sizes_csv(points: &[SizePoint]) -> String {
    let mut out = format!("{SIZES_HEADER}\n");
    for p in points {
        let _ = writeln!(out, "{}", p.to_csv());
    }
    out
}
