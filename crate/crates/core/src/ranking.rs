//! Rankings (linear orders over candidates `0..m`) and the swap distance.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};

/// Largest `m` accepted by [`enumerate_all`].
pub const MAX_ENUMERATE_M: usize = 12;

/// A ranking of `m` candidates, most preferred first.
///
/// `perm[0]` is the top candidate. Candidates are the integers `0..m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Ranking(Vec<usize>);

impl Ranking {
    /// Validates that `perm` is a permutation of `0..perm.len()`.
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        if perm.is_empty() {
            return Err(Error::Validation("a ranking needs at least one candidate".into()));
        }
        let mut seen = vec![false; perm.len()];
        for &c in &perm {
            if c >= perm.len() {
                return Err(Error::Validation(format!(
                    "candidate {c} out of range for m = {}",
                    perm.len()
                )));
            }
            if std::mem::replace(&mut seen[c], true) {
                return Err(Error::Validation(format!("candidate {c} appears twice")));
            }
        }
        Ok(Ranking(perm))
    }

    /// Caller guarantees `perm` is a permutation.
    pub(crate) fn from_vec_unchecked(perm: Vec<usize>) -> Self {
        debug_assert!(Ranking::new(perm.clone()).is_ok());
        Ranking(perm)
    }

    pub fn identity(m: usize) -> Self {
        Ranking((0..m).collect())
    }

    /// A uniformly random ranking (Fisher–Yates).
    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let mut perm: Vec<usize> = (0..m).collect();
        perm.shuffle(rng);
        Ranking(perm)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// `pos[c]` is the 0-based position of candidate `c`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &c) in self.0.iter().enumerate() {
            pos[c] = i;
        }
        pos
    }

    /// True when `a` is ranked ahead of `b`.
    pub fn prefers(&self, a: usize, b: usize) -> bool {
        let pos = |x| self.0.iter().position(|&c| c == x);
        pos(a) < pos(b)
    }

    pub fn reverse(&self) -> Ranking {
        let mut perm = self.0.clone();
        perm.reverse();
        Ranking(perm)
    }

    /// The ranking with positions `i` and `i + 1` exchanged.
    pub fn swap_adjacent(&self, i: usize) -> Ranking {
        let mut perm = self.0.clone();
        perm.swap(i, i + 1);
        Ranking(perm)
    }

    /// Applies a candidate relabeling: candidate `c` becomes `map[c]`.
    pub fn relabel(&self, map: &[usize]) -> Ranking {
        Ranking(self.0.iter().map(|&c| map[c]).collect())
    }
}

impl fmt::Debug for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ranking({self})")
    }
}

/// Text form: space-separated candidate indices, e.g. `2 0 1 3`.
impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Ranking {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let perm = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::Validation(format!("not a candidate index: {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ranking::new(perm)
    }
}

impl TryFrom<Vec<usize>> for Ranking {
    type Error = Error;

    fn try_from(perm: Vec<usize>) -> Result<Self> {
        Ranking::new(perm)
    }
}

impl From<Ranking> for Vec<usize> {
    fn from(r: Ranking) -> Self {
        r.0
    }
}

impl AsRef<[usize]> for Ranking {
    fn as_ref(&self) -> &[usize] {
        &self.0
    }
}

/// `m (m - 1) / 2`, the largest possible swap distance.
pub fn max_distance(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

pub fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

/// Number of pairs of candidates that `u` and `v` order differently.
///
/// Relabels `v` through the positions of `u` and counts inversions of the
/// resulting sequence with a merge count, `O(m log m)`.
pub fn swap_distance(u: &Ranking, v: &Ranking) -> Result<usize> {
    check_dim(u.len(), v.len())?;
    let pos_u = u.positions();
    Ok(distance_from_positions(&pos_u, v.as_slice()))
}

/// Swap distance between the ranking whose position vector is `pos` and `w`.
pub(crate) fn distance_from_positions(pos: &[usize], w: &[usize]) -> usize {
    let mut seq: Vec<usize> = w.iter().map(|&c| pos[c]).collect();
    count_inversions(&mut seq)
}

/// Counts pairs `i < j` with `seq[i] > seq[j]`; sorts `seq` as a side effect.
pub fn count_inversions(seq: &mut [usize]) -> usize {
    let mut buf = vec![0usize; seq.len()];
    merge_count(seq, &mut buf)
}

fn merge_count(seq: &mut [usize], buf: &mut [usize]) -> usize {
    let n = seq.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inv = {
        let (left, right) = seq.split_at_mut(mid);
        let (bl, br) = buf.split_at_mut(mid);
        merge_count(left, bl) + merge_count(right, br)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if seq[i] <= seq[j] {
            buf[k] = seq[i];
            i += 1;
        } else {
            buf[k] = seq[j];
            inv += mid - i;
            j += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&seq[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&seq[j..n]);
    seq.copy_from_slice(&buf[..n]);
    inv
}

/// Every ranking of `m` candidates in lexicographic order.
pub fn enumerate_all(m: usize) -> Result<Permutations> {
    if m == 0 || m > MAX_ENUMERATE_M {
        return Err(Error::Argument(format!(
            "enumerate_all needs 1 <= m <= {MAX_ENUMERATE_M}, got {m}"
        )));
    }
    Ok(Permutations {
        next: Some((0..m).collect()),
    })
}

/// Lexicographic permutation stream returned by [`enumerate_all`].
#[derive(Debug, Clone)]
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Ranking;

    fn next(&mut self) -> Option<Ranking> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Ranking(current))
    }
}

/// Advances `p` to its lexicographic successor; false when `p` was the last.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The `m - 1` rankings one adjacent transposition away from `v`.
pub fn adjacent_transpositions(v: &Ranking) -> impl Iterator<Item = Ranking> + '_ {
    (0..v.len().saturating_sub(1)).map(move |i| v.swap_adjacent(i))
}
