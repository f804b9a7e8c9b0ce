//! Prefix-tree set of rankings over a fixed number of candidates.

use crate::error::{Error, Result};

/// Largest `m` a [`RankingSet`] supports (unused candidates are tracked in a `u64`).
pub const MAX_SET_M: usize = 64;

const TERMINAL: u32 = u32::MAX;

/// A trie over candidate sequences of depth `m`.
///
/// A node at depth `k` has one slot per candidate not yet used on its path;
/// the slot of candidate `c` is the rank of `c` among the unused candidates.
/// Slots at depth `m - 2` hold a terminal mark because the last candidate is
/// forced. Membership tests and insertions are `O(m)`.
#[derive(Debug, Clone)]
pub struct RankingSet {
    m: usize,
    arena: Vec<u32>,
    count: usize,
    // m == 1 has exactly one possible member
    single: bool,
}

impl RankingSet {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_SET_M {
            return Err(Error::Argument(format!(
                "ranking sets support 1 <= m <= {MAX_SET_M}, got {m}"
            )));
        }
        Ok(RankingSet {
            m,
            arena: vec![0; m],
            count: 0,
            single: false,
        })
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Inserts `seq`; returns true when it was not present before.
    pub fn insert<T: Copy + Into<usize>>(&mut self, seq: &[T]) -> Result<bool> {
        self.check_len(seq.len())?;
        if self.m == 1 {
            let new = !std::mem::replace(&mut self.single, true);
            self.count += new as usize;
            return Ok(new);
        }
        let mut unused = full_mask(self.m);
        let mut node = 0usize;
        for (depth, &c) in seq[..self.m - 1].iter().enumerate() {
            let slot = node + slot_of(unused, c.into())?;
            unused &= !(1u64 << c.into());
            if depth == self.m - 2 {
                // the final candidate is implied, but it still has to be valid
                let last: usize = seq[self.m - 1].into();
                slot_of(unused, last)?;
                if self.arena[slot] == TERMINAL {
                    return Ok(false);
                }
                self.arena[slot] = TERMINAL;
                self.count += 1;
                return Ok(true);
            }
            if self.arena[slot] == 0 {
                let child = self.arena.len();
                let width = self.m - depth - 1;
                self.arena.resize(child + width, 0);
                self.arena[slot] = child as u32;
            }
            node = self.arena[slot] as usize;
        }
        unreachable!("loop always returns at depth m - 2")
    }

    pub fn contains<T: Copy + Into<usize>>(&self, seq: &[T]) -> bool {
        if seq.len() != self.m {
            return false;
        }
        if self.m == 1 {
            return self.single && seq[0].into() == 0;
        }
        let mut unused = full_mask(self.m);
        let mut node = 0usize;
        for (depth, &c) in seq[..self.m - 1].iter().enumerate() {
            let Ok(rank) = slot_of(unused, c.into()) else {
                return false;
            };
            unused &= !(1u64 << c.into());
            let value = self.arena[node + rank];
            if depth == self.m - 2 {
                return value == TERMINAL && slot_of(unused, seq[self.m - 1].into()).is_ok();
            }
            if value == 0 {
                return false;
            }
            node = value as usize;
        }
        false
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.m {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.m,
                got: len,
            })
        }
    }
}

fn full_mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

fn slot_of(unused: u64, c: usize) -> Result<usize> {
    if c >= 64 || unused & (1u64 << c) == 0 {
        return Err(Error::Validation(format!(
            "candidate {c} is out of range or repeated"
        )));
    }
    Ok((unused & ((1u64 << c) - 1)).count_ones() as usize)
}
