use std::collections::hash_map::Entry;
use std::collections::HashMap;

use super::DistanceOracle;
use crate::domain::CandidateGraph;
use crate::error::{check_dim, Error, Result};
use crate::ranking::Ranking;

/// Trees with more leaves are refused: the table has `O(m^k)` entries.
pub const MAX_TREE_LEAVES: usize = 5;
const MAX_TREE_M: usize = 64;
const MAX_SUBSETS: usize = 20_000_000;

/// Connected-subset table for single-peakedness on a tree.
///
/// Subsets are the connected vertex sets of the tree, stored as bitmasks in
/// order of decreasing size so that every superset precedes its subsets.
/// For each subset `S` the oracle keeps the neighbours `y` outside `S` with
/// the index of `S + y`.
#[derive(Debug, Clone)]
pub struct SpTreeOracle {
    m: usize,
    subsets: Vec<u64>,
    // (index of S + y, y) for each subset, flattened
    extensions: Vec<(u32, u32)>,
    ext_start: Vec<u32>,
}

impl SpTreeOracle {
    pub fn new(tree: &CandidateGraph) -> Result<Self> {
        let m = tree.num_vertices();
        if !tree.is_tree() {
            return Err(Error::Validation("SP-tree distance needs an acyclic graph".into()));
        }
        let k = tree.leaves().len();
        if k > MAX_TREE_LEAVES {
            return Err(Error::Resource(format!(
                "tree has {k} leaves; at most {MAX_TREE_LEAVES} are supported"
            )));
        }
        if m > MAX_TREE_M {
            return Err(Error::Resource(format!("SP-tree distance supports m <= {MAX_TREE_M}")));
        }
        let nbr: Vec<u64> = (0..m)
            .map(|v| tree.neighbors(v).iter().fold(0u64, |acc, &w| acc | 1 << w))
            .collect();
        let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };

        // peel leaves of the induced subtree, level by level
        let mut index: HashMap<u64, u32> = HashMap::from([(full, 0)]);
        let mut subsets = vec![full];
        let mut level = vec![full];
        while !level.is_empty() {
            let mut next = Vec::new();
            for &s in &level {
                if s.count_ones() == 1 {
                    continue;
                }
                let mut rest = s;
                while rest != 0 {
                    let x = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if (nbr[x] & s).count_ones() == 1 {
                        let t = s & !(1u64 << x);
                        if let Entry::Vacant(e) = index.entry(t) {
                            e.insert(subsets.len() as u32);
                            subsets.push(t);
                            next.push(t);
                        }
                    }
                }
            }
            if subsets.len() > MAX_SUBSETS {
                return Err(Error::Resource("too many connected subsets".into()));
            }
            level = next;
        }

        let mut extensions = Vec::new();
        let mut ext_start = Vec::with_capacity(subsets.len() + 1);
        for &s in &subsets {
            ext_start.push(extensions.len() as u32);
            let mut boundary = (0..m).fold(0u64, |acc, x| if s >> x & 1 == 1 { acc | nbr[x] } else { acc }) & !s;
            while boundary != 0 {
                let y = boundary.trailing_zeros();
                boundary &= boundary - 1;
                extensions.push((index[&(s | 1u64 << y)], y));
            }
        }
        ext_start.push(extensions.len() as u32);
        Ok(SpTreeOracle {
            m,
            subsets,
            extensions,
            ext_start,
        })
    }

    pub fn num_subsets(&self) -> usize {
        self.subsets.len()
    }
}

impl DistanceOracle for SpTreeOracle {
    fn num_candidates(&self) -> usize {
        self.m
    }

    fn distance(&self, v: &Ranking) -> Result<usize> {
        check_dim(self.m, v.len())?;
        // below[y]: candidates that v ranks under y
        let mut below = vec![0u64; self.m];
        let mut acc = 0u64;
        for &c in v.as_slice().iter().rev() {
            below[c] = acc;
            acc |= 1 << c;
        }
        // A_S = min over y of A_{S+y} + |{c in S : y above c in v}|
        let mut a = vec![u32::MAX; self.subsets.len()];
        a[0] = 0;
        let mut best = u32::MAX;
        for (i, &s) in self.subsets.iter().enumerate().skip(1) {
            let exts = &self.extensions[self.ext_start[i] as usize..self.ext_start[i + 1] as usize];
            a[i] = exts
                .iter()
                .map(|&(sup, y)| a[sup as usize] + (s & below[y as usize]).count_ones())
                .min()
                .expect("proper connected subsets have a neighbour");
            if s.count_ones() == 1 {
                best = best.min(a[i]);
            }
        }
        Ok(if self.m == 1 { 0 } else { best as usize })
    }
}

/// Distance from `v` to the single-peaked domain on `tree`.
pub fn dist_sp_tree(v: &Ranking, tree: &CandidateGraph) -> Result<usize> {
    SpTreeOracle::new(tree)?.distance(v)
}
