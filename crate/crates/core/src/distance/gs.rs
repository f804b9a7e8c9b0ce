use super::DistanceOracle;
use crate::domain::{GsNode, GsTree};
use crate::error::{check_dim, Result};
use crate::fenwick::PositionIndex;
use crate::ranking::Ranking;

const NONE: u32 = u32::MAX;

/// Per-node child labels of a GS-tree, preprocessed for `O(m^2)` queries.
#[derive(Debug, Clone)]
pub struct GsOracle {
    m: usize,
    // for each internal node: child index of every candidate, NONE outside the node
    nodes: Vec<Vec<u32>>,
}

impl GsOracle {
    pub fn new(tree: &GsTree) -> Self {
        fn walk(node: &GsNode, m: usize, out: &mut Vec<Vec<u32>>) {
            if let GsNode::Internal(children) = node {
                let mut label = vec![NONE; m];
                for (i, ch) in children.iter().enumerate() {
                    for c in ch.leaves() {
                        label[c] = i as u32;
                    }
                    walk(ch, m, out);
                }
                out.push(label);
            }
        }
        let m = tree.num_candidates();
        let mut nodes = Vec::new();
        walk(tree.root(), m, &mut nodes);
        GsOracle { m, nodes }
    }
}

impl DistanceOracle for GsOracle {
    fn num_candidates(&self) -> usize {
        self.m
    }

    /// Each candidate pair is split at exactly one node; per node, keep the
    /// child order or reverse it, whichever disagrees with `v` on fewer pairs.
    fn distance(&self, v: &Ranking) -> Result<usize> {
        check_dim(self.m, v.len())?;
        let mut total = 0usize;
        let mut seen_per_child = Vec::new();
        for label in &self.nodes {
            let k = label.iter().filter(|&&l| l != NONE).max().map_or(0, |&l| l as usize + 1);
            seen_per_child.clear();
            seen_per_child.resize(k, 0usize);
            let (mut forward, mut cross, mut seen) = (0usize, 0usize, 0usize);
            for &c in v.as_slice() {
                let l = label[c];
                if l == NONE {
                    continue;
                }
                let l = l as usize;
                // earlier candidates from later children are discordant with tree order
                let later: usize = seen_per_child[l + 1..].iter().sum();
                forward += later;
                cross += seen - seen_per_child[l];
                seen_per_child[l] += 1;
                seen += 1;
            }
            total += forward.min(cross - forward);
        }
        Ok(total)
    }
}

pub fn dist_gs(v: &Ranking, tree: &GsTree) -> Result<usize> {
    GsOracle::new(tree).distance(v)
}

/// Distance to GS/cat in `O(m log m)`.
///
/// Walks the caterpillar from the deepest internal node up. The node of
/// candidate `c` separates `c` from `c+1..m`; `inv` of those are ranked
/// above `c`, which is the cost of keeping `c` first.
pub fn dist_gs_cat(v: &Ranking) -> usize {
    let m = v.len();
    if m < 2 {
        return 0;
    }
    let pos = v.positions();
    let mut index = PositionIndex::new(m);
    index.insert(pos[m - 1]);
    let mut total = 0;
    for c in (0..m - 1).rev() {
        let t = index.len();
        let inv = index.count_before(pos[c]);
        total += inv.min(t - inv);
        index.insert(pos[c]);
    }
    total
}

/// Distance to GS/bal in `O(m log m)` by merge sort over the balanced tree.
pub fn dist_gs_bal(v: &Ranking) -> usize {
    // positions of block lo..hi, returned sorted
    fn solve(pos: &[usize], lo: usize, hi: usize, total: &mut usize) -> Vec<usize> {
        let n = hi - lo;
        if n == 1 {
            return vec![pos[lo]];
        }
        let mid = lo + n.div_ceil(2);
        let a = solve(pos, lo, mid, total);
        let b = solve(pos, mid, hi, total);
        let (mut i, mut j, mut inv) = (0, 0, 0);
        let mut merged = Vec::with_capacity(n);
        while i < a.len() && j < b.len() {
            if a[i] < b[j] {
                merged.push(a[i]);
                i += 1;
            } else {
                // b[j] is above every remaining member of the left block
                inv += a.len() - i;
                merged.push(b[j]);
                j += 1;
            }
        }
        merged.extend_from_slice(&a[i..]);
        merged.extend_from_slice(&b[j..]);
        *total += inv.min(a.len() * b.len() - inv);
        merged
    }
    if v.is_empty() {
        return 0;
    }
    let mut total = 0;
    solve(&v.positions(), 0, v.len(), &mut total);
    total
}

#[derive(Debug, Clone)]
pub struct GsCatOracle {
    m: usize,
}

impl GsCatOracle {
    pub fn new(m: usize) -> Self {
        GsCatOracle { m }
    }
}

impl DistanceOracle for GsCatOracle {
    fn num_candidates(&self) -> usize {
        self.m
    }

    fn distance(&self, v: &Ranking) -> Result<usize> {
        check_dim(self.m, v.len())?;
        Ok(dist_gs_cat(v))
    }
}

#[derive(Debug, Clone)]
pub struct GsBalOracle {
    m: usize,
}

impl GsBalOracle {
    pub fn new(m: usize) -> Self {
        GsBalOracle { m }
    }
}

impl DistanceOracle for GsBalOracle {
    fn num_candidates(&self) -> usize {
        self.m
    }

    fn distance(&self, v: &Ranking) -> Result<usize> {
        check_dim(self.m, v.len())?;
        Ok(dist_gs_bal(v))
    }
}
