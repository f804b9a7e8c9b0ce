//! Prefix-count index over positions `0..n`.

/// Fenwick tree storing a set of positions and answering "how many stored
/// positions are smaller than `p`" in `O(log n)`.
#[derive(Debug, Clone)]
pub struct PositionIndex {
    tree: Vec<u32>,
    len: usize,
}

impl PositionIndex {
    pub fn new(n: usize) -> Self {
        PositionIndex {
            tree: vec![0; n + 1],
            len: 0,
        }
    }

    pub fn insert(&mut self, pos: usize) {
        let mut i = pos + 1;
        while i < self.tree.len() {
            self.tree[i] += 1;
            i += i & i.wrapping_neg();
        }
        self.len += 1;
    }

    /// Number of stored positions strictly smaller than `pos`.
    pub fn count_before(&self, pos: usize) -> usize {
        let mut i = pos.min(self.tree.len() - 1);
        let mut acc = 0;
        while i > 0 {
            acc += self.tree[i] as usize;
            i &= i - 1;
        }
        acc
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}
