//! Ordered rooted trees defining group-separable domains.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::ranking::Ranking;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GsNode {
    Leaf(usize),
    Internal(Vec<GsNode>),
}

impl GsNode {
    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            GsNode::Leaf(c) => out.push(*c),
            GsNode::Internal(children) => children.iter().for_each(|ch| ch.collect_leaves(out)),
        }
    }

    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn internal_count(&self) -> usize {
        match self {
            GsNode::Leaf(_) => 0,
            GsNode::Internal(children) => 1 + children.iter().map(GsNode::internal_count).sum::<usize>(),
        }
    }

    fn leaf_depths(&self, depth: usize, out: &mut Vec<usize>) {
        match self {
            GsNode::Leaf(_) => out.push(depth),
            GsNode::Internal(children) => children.iter().for_each(|ch| ch.leaf_depths(depth + 1, out)),
        }
    }
}

/// A GS-tree: internal nodes have at least two children and the leaves carry
/// the candidates `0..m`, each exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsTree {
    root: GsNode,
    m: usize,
}

impl GsTree {
    pub fn new(root: GsNode) -> Result<Self> {
        fn check(node: &GsNode) -> Result<()> {
            if let GsNode::Internal(children) = node {
                if children.len() < 2 {
                    return Err(Error::Validation(
                        "internal GS-tree nodes need at least two children".into(),
                    ));
                }
                children.iter().try_for_each(check)?;
            }
            Ok(())
        }
        check(&root)?;
        let mut labels = root.leaves();
        let m = labels.len();
        labels.sort_unstable();
        if labels.iter().enumerate().any(|(i, &c)| i != c) {
            return Err(Error::Validation(format!(
                "GS-tree leaf labels must be exactly 0..{m}"
            )));
        }
        Ok(GsTree { root, m })
    }

    /// Binary caterpillar with candidate 0 closest to the root, then 1, and so on.
    pub fn caterpillar(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Argument("GS/cat needs m >= 1".into()));
        }
        let mut node = GsNode::Leaf(m - 1);
        for c in (0..m - 1).rev() {
            node = GsNode::Internal(vec![GsNode::Leaf(c), node]);
        }
        GsTree::new(node)
    }

    /// Balanced binary tree over leaves `0..m` in order; every split gives the
    /// left child `ceil(n / 2)` leaves.
    pub fn balanced(m: usize) -> Result<Self> {
        fn build(lo: usize, hi: usize) -> GsNode {
            if hi - lo == 1 {
                return GsNode::Leaf(lo);
            }
            let mid = lo + (hi - lo).div_ceil(2);
            GsNode::Internal(vec![build(lo, mid), build(mid, hi)])
        }
        if m == 0 {
            return Err(Error::Argument("GS/bal needs m >= 1".into()));
        }
        GsTree::new(build(0, m))
    }

    /// A random GS-tree: labels shuffled, leaves split recursively into 2..=4 groups.
    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Result<Self> {
        fn build<R: Rng + ?Sized>(labels: &[usize], rng: &mut R) -> GsNode {
            if labels.len() == 1 {
                return GsNode::Leaf(labels[0]);
            }
            let groups = rng.random_range(2..=labels.len().min(4));
            let mut cuts: Vec<usize> = (1..labels.len()).collect();
            cuts.shuffle(rng);
            let mut cuts = cuts[..groups - 1].to_vec();
            cuts.sort_unstable();
            let mut children = Vec::with_capacity(groups);
            let mut start = 0;
            for &cut in cuts.iter().chain(std::iter::once(&labels.len())) {
                children.push(build(&labels[start..cut], rng));
                start = cut;
            }
            GsNode::Internal(children)
        }
        if m == 0 {
            return Err(Error::Argument("GS-tree needs m >= 1".into()));
        }
        let mut labels: Vec<usize> = (0..m).collect();
        labels.shuffle(rng);
        GsTree::new(build(&labels, rng))
    }

    pub fn root(&self) -> &GsNode {
        &self.root
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    pub fn num_internal(&self) -> usize {
        self.root.internal_count()
    }

    /// Left-to-right leaf reading.
    pub fn frontier(&self) -> Ranking {
        Ranking::from_vec_unchecked(self.root.leaves())
    }

    pub fn is_caterpillar(&self) -> bool {
        fn walk(node: &GsNode) -> bool {
            match node {
                GsNode::Leaf(_) => true,
                GsNode::Internal(ch) => {
                    ch.len() == 2
                        && ch.iter().any(|c| matches!(c, GsNode::Leaf(_)))
                        && ch.iter().all(walk)
                }
            }
        }
        walk(&self.root)
    }

    pub fn is_balanced(&self) -> bool {
        fn binary(node: &GsNode) -> bool {
            match node {
                GsNode::Leaf(_) => true,
                GsNode::Internal(ch) => ch.len() == 2 && ch.iter().all(binary),
            }
        }
        let mut depths = Vec::new();
        self.root.leaf_depths(0, &mut depths);
        let lo = depths.iter().min().copied().unwrap_or(0);
        let hi = depths.iter().max().copied().unwrap_or(0);
        binary(&self.root) && hi - lo <= 1
    }

    /// All frontiers reachable by reversing the children of any subset of nodes.
    pub fn enumerate(&self) -> Vec<Ranking> {
        fn frontiers(node: &GsNode) -> Vec<Vec<usize>> {
            match node {
                GsNode::Leaf(c) => vec![vec![*c]],
                GsNode::Internal(children) => {
                    let per_child: Vec<_> = children.iter().map(frontiers).collect();
                    let mut out = Vec::new();
                    for reversed in [false, true] {
                        let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
                        let order: Vec<usize> = if reversed {
                            (0..children.len()).rev().collect()
                        } else {
                            (0..children.len()).collect()
                        };
                        for i in order {
                            let mut next = Vec::with_capacity(acc.len() * per_child[i].len());
                            for prefix in &acc {
                                for tail in &per_child[i] {
                                    let mut v = prefix.clone();
                                    v.extend_from_slice(tail);
                                    next.push(v);
                                }
                            }
                            acc = next;
                        }
                        out.extend(acc);
                    }
                    out
                }
            }
        }
        frontiers(&self.root)
            .into_iter()
            .map(Ranking::from_vec_unchecked)
            .collect()
    }

    /// Every node's child blocks are contiguous in `v` and appear in tree order
    /// or reversed tree order.
    pub fn is_member(&self, v: &Ranking) -> bool {
        if v.len() != self.m {
            return false;
        }
        let pos = v.positions();
        fn check(node: &GsNode, pos: &[usize]) -> bool {
            let GsNode::Internal(children) = node else {
                return true;
            };
            let mut tagged: Vec<(usize, usize)> = Vec::new();
            for (i, ch) in children.iter().enumerate() {
                tagged.extend(ch.leaves().into_iter().map(|c| (pos[c], i)));
            }
            tagged.sort_unstable();
            let mut runs: Vec<usize> = Vec::with_capacity(children.len());
            for &(_, child) in &tagged {
                if runs.last() != Some(&child) {
                    runs.push(child);
                }
            }
            let k = children.len();
            let forward = runs.iter().copied().eq(0..k);
            let backward = runs.iter().copied().eq((0..k).rev());
            (forward || backward) && children.iter().all(|ch| check(ch, pos))
        }
        check(&self.root, &pos)
    }
}

/// Bracket notation, e.g. `(0,(1,2))`.
impl fmt::Display for GsTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write(node: &GsNode, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match node {
                GsNode::Leaf(c) => write!(f, "{c}"),
                GsNode::Internal(children) => {
                    f.write_str("(")?;
                    for (i, ch) in children.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write(ch, f)?;
                    }
                    f.write_str(")")
                }
            }
        }
        write(&self.root, f)
    }
}

impl FromStr for GsTree {
    type Err = Error;

    /// Parses bracket notation; children are separated by commas or whitespace.
    fn from_str(s: &str) -> Result<Self> {
        struct Parser<'a> {
            bytes: &'a [u8],
            at: usize,
            depth: usize,
        }
        impl Parser<'_> {
            fn skip(&mut self) {
                while self.at < self.bytes.len()
                    && (self.bytes[self.at].is_ascii_whitespace() || self.bytes[self.at] == b',')
                {
                    self.at += 1;
                }
            }
            fn err(&self, msg: &str) -> Error {
                Error::Validation(format!("GS-tree syntax at byte {}: {msg}", self.at))
            }
            fn node(&mut self) -> Result<GsNode> {
                self.skip();
                match self.bytes.get(self.at) {
                    Some(b'(') => {
                        self.depth += 1;
                        if self.depth > 256 {
                            return Err(self.err("nesting too deep"));
                        }
                        self.at += 1;
                        let mut children = Vec::new();
                        loop {
                            self.skip();
                            match self.bytes.get(self.at) {
                                Some(b')') => {
                                    self.at += 1;
                                    self.depth -= 1;
                                    return Ok(GsNode::Internal(children));
                                }
                                None => return Err(self.err("unclosed '('")),
                                _ => children.push(self.node()?),
                            }
                        }
                    }
                    Some(c) if c.is_ascii_digit() => {
                        let start = self.at;
                        while self.at < self.bytes.len() && self.bytes[self.at].is_ascii_digit() {
                            self.at += 1;
                        }
                        let text = std::str::from_utf8(&self.bytes[start..self.at]).unwrap_or("");
                        text.parse::<usize>()
                            .map(GsNode::Leaf)
                            .map_err(|_| self.err("leaf label too large"))
                    }
                    Some(_) => Err(self.err("unexpected character")),
                    None => Err(self.err("unexpected end of input")),
                }
            }
        }
        let mut p = Parser {
            bytes: s.as_bytes(),
            at: 0,
            depth: 0,
        };
        let root = p.node()?;
        p.skip();
        if p.at != p.bytes.len() {
            return Err(p.err("trailing input"));
        }
        GsTree::new(root)
    }
}

/// Up-down test for the default caterpillar: candidate indices rise until
/// `m - 1` and fall afterwards.
pub fn is_up_down(v: &[usize]) -> bool {
    let Some(peak) = v.iter().position(|&c| c + 1 == v.len()) else {
        return false;
    };
    v[..=peak].windows(2).all(|w| w[0] < w[1]) && v[peak..].windows(2).all(|w| w[0] > w[1])
}
