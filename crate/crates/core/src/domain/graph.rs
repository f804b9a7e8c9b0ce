//! Graphs over candidates and the single-peaked-on-a-graph domains they induce.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::ranking::Ranking;

/// Undirected simple graph whose vertices are the candidates `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateGraph {
    adj: Vec<Vec<usize>>,
}

impl CandidateGraph {
    /// Builds a connected graph from an edge list.
    pub fn from_edges(m: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if m == 0 {
            return Err(Error::Validation("graph needs at least one vertex".into()));
        }
        let mut adj = vec![Vec::new(); m];
        for &(a, b) in edges {
            if a >= m || b >= m {
                return Err(Error::Validation(format!("edge {a}-{b} out of range for m = {m}")));
            }
            if a == b {
                return Err(Error::Validation(format!("self loop at {a}")));
            }
            if adj[a].contains(&b) {
                return Err(Error::Validation(format!("duplicate edge {a}-{b}")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let g = CandidateGraph { adj };
        if !g.is_connected() {
            return Err(Error::Validation("graph is not connected".into()));
        }
        Ok(g)
    }

    /// The path `order[0] - order[1] - ... - order[m-1]`.
    pub fn path(order: &Ranking) -> Self {
        let o = order.as_slice();
        let edges: Vec<_> = o.windows(2).map(|w| (w[0], w[1])).collect();
        CandidateGraph::from_edges(o.len(), &edges).expect("a path over a permutation is valid")
    }

    /// The cycle through `order`, closed from the last candidate back to the first.
    pub fn cycle(order: &Ranking) -> Self {
        let o = order.as_slice();
        let mut edges: Vec<_> = o.windows(2).map(|w| (w[0], w[1])).collect();
        if o.len() >= 3 {
            edges.push((o[o.len() - 1], o[0]));
        }
        CandidateGraph::from_edges(o.len(), &edges).expect("a cycle over a permutation is valid")
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_tree(&self) -> bool {
        self.num_edges() + 1 == self.num_vertices()
    }

    /// Vertices of degree one (a single vertex counts as a leaf).
    pub fn leaves(&self) -> Vec<usize> {
        if self.num_vertices() == 1 {
            return vec![0];
        }
        (0..self.num_vertices()).filter(|&v| self.adj[v].len() == 1).collect()
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.adj.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.adj.len()
    }

    /// Every prefix of `v` induces a connected subgraph.
    pub fn is_single_peaked(&self, v: &[usize]) -> bool {
        let mut taken = vec![false; self.adj.len()];
        for (t, &c) in v.iter().enumerate() {
            if t > 0 && !self.adj[c].iter().any(|&w| taken[w]) {
                return false;
            }
            taken[c] = true;
        }
        true
    }

    /// Enumerates SP(G) by growing connected prefixes; fails past `limit` members.
    pub fn single_peaked_rankings(&self, limit: usize) -> Result<Vec<Ranking>> {
        let m = self.adj.len();
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(m);
        let mut taken = vec![false; m];
        for start in 0..m {
            prefix.push(start);
            taken[start] = true;
            self.extend(&mut prefix, &mut taken, &mut out, limit)?;
            taken[start] = false;
            prefix.pop();
        }
        Ok(out)
    }

    fn extend(
        &self,
        prefix: &mut Vec<usize>,
        taken: &mut [bool],
        out: &mut Vec<Ranking>,
        limit: usize,
    ) -> Result<()> {
        let m = taken.len();
        if prefix.len() == m {
            if out.len() >= limit {
                return Err(Error::Resource(format!("domain has more than {limit} members")));
            }
            out.push(Ranking::from_vec_unchecked(prefix.clone()));
            return Ok(());
        }
        for c in 0..m {
            if !taken[c] && self.adj[c].iter().any(|&w| taken[w]) {
                taken[c] = true;
                prefix.push(c);
                self.extend(prefix, taken, out, limit)?;
                prefix.pop();
                taken[c] = false;
            }
        }
        Ok(())
    }
}

/// The single-peaked/double-forked tree: a path over candidates `2..m-2`
/// with leaves `0, 1` hanging off its first vertex and `m-2, m-1` off its last.
///
/// For `m = 5` the path is a single vertex and the tree is a star.
pub fn build_sp_df(m: usize) -> Result<CandidateGraph> {
    if m < 5 {
        return Err(Error::Argument(format!("SP/DF needs m >= 5, got {m}")));
    }
    let (first, last) = (2, m - 3);
    let mut edges: Vec<_> = (first..last).map(|c| (c, c + 1)).collect();
    edges.extend([(0, first), (1, first), (m - 2, last), (m - 1, last)]);
    CandidateGraph::from_edges(m, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ranking::enumerate_all;

    #[test]
    fn axis_membership_example() {
        let g = CandidateGraph::path(&Ranking::identity(4));
        assert!(g.is_single_peaked(&[1, 2, 0, 3]));
        assert!(!g.is_single_peaked(&[0, 3, 1, 2]));
    }

    #[test]
    fn sp_df_shape() {
        let g = build_sp_df(8).unwrap();
        assert!(g.is_tree());
        assert_eq!(g.leaves(), vec![0, 1, 6, 7]);
        assert_eq!(g.neighbors(0), &[2]);
        assert_eq!(g.neighbors(7), &[5]);
        assert!(build_sp_df(4).is_err());
    }

    #[test]
    fn sp_df_six_by_brute_force() {
        let g = build_sp_df(6).unwrap();
        let filtered = enumerate_all(6)
            .unwrap()
            .filter(|v| g.is_single_peaked(v.as_slice()))
            .count();
        assert_eq!(filtered, 112);
        assert_eq!(g.single_peaked_rankings(usize::MAX).unwrap().len(), 112);
    }

    #[test]
    fn invalid_graphs() {
        assert!(CandidateGraph::from_edges(3, &[(0, 1)]).is_err());
        assert!(CandidateGraph::from_edges(2, &[(0, 0)]).is_err());
        assert!(CandidateGraph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
        assert!(CandidateGraph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn enumeration_limit() {
        let g = CandidateGraph::path(&Ranking::identity(6));
        assert!(matches!(g.single_peaked_rankings(10), Err(Error::Resource(_))));
    }
}
