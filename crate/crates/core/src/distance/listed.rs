use std::collections::HashMap;

use super::DistanceOracle;
use crate::error::{check_dim, Error, Result};
use crate::ranking::{distance_from_positions, Ranking};

/// How the members of a listed domain are chained together.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ListedShape {
    /// Members in the given order, consecutive ones one swap apart.
    Path,
    /// A DFS tree of the swap-distance-1 graph over the members.
    Tree,
}

/// Members connected by single swaps, each edge labelled with its pair.
///
/// Node `i > 0` has parent `parent[i] < i`; `pair[i] = (a, b)` means `a` is
/// above `b` in node `i` and below it in the parent. Queries evaluate the
/// root with a merge count and then move one swap at a time.
#[derive(Debug, Clone)]
pub struct ListedOracle {
    members: Vec<Ranking>,
    parent: Vec<u32>,
    pair: Vec<(u32, u32)>,
}

/// The unique pair swapped between adjacent-transposition neighbours `u`
/// and `w`, as `(above in u, below in u)`; `None` unless exactly one
/// adjacent pair differs.
fn swapped_pair(u: &Ranking, w: &Ranking) -> Option<(usize, usize)> {
    let (a, b) = (u.as_slice(), w.as_slice());
    let first = a.iter().zip(b).position(|(x, y)| x != y)?;
    let ok = first + 1 < a.len()
        && a[first] == b[first + 1]
        && a[first + 1] == b[first]
        && a[first + 2..] == b[first + 2..];
    ok.then(|| (a[first], a[first + 1]))
}

pub fn build_listed_oracle(members: &[Ranking], shape: ListedShape) -> Result<ListedOracle> {
    let Some(first) = members.first() else {
        return Err(Error::Argument("listed oracle needs a nonempty domain".into()));
    };
    let m = first.len();
    members.iter().try_for_each(|u| check_dim(m, u.len()))?;
    let n = members.len();
    match shape {
        ListedShape::Path => {
            let mut parent = vec![0u32];
            let mut pair = vec![(0u32, 0u32)];
            for i in 1..n {
                let Some((a, b)) = swapped_pair(&members[i], &members[i - 1]) else {
                    return Err(Error::Structure(format!(
                        "members {} and {i} are not one adjacent swap apart",
                        i - 1
                    )));
                };
                parent.push((i - 1) as u32);
                pair.push((a as u32, b as u32));
            }
            Ok(ListedOracle {
                members: members.to_vec(),
                parent,
                pair,
            })
        }
        ListedShape::Tree => {
            let index: HashMap<&Ranking, usize> = members.iter().enumerate().map(|(i, r)| (r, i)).collect();
            if index.len() != n {
                return Err(Error::Structure("member list contains duplicates".into()));
            }
            let mut order = Vec::with_capacity(n);
            let mut parent = Vec::with_capacity(n);
            let mut pair = Vec::with_capacity(n);
            let mut new_id = vec![u32::MAX; n];
            // iterative DFS from member 0
            let mut stack = vec![(0usize, 0u32, (0u32, 0u32))];
            while let Some((i, p, label)) = stack.pop() {
                if new_id[i] != u32::MAX {
                    continue;
                }
                new_id[i] = order.len() as u32;
                order.push(i);
                parent.push(p);
                pair.push(label);
                let me = new_id[i];
                for k in 0..m.saturating_sub(1) {
                    let w = members[i].swap_adjacent(k);
                    if let Some(&j) = index.get(&w) {
                        if new_id[j] == u32::MAX {
                            let s = members[i].as_slice();
                            // in w the pair (s[k+1], s[k]) is flipped relative to member i
                            stack.push((j, me, (s[k + 1] as u32, s[k] as u32)));
                        }
                    }
                }
            }
            if order.len() != n {
                return Err(Error::Structure(format!(
                    "swap graph is disconnected: reached {} of {n} members",
                    order.len()
                )));
            }
            Ok(ListedOracle {
                members: order.iter().map(|&i| members[i].clone()).collect(),
                parent,
                pair,
            })
        }
    }
}

impl ListedOracle {
    /// Members in traversal order (parents before children).
    pub fn members(&self) -> &[Ranking] {
        &self.members
    }

    pub fn parent(&self, i: usize) -> usize {
        self.parent[i] as usize
    }

    /// `(a, b)` with `a` above `b` in member `i` and below it in its parent.
    pub fn edge_pair(&self, i: usize) -> (usize, usize) {
        let (a, b) = self.pair[i];
        (a as usize, b as usize)
    }

    /// Distance from `v` to every member, in traversal order.
    pub fn all_distances(&self, v: &Ranking) -> Result<Vec<usize>> {
        check_dim(self.members[0].len(), v.len())?;
        let pos = v.positions();
        let mut d = Vec::with_capacity(self.members.len());
        d.push(distance_from_positions(&pos, self.members[0].as_slice()));
        for i in 1..self.members.len() {
            let (a, b) = self.pair[i];
            let prev = d[self.parent[i] as usize];
            // the edge puts a above b; that fixes a disagreement iff v does too
            d.push(if pos[a as usize] < pos[b as usize] { prev - 1 } else { prev + 1 });
        }
        Ok(d)
    }
}

impl DistanceOracle for ListedOracle {
    fn num_candidates(&self) -> usize {
        self.members[0].len()
    }

    fn distance(&self, v: &Ranking) -> Result<usize> {
        Ok(self.all_distances(v)?.into_iter().min().expect("nonempty"))
    }
}

pub fn dist_listed(oracle: &ListedOracle, v: &Ranking) -> Result<usize> {
    oracle.distance(v)
}
