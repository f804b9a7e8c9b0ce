//! Structured preference domains: descriptors, enumeration and membership.

pub mod euclidean;
pub mod graph;
pub mod gs_tree;
pub mod io;
pub mod lp;
pub mod single_crossing;

use std::collections::HashSet;

pub use euclidean::{sample_euclidean, CandidatePoints, EuclideanDomain};
pub use graph::{build_sp_df, CandidateGraph};
pub use gs_tree::{is_up_down, GsNode, GsTree};
pub use single_crossing::single_crossing_sequence;

use crate::error::{check_dim, Error, Result};
use crate::ranking::{enumerate_all, factorial, Ranking};

/// Enumeration refuses domains predicted to be larger than this.
pub const MAX_DOMAIN_SIZE: u128 = 100_000_000;

/// Largest candidate count for a 4-alignment domain.
pub const MAX_FOUR_ALIGNMENT_M: usize = 16;

/// A descriptor that determines one finite, nonempty set of rankings.
#[derive(Debug, Clone, PartialEq)]
pub enum DomainSpec {
    /// Single-peaked on the path `axis[0] - axis[1] - ...`.
    SpAxis { axis: Ranking },
    /// Single-peaked on the cycle through `cycle`.
    Spoc { cycle: Ranking },
    /// Single-peaked on a tree.
    SpTree { tree: CandidateGraph },
    /// Single-peaked on an arbitrary connected graph.
    SpGraph { graph: CandidateGraph },
    GsTree { tree: GsTree },
    /// Group-separable on the caterpillar with candidate 0 nearest the root.
    GsCat { m: usize },
    /// Group-separable on the left-heavy balanced binary tree.
    GsBal { m: usize },
    /// Single-peaked on the double-forked path, `m >= 5`.
    SpDf { m: usize },
    /// The single-crossing sequence drawn from `seed`.
    SingleCrossing { m: usize, seed: u64 },
    /// Rankings realized by voter points against fixed candidate points.
    Euclidean { points: CandidatePoints },
    /// A duplicate-free list, kept in the given order.
    Explicit { members: Vec<Ranking> },
    /// Four re-indexed copies of every ranking over `base_m` candidates.
    FourAlignment { base_m: usize },
}

impl DomainSpec {
    pub fn sp(m: usize) -> Self {
        DomainSpec::SpAxis {
            axis: Ranking::identity(m),
        }
    }

    pub fn spoc(m: usize) -> Self {
        DomainSpec::Spoc {
            cycle: Ranking::identity(m),
        }
    }

    /// A vote and its reverse.
    pub fn vote_and_reverse(v: &Ranking) -> Self {
        let mut members = vec![v.clone()];
        if v.len() > 1 {
            members.push(v.reverse());
        }
        DomainSpec::Explicit { members }
    }

    /// Validated explicit domain.
    pub fn explicit(members: Vec<Ranking>) -> Result<Self> {
        let spec = DomainSpec::Explicit { members };
        spec.validate()?;
        Ok(spec)
    }

    /// Number of candidates.
    pub fn m(&self) -> usize {
        match self {
            DomainSpec::SpAxis { axis } => axis.len(),
            DomainSpec::Spoc { cycle } => cycle.len(),
            DomainSpec::SpTree { tree } => tree.num_vertices(),
            DomainSpec::SpGraph { graph } => graph.num_vertices(),
            DomainSpec::GsTree { tree } => tree.num_candidates(),
            DomainSpec::GsCat { m }
            | DomainSpec::GsBal { m }
            | DomainSpec::SpDf { m }
            | DomainSpec::SingleCrossing { m, .. } => *m,
            DomainSpec::Euclidean { points } => points.num_candidates(),
            DomainSpec::Explicit { members } => members.first().map_or(0, Ranking::len),
            DomainSpec::FourAlignment { base_m } => 4 * base_m,
        }
    }

    /// Short tag used in file headers and records.
    pub fn family_tag(&self) -> &'static str {
        match self {
            DomainSpec::SpAxis { .. } => "sp",
            DomainSpec::Spoc { .. } => "spoc",
            DomainSpec::SpTree { .. } => "sp-tree",
            DomainSpec::SpGraph { .. } => "sp-graph",
            DomainSpec::GsTree { .. } => "gs-tree",
            DomainSpec::GsCat { .. } => "gs-cat",
            DomainSpec::GsBal { .. } => "gs-bal",
            DomainSpec::SpDf { .. } => "sp-df",
            DomainSpec::SingleCrossing { .. } => "sc",
            DomainSpec::Euclidean { .. } => "euclidean",
            DomainSpec::Explicit { .. } => "explicit",
            DomainSpec::FourAlignment { .. } => "four-alignment",
        }
    }

    /// Checks the structural requirements of each variant.
    pub fn validate(&self) -> Result<()> {
        let positive = |m: usize, what: &str| {
            if m == 0 {
                Err(Error::Validation(format!("{what} needs m >= 1")))
            } else {
                Ok(())
            }
        };
        match self {
            DomainSpec::SpAxis { axis } => positive(axis.len(), "SP"),
            DomainSpec::Spoc { cycle } => positive(cycle.len(), "SPOC"),
            DomainSpec::SpTree { tree } => {
                if tree.is_tree() {
                    Ok(())
                } else {
                    Err(Error::Validation("SP-tree graph contains a cycle".into()))
                }
            }
            DomainSpec::SpGraph { .. } | DomainSpec::GsTree { .. } | DomainSpec::Euclidean { .. } => Ok(()),
            DomainSpec::GsCat { m } => positive(*m, "GS/cat"),
            DomainSpec::GsBal { m } => positive(*m, "GS/bal"),
            DomainSpec::SpDf { m } => {
                if *m >= 5 {
                    Ok(())
                } else {
                    Err(Error::Validation(format!("SP/DF needs m >= 5, got {m}")))
                }
            }
            DomainSpec::SingleCrossing { m, .. } => {
                if *m >= 2 {
                    Ok(())
                } else {
                    Err(Error::Validation(format!("SC needs m >= 2, got {m}")))
                }
            }
            DomainSpec::Explicit { members } => {
                let Some(first) = members.first() else {
                    return Err(Error::Validation("explicit domain is empty".into()));
                };
                let mut seen = HashSet::with_capacity(members.len());
                for r in members {
                    check_dim(first.len(), r.len())?;
                    if !seen.insert(r) {
                        return Err(Error::Validation(format!("duplicate ranking {r}")));
                    }
                }
                Ok(())
            }
            DomainSpec::FourAlignment { base_m } => {
                if *base_m >= 1 && 4 * base_m <= MAX_FOUR_ALIGNMENT_M {
                    Ok(())
                } else {
                    Err(Error::Validation(format!(
                        "4-alignment needs 1 <= 4 * base_m <= {MAX_FOUR_ALIGNMENT_M}, got base_m = {base_m}"
                    )))
                }
            }
        }
    }

    /// Closed-form domain size where one is known.
    pub fn predicted_size(&self) -> Option<u128> {
        let pow2 = |e: usize| 1u128.checked_shl(e as u32);
        match self {
            DomainSpec::SpAxis { axis } => pow2(axis.len().saturating_sub(1)),
            DomainSpec::GsCat { m } | DomainSpec::GsBal { m } => pow2(m.saturating_sub(1)),
            DomainSpec::Spoc { cycle } => match cycle.len() {
                m @ 0..=2 => Some(m as u128),
                m => pow2(m - 2).map(|p| p * m as u128),
            },
            DomainSpec::SpDf { m } => pow2(m + 1).map(|p| p - 16),
            DomainSpec::GsTree { tree } => pow2(tree.num_internal()),
            DomainSpec::SingleCrossing { m, .. } => Some(1 + (m * m.saturating_sub(1) / 2) as u128),
            DomainSpec::Explicit { members } => Some(members.len() as u128),
            DomainSpec::FourAlignment { base_m } => Some(factorial(*base_m)),
            DomainSpec::SpTree { .. } | DomainSpec::SpGraph { .. } | DomainSpec::Euclidean { .. } => None,
        }
    }
}

/// Generates the single-crossing sequence as an explicit domain in generation order.
pub fn sample_sc(m: usize, seed: u64) -> Result<DomainSpec> {
    Ok(DomainSpec::Explicit {
        members: single_crossing_sequence(m, seed)?,
    })
}

/// The 4-alignment domain: candidate `i * base_m + j` is copy `i` of `j`.
pub fn four_alignment(base_m: usize) -> Result<DomainSpec> {
    let spec = DomainSpec::FourAlignment { base_m };
    spec.validate()?;
    Ok(spec)
}

/// Concatenates four re-indexed copies of `u`.
pub fn four_alignment_image(u: &Ranking) -> Ranking {
    let b = u.len();
    let perm = (0..4)
        .flat_map(|i| u.as_slice().iter().map(move |&c| i * b + c))
        .collect();
    Ranking::from_vec_unchecked(perm)
}

/// All members of `spec`, duplicate-free.
///
/// Single-crossing and explicit domains keep their sequence order; all other
/// families come out in lexicographic order.
pub fn enumerate_domain(spec: &DomainSpec) -> Result<Vec<Ranking>> {
    spec.validate()?;
    if let Some(size) = spec.predicted_size() {
        if size > MAX_DOMAIN_SIZE {
            return Err(Error::Resource(format!(
                "domain has {size} members, above the limit of {MAX_DOMAIN_SIZE}"
            )));
        }
    }
    let limit = MAX_DOMAIN_SIZE as usize;
    let mut out = match spec {
        DomainSpec::SpAxis { axis } => CandidateGraph::path(axis).single_peaked_rankings(limit)?,
        DomainSpec::Spoc { cycle } => CandidateGraph::cycle(cycle).single_peaked_rankings(limit)?,
        DomainSpec::SpTree { tree } => tree.single_peaked_rankings(limit)?,
        DomainSpec::SpGraph { graph } => graph.single_peaked_rankings(limit)?,
        DomainSpec::GsTree { tree } => tree.enumerate(),
        DomainSpec::GsCat { m } => GsTree::caterpillar(*m)?.enumerate(),
        DomainSpec::GsBal { m } => GsTree::balanced(*m)?.enumerate(),
        DomainSpec::SpDf { m } => build_sp_df(*m)?.single_peaked_rankings(limit)?,
        DomainSpec::SingleCrossing { m, seed } => return single_crossing_sequence(*m, *seed),
        DomainSpec::Euclidean { points } => points.enumerate(0).0,
        DomainSpec::Explicit { members } => return Ok(members.clone()),
        DomainSpec::FourAlignment { base_m } => enumerate_all(*base_m)?
            .map(|u| four_alignment_image(&u))
            .collect(),
    };
    out.sort();
    Ok(out)
}

/// Whether `v` belongs to the domain of `spec`.
pub fn is_member(spec: &DomainSpec, v: &Ranking) -> Result<bool> {
    check_dim(spec.m(), v.len())?;
    let s = v.as_slice();
    Ok(match spec {
        DomainSpec::SpAxis { axis } => is_interval_peaked(axis, s, false),
        DomainSpec::Spoc { cycle } => is_interval_peaked(cycle, s, true),
        DomainSpec::SpTree { tree } => tree.is_single_peaked(s),
        DomainSpec::SpGraph { graph } => graph.is_single_peaked(s),
        DomainSpec::GsTree { tree } => tree.is_member(v),
        DomainSpec::GsCat { .. } => is_up_down(s),
        DomainSpec::GsBal { m } => GsTree::balanced(*m)?.is_member(v),
        DomainSpec::SpDf { m } => build_sp_df(*m)?.is_single_peaked(s),
        DomainSpec::SingleCrossing { m, seed } => single_crossing_sequence(*m, *seed)?.contains(v),
        DomainSpec::Euclidean { points } => points.is_member(v),
        DomainSpec::Explicit { members } => members.contains(v),
        DomainSpec::FourAlignment { base_m } => {
            let b = *base_m;
            let head = &s[..b];
            head.iter().all(|&c| c < b)
                && (1..4).all(|i| (0..b).all(|j| s[i * b + j] == i * b + head[j]))
        }
    })
}

/// Every prefix of `v` is a contiguous stretch of `order`, read as a path or,
/// with `cyclic`, as a cycle.
fn is_interval_peaked(order: &Ranking, v: &[usize], cyclic: bool) -> bool {
    let m = v.len();
    if m <= 2 {
        return true;
    }
    let pos = order.positions();
    // the prefix covers positions lo, lo+1, ..., lo+len-1 (mod m when cyclic)
    let mut lo = pos[v[0]];
    let mut len = 1;
    for &c in &v[1..] {
        let p = pos[c];
        let before = (lo + m - 1) % m;
        let after = (lo + len) % m;
        if p == before && (cyclic || lo > 0) {
            lo = before;
        } else if p == after && (cyclic || lo + len < m) {
        } else {
            return false;
        }
        len += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn brute(spec: &DomainSpec) -> Vec<Ranking> {
        enumerate_all(spec.m())
            .unwrap()
            .filter(|v| is_member(spec, v).unwrap())
            .collect()
    }

    fn sorted(mut v: Vec<Ranking>) -> Vec<Ranking> {
        v.sort();
        v
    }

    #[test]
    fn table_sizes_at_eight() {
        assert_eq!(enumerate_domain(&DomainSpec::sp(8)).unwrap().len(), 128);
        assert_eq!(enumerate_domain(&DomainSpec::spoc(8)).unwrap().len(), 512);
        assert_eq!(enumerate_domain(&DomainSpec::SpDf { m: 8 }).unwrap().len(), 496);
        assert_eq!(enumerate_domain(&sample_sc(8, 1).unwrap()).unwrap().len(), 29);
    }

    #[test]
    fn gs_cat_three() {
        let spec = DomainSpec::GsCat { m: 3 };
        let members = enumerate_domain(&spec).unwrap();
        let expected: Vec<Ranking> = ["0 1 2", "0 2 1", "1 2 0", "2 1 0"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(members, expected);
        assert_eq!(brute(&spec), expected);
    }

    #[test]
    fn membership_examples() {
        let sp = DomainSpec::sp(4);
        assert!(is_member(&sp, &"1 2 0 3".parse().unwrap()).unwrap());
        assert!(!is_member(&sp, &"0 3 1 2".parse().unwrap()).unwrap());
        let cat = DomainSpec::GsCat { m: 4 };
        assert!(is_member(&cat, &"0 1 3 2".parse().unwrap()).unwrap());
        assert!(!is_member(&cat, &"0 2 1 3".parse().unwrap()).unwrap());
        let v: Ranking = "2 0 1".parse().unwrap();
        assert!(is_member(&DomainSpec::Explicit { members: vec![v.clone()] }, &v).unwrap());
        assert!(is_member(&sp, &Ranking::identity(3)).is_err());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for m in 1..=6 {
            let mut specs = vec![
                DomainSpec::sp(m),
                DomainSpec::spoc(m),
                DomainSpec::GsCat { m },
                DomainSpec::GsBal { m },
                DomainSpec::SpAxis { axis: Ranking::random(m, &mut rng) },
                DomainSpec::Spoc { cycle: Ranking::random(m, &mut rng) },
                DomainSpec::GsTree { tree: GsTree::random(m, &mut rng).unwrap() },
            ];
            if m >= 2 {
                specs.push(DomainSpec::SingleCrossing { m, seed: 3 });
            }
            if m >= 5 {
                specs.push(DomainSpec::SpDf { m });
            }
            for spec in &specs {
                let members = enumerate_domain(spec).unwrap();
                assert_eq!(sorted(members.clone()), brute(spec), "{spec:?}");
                if let Some(size) = spec.predicted_size() {
                    assert_eq!(members.len() as u128, size, "{spec:?}");
                }
            }
        }
    }

    #[test]
    fn four_alignment_members() {
        let one = enumerate_domain(&four_alignment(1).unwrap()).unwrap();
        assert_eq!(one, vec![Ranking::identity(4)]);
        let spec = four_alignment(3).unwrap();
        let members = enumerate_domain(&spec).unwrap();
        assert_eq!(members.len(), 6);
        assert!(members.iter().all(|v| is_member(&spec, v).unwrap()));
        assert!(!is_member(&spec, &Ranking::identity(12).reverse()).unwrap());
        assert!(four_alignment(5).is_err());
    }

    #[test]
    fn explicit_validation() {
        let v = Ranking::identity(3);
        assert!(DomainSpec::explicit(vec![v.clone(), v.clone()]).is_err());
        assert!(DomainSpec::explicit(vec![]).is_err());
        assert!(DomainSpec::explicit(vec![v, Ranking::identity(2)]).is_err());
    }

    #[test]
    fn size_guard() {
        assert!(matches!(
            enumerate_domain(&DomainSpec::sp(40)),
            Err(Error::Resource(_))
        ));
    }
}
