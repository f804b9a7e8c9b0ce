//! Distance from a ranking to the nearest member of a domain.

mod brute;
mod gs;
mod listed;
mod sp;
mod sp_tree;
mod spoc;

pub use brute::{dist_bruteforce, BruteForceOracle};
pub use gs::{dist_gs, dist_gs_bal, dist_gs_cat, GsBalOracle, GsCatOracle, GsOracle};
pub use listed::{build_listed_oracle, dist_listed, ListedOracle, ListedShape};
pub use sp::{dist_sp, SpOracle};
pub use sp_tree::{dist_sp_tree, SpTreeOracle, MAX_TREE_LEAVES};
pub use spoc::{dist_spoc, SpocOracle};

use crate::domain::{build_sp_df, enumerate_domain, DomainSpec};
use crate::error::Result;
use crate::ranking::Ranking;

/// A preprocessed domain answering `swap(D, v)` queries.
pub trait DistanceOracle: Send + Sync {
    fn num_candidates(&self) -> usize;

    /// Smallest swap distance from `v` to a member of the domain.
    fn distance(&self, v: &Ranking) -> Result<usize>;
}

/// Builds the fastest available oracle for `spec`.
///
/// General graphs and 4-alignment domains have no fast algorithm and fall
/// back to brute force over the enumerated members.
pub fn oracle_for(spec: &DomainSpec) -> Result<Box<dyn DistanceOracle>> {
    spec.validate()?;
    Ok(match spec {
        DomainSpec::SpAxis { axis } => Box::new(SpOracle::new(axis.clone())),
        DomainSpec::Spoc { cycle } => Box::new(SpocOracle::new(cycle.clone())),
        DomainSpec::SpTree { tree } => Box::new(SpTreeOracle::new(tree)?),
        DomainSpec::SpDf { m } => Box::new(SpTreeOracle::new(&build_sp_df(*m)?)?),
        DomainSpec::GsTree { tree } => Box::new(GsOracle::new(tree)),
        DomainSpec::GsCat { m } => Box::new(GsCatOracle::new(*m)),
        DomainSpec::GsBal { m } => Box::new(GsBalOracle::new(*m)),
        DomainSpec::SingleCrossing { .. } => {
            Box::new(build_listed_oracle(&enumerate_domain(spec)?, ListedShape::Path)?)
        }
        DomainSpec::Euclidean { .. } => {
            Box::new(build_listed_oracle(&enumerate_domain(spec)?, ListedShape::Tree)?)
        }
        DomainSpec::Explicit { members } => listed_or_brute(members),
        DomainSpec::SpGraph { .. } | DomainSpec::FourAlignment { .. } => {
            Box::new(BruteForceOracle::new(enumerate_domain(spec)?)?)
        }
    })
}

/// Oracle for an arbitrary member list: a path if consecutive members differ
/// by one swap, a spanning tree if the swap graph is connected, otherwise
/// brute force.
pub fn listed_or_brute(members: &[Ranking]) -> Box<dyn DistanceOracle> {
    if let Ok(o) = build_listed_oracle(members, ListedShape::Path) {
        return Box::new(o);
    }
    if let Ok(o) = build_listed_oracle(members, ListedShape::Tree) {
        return Box::new(o);
    }
    Box::new(BruteForceOracle::new(members.to_vec()).expect("validated members are nonempty"))
}
