//! Outer diversity of ordinal preference domains.
//!
//! The crate builds structured domains of rankings (single-peaked,
//! group-separable, single-crossing, Euclidean, ...), measures how far
//! arbitrary rankings are from them, and averages those distances over the
//! whole ranking space.

pub mod distance;
pub mod diversity;
pub mod domain;
pub mod error;
pub mod experiments;
pub mod fenwick;
pub mod maxdiverse;
pub mod ranking;
pub mod ranking_set;

pub use domain::{enumerate_domain, is_member, DomainSpec};
pub use error::{Error, Result};
pub use ranking::{swap_distance, Ranking};
pub use ranking_set::RankingSet;
