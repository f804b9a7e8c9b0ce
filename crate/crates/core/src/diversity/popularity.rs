use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{check_dim, Error, Result};
use crate::ranking::{distance_from_positions, enumerate_all, factorial, Ranking};

/// Popularity scans all `m!` rankings against every member.
pub const MAX_POPULARITY_M: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct PopularityEntry {
    pub ranking: Ranking,
    /// Number of rankings whose nearest member is this one; ties among `p`
    /// nearest members contribute `1/p` each.
    pub pop: BigRational,
    /// `pop / (m! / |D|)`.
    pub npop: BigRational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PopularityTable {
    pub m: usize,
    pub entries: Vec<PopularityEntry>,
}

impl PopularityTable {
    pub fn total_pop(&self) -> BigRational {
        self.entries.iter().fold(BigRational::zero(), |acc, e| acc + &e.pop)
    }
}

pub(crate) fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact popularity of every member, in member order.
pub fn popularity(members: &[Ranking]) -> Result<PopularityTable> {
    let Some(first) = members.first() else {
        return Err(Error::Argument("domain is empty".into()));
    };
    let m = first.len();
    if m > MAX_POPULARITY_M {
        return Err(Error::Resource(format!("popularity needs m <= {MAX_POPULARITY_M}, got {m}")));
    }
    members.iter().try_for_each(|r| check_dim(m, r.len()))?;
    // per member: tie size p -> number of rankings with that many nearest members
    let mut ties: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); members.len()];
    let mut dist = vec![0usize; members.len()];
    let mut nearest = Vec::with_capacity(members.len());
    for u in enumerate_all(m)? {
        let pos = u.positions();
        let mut best = usize::MAX;
        for (d, w) in dist.iter_mut().zip(members) {
            *d = distance_from_positions(&pos, w.as_slice());
            best = best.min(*d);
        }
        nearest.clear();
        nearest.extend((0..members.len()).filter(|&i| dist[i] == best));
        for &i in &nearest {
            *ties[i].entry(nearest.len()).or_default() += 1;
        }
    }
    let scale = BigRational::new(BigInt::from(members.len()), BigInt::from(factorial(m)));
    let entries = members
        .iter()
        .zip(ties)
        .map(|(r, t)| {
            let pop = t.iter().fold(BigRational::zero(), |acc, (&p, &count)| {
                acc + BigRational::new(BigInt::from(count), BigInt::from(p))
            });
            let npop = &pop * &scale;
            PopularityEntry {
                ranking: r.clone(),
                pop,
                npop,
            }
        })
        .collect();
    Ok(PopularityTable { m, entries })
}
