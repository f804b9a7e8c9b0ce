use super::DistanceOracle;
use crate::error::{check_dim, Error, Result};
use crate::ranking::{distance_from_positions, Ranking};

/// Minimum swap distance from `v` to any of `members`.
pub fn dist_bruteforce(members: &[Ranking], v: &Ranking) -> Result<usize> {
    let Some(first) = members.first() else {
        return Err(Error::Argument("brute-force distance needs a nonempty domain".into()));
    };
    check_dim(first.len(), v.len())?;
    let pos = v.positions();
    let mut best = usize::MAX;
    for u in members {
        check_dim(first.len(), u.len())?;
        best = best.min(distance_from_positions(&pos, u.as_slice()));
        if best == 0 {
            break;
        }
    }
    Ok(best)
}

/// Reference oracle that scans every member.
#[derive(Debug, Clone)]
pub struct BruteForceOracle {
    members: Vec<Ranking>,
}

impl BruteForceOracle {
    pub fn new(members: Vec<Ranking>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::Argument("brute-force oracle needs a nonempty domain".into()));
        };
        let m = first.len();
        members.iter().try_for_each(|u| check_dim(m, u.len()))?;
        Ok(BruteForceOracle { members })
    }

    pub fn members(&self) -> &[Ranking] {
        &self.members
    }
}

impl DistanceOracle for BruteForceOracle {
    fn num_candidates(&self) -> usize {
        self.members[0].len()
    }

    fn distance(&self, v: &Ranking) -> Result<usize> {
        dist_bruteforce(&self.members, v)
    }
}
