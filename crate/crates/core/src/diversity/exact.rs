use std::collections::{HashMap, HashSet};

use super::DiversityReport;
use crate::error::{check_dim, Error, Result};
use crate::ranking::{factorial, max_distance, Ranking};
use crate::ranking_set::RankingSet;

/// Exact diversity visits all `m!` rankings; beyond this it is refused.
pub const MAX_EXACT_M: usize = 10;

fn check_members(members: &[Ranking], max_m: usize) -> Result<usize> {
    let Some(first) = members.first() else {
        return Err(Error::Argument("domain is empty".into()));
    };
    let m = first.len();
    if m > max_m {
        return Err(Error::Resource(format!("exact computation needs m <= {max_m}, got {m}")));
    }
    for r in members {
        check_dim(m, r.len())?;
    }
    Ok(m)
}

/// Sizes of the layers `D_0 = D, D_1, ...` partitioning all rankings by
/// their distance to the domain, by BFS over adjacent transpositions.
pub fn distance_histogram(members: &[Ranking]) -> Result<Vec<u64>> {
    let m = check_members(members, MAX_EXACT_M)?;
    let mut seen = RankingSet::new(m)?;
    // frontiers are flat arrays of m-byte rankings
    let mut frontier: Vec<u8> = Vec::with_capacity(members.len() * m);
    for r in members {
        if !seen.insert(r.as_slice())? {
            return Err(Error::Validation(format!("duplicate ranking {r}")));
        }
        frontier.extend(r.as_slice().iter().map(|&c| c as u8));
    }
    let total = factorial(m) as u64;
    let mut layers = vec![members.len() as u64];
    let mut reached = members.len() as u64;
    let mut next: Vec<u8> = Vec::new();
    while reached < total {
        next.clear();
        for v in frontier.chunks_exact(m) {
            let mut w = v.to_vec();
            for i in 0..m - 1 {
                w.swap(i, i + 1);
                if seen.insert(&w)? {
                    next.extend_from_slice(&w);
                }
                w.swap(i, i + 1);
            }
        }
        let count = (next.len() / m) as u64;
        layers.push(count);
        reached += count;
        std::mem::swap(&mut frontier, &mut next);
    }
    Ok(layers)
}

/// Exact outer diversity from the BFS layering.
pub fn exact_outdiv(members: &[Ranking]) -> Result<DiversityReport> {
    let layers = distance_histogram(members)?;
    let m = members[0].len();
    let numerator: u64 = layers.iter().enumerate().map(|(i, &n)| i as u64 * n).sum();
    let denominator = factorial(m) as u64 * max_distance(m) as u64;
    let ansd = if denominator == 0 { 0.0 } else { numerator as f64 / denominator as f64 };
    Ok(DiversityReport {
        m,
        size: Some(members.len()),
        ansd,
        out_div: 1.0 - 2.0 * ansd,
        ansd_numerator: Some(numerator),
        layers: Some(layers),
        samples: None,
    })
}

/// `|D_1|` and `|D_1| / |D|`.
pub fn direct_neighborhood(members: &[Ranking]) -> Result<(u64, f64)> {
    let layers = distance_histogram(members)?;
    let d1 = layers.get(1).copied().unwrap_or(0);
    Ok((d1, d1 as f64 / members.len() as f64))
}

/// Per-member split of the direct neighbourhood.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodProfile {
    /// Neighbours outside the domain adjacent to this member only.
    pub unique: Vec<usize>,
    /// Neighbours outside the domain adjacent to this and other members.
    pub shared: Vec<usize>,
}

/// Counts, for each member, the outside rankings one swap away that no
/// other member reaches (unique) and those some other member also reaches.
pub fn neighborhood_profile(members: &[Ranking]) -> Result<NeighborhoodProfile> {
    check_members(members, usize::MAX)?;
    let inside: HashSet<&Ranking> = members.iter().collect();
    let mut touching: HashMap<Ranking, usize> = HashMap::new();
    for u in members {
        for i in 0..u.len().saturating_sub(1) {
            let w = u.swap_adjacent(i);
            if !inside.contains(&w) {
                *touching.entry(w).or_default() += 1;
            }
        }
    }
    let mut unique = Vec::with_capacity(members.len());
    let mut shared = Vec::with_capacity(members.len());
    for u in members {
        let (mut un, mut sh) = (0, 0);
        for i in 0..u.len().saturating_sub(1) {
            match touching.get(&u.swap_adjacent(i)) {
                Some(1) => un += 1,
                Some(_) => sh += 1,
                None => {}
            }
        }
        unique.push(un);
        shared.push(sh);
    }
    Ok(NeighborhoodProfile { unique, shared })
}
