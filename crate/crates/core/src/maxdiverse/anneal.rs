use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_size, ic_domain, pair_distance};
use crate::error::{Error, Result};
use crate::ranking::{enumerate_all, factorial, max_distance, Ranking};

/// Up to this `m` the energy is the exact out-div over all `m!` rankings.
pub const MAX_EXACT_ENERGY_M: usize = 6;
/// Size of the fixed sample pool standing in for all rankings above that.
pub const POOL_SIZE: usize = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnealingParams {
    pub initial_temperature: f64,
    pub cooling_rate: f64,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for AnnealingParams {
    fn default() -> Self {
        AnnealingParams {
            initial_temperature: 0.5,
            cooling_rate: 0.95,
            max_iterations: 256,
            seed: 0,
        }
    }
}

impl AnnealingParams {
    pub fn with_seed(seed: u64) -> Self {
        AnnealingParams { seed, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        if !(self.cooling_rate > 0.0 && self.cooling_rate < 1.0) {
            return Err(Error::Argument(format!("cooling rate must lie in (0, 1), got {}", self.cooling_rate)));
        }
        if !(self.initial_temperature > 0.0 && self.initial_temperature.is_finite()) {
            return Err(Error::Argument(format!(
                "initial temperature must be positive, got {}",
                self.initial_temperature
            )));
        }
        Ok(())
    }
}

/// Result of one annealing run. Energies are out-div values on the run's
/// evaluation pool.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnealOutcome {
    pub members: Vec<Ranking>,
    pub energy: f64,
    pub initial_energy: f64,
    pub accepted: usize,
}

/// Nearest and second-nearest member of every pool ranking, by slot.
struct Tracker {
    m: usize,
    pool: Vec<Vec<usize>>,
    best1: Vec<u32>,
    slot1: Vec<u32>,
    best2: Vec<u32>,
    slot2: Vec<u32>,
    total: u64,
}

impl Tracker {
    fn new(m: usize, pool: Vec<Ranking>, members: &[Ranking]) -> Self {
        let pool: Vec<Vec<usize>> = pool.iter().map(Ranking::positions).collect();
        let n = pool.len();
        let mut t = Tracker {
            m,
            pool,
            best1: vec![0; n],
            slot1: vec![0; n],
            best2: vec![0; n],
            slot2: vec![0; n],
            total: 0,
        };
        for i in 0..n {
            t.rescan(i, members);
        }
        t.total = t.best1.iter().map(|&d| d as u64).sum();
        t
    }

    fn rescan(&mut self, i: usize, members: &[Ranking]) {
        // slot u32::MAX marks a missing second member (k = 1)
        let (mut b1, mut s1, mut b2, mut s2) = (u32::MAX, u32::MAX, u32::MAX, u32::MAX);
        for (s, u) in members.iter().enumerate() {
            let d = pair_distance(&self.pool[i], u.as_slice()) as u32;
            if d < b1 {
                (b2, s2) = (b1, s1);
                (b1, s1) = (d, s as u32);
            } else if d < b2 {
                (b2, s2) = (d, s as u32);
            }
        }
        self.best1[i] = b1;
        self.slot1[i] = s1;
        self.best2[i] = b2;
        self.slot2[i] = s2;
    }

    fn energy(&self, total: u64) -> f64 {
        let norm = self.pool.len() as f64 * max_distance(self.m).max(1) as f64;
        1.0 - 2.0 * total as f64 / norm
    }

    fn distances(&self, v: &Ranking) -> Vec<u32> {
        self.pool.iter().map(|p| pair_distance(p, v.as_slice()) as u32).collect()
    }

    /// Total nearest distance if the member in `slot` were replaced.
    fn total_after(&self, slot: usize, incoming: &[u32]) -> u64 {
        (0..self.pool.len())
            .map(|i| {
                let rest = if self.slot1[i] as usize == slot { self.best2[i] } else { self.best1[i] };
                rest.min(incoming[i]) as u64
            })
            .sum()
    }

    /// `members` must already hold the new ranking in `slot`.
    fn commit(&mut self, slot: usize, incoming: &[u32], members: &[Ranking], total: u64) {
        let slot = slot as u32;
        for i in 0..self.pool.len() {
            let d = incoming[i];
            if self.slot1[i] == slot || self.slot2[i] == slot {
                self.rescan(i, members);
            } else if d < self.best1[i] {
                self.best2[i] = self.best1[i];
                self.slot2[i] = self.slot1[i];
                self.best1[i] = d;
                self.slot1[i] = slot;
            } else if d < self.best2[i] {
                self.best2[i] = d;
                self.slot2[i] = slot;
            }
        }
        self.total = total;
        debug_assert_eq!(self.total, self.best1.iter().map(|&d| d as u64).sum::<u64>());
    }
}

/// Simulated annealing over domains of size `k`: each step replaces a random
/// member by a fresh uniform ranking, accepting a worse set with probability
/// `exp((E_new - E_current) / T)`. Returns the best set seen.
pub fn simulated_annealing(m: usize, k: usize, params: AnnealingParams) -> Result<Vec<Ranking>> {
    Ok(anneal(m, k, params)?.members)
}

/// [`simulated_annealing`] with its energy trace.
pub fn anneal(m: usize, k: usize, params: AnnealingParams) -> Result<AnnealOutcome> {
    params.validate()?;
    check_size(m, k)?;
    let mut members = ic_domain(m, k, params.seed)?;
    let full = m < 34 && k as u128 == factorial(m);
    let pool = if m <= MAX_EXACT_ENERGY_M {
        enumerate_all(m)?.collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        rng.set_stream(2);
        (0..POOL_SIZE).map(|_| Ranking::random(m, &mut rng)).collect()
    };
    let mut tracker = Tracker::new(m, pool, &members);
    let initial_energy = tracker.energy(tracker.total);
    let mut outcome = AnnealOutcome {
        members: members.clone(),
        energy: initial_energy,
        initial_energy,
        accepted: 0,
    };
    if full {
        return Ok(outcome);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(1);
    let mut present: HashSet<Ranking> = members.iter().cloned().collect();
    let mut temperature = params.initial_temperature;
    for _ in 0..params.max_iterations {
        let slot = rng.random_range(0..k);
        let incoming = loop {
            let v = Ranking::random(m, &mut rng);
            if !present.contains(&v) {
                break v;
            }
        };
        let dists = tracker.distances(&incoming);
        let total = tracker.total_after(slot, &dists);
        let (current, next) = (tracker.energy(tracker.total), tracker.energy(total));
        let accept = next >= current || rng.random::<f64>() < ((next - current) / temperature).exp();
        if accept {
            present.remove(&members[slot]);
            present.insert(incoming.clone());
            members[slot] = incoming;
            tracker.commit(slot, &dists, &members, total);
            outcome.accepted += 1;
            if next > outcome.energy {
                outcome.energy = next;
                outcome.members.clone_from(&members);
            }
        }
        temperature *= params.cooling_rate;
    }
    Ok(outcome)
}
