use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::{check_size, pair_distance};
use crate::error::{Error, Result};
use crate::ranking::{enumerate_all, factorial, max_distance, Ranking};

/// The LP has `(m!)^2` assignment variables; m = 6 already gives half a million.
pub const MAX_LP_M: usize = 6;
/// Largest number of candidate center sets the exact search will visit.
pub const MAX_KMEDIAN_SUBSETS: u128 = 300_000;

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn distance_matrix(all: &[Ranking]) -> Vec<Vec<u8>> {
    all.iter()
        .map(|u| {
            let pos = u.positions();
            all.iter().map(|w| pair_distance(&pos, w.as_slice()) as u8).collect()
        })
        .collect()
}

struct Search<'a> {
    d: &'a [Vec<u8>],
    k: usize,
    chosen: Vec<usize>,
    best: Option<(u64, Vec<usize>)>,
}

impl Search<'_> {
    fn descend(&mut self, next: usize, mins: &[u8]) {
        if self.chosen.len() == self.k {
            let total: u64 = mins.iter().map(|&x| x as u64).sum();
            if self.best.as_ref().is_none_or(|(b, _)| total < *b) {
                self.best = Some((total, self.chosen.clone()));
            }
            return;
        }
        let n = self.d.len();
        let remaining = self.k - self.chosen.len();
        let mut child = vec![0u8; n];
        for c in next..=n - remaining {
            for (x, (&a, &b)) in child.iter_mut().zip(mins.iter().zip(&self.d[c])) {
                *x = a.min(b);
            }
            self.chosen.push(c);
            self.descend(c + 1, &child);
            self.chosen.pop();
        }
    }
}

/// Optimal domain of size `k`: the `k` rankings minimizing the total
/// distance from all `m!` rankings to their nearest one. Returns the
/// lexicographically first optimal set (always containing the identity) and
/// its out-div.
///
/// Relabelling candidates preserves swap distance, so one center can be
/// fixed to the identity; the remaining `C(m! - 1, k - 1)` sets are searched
/// exhaustively.
pub fn exact_kmedian(m: usize, k: usize) -> Result<(Vec<Ranking>, f64)> {
    check_size(m, k)?;
    if m > MAX_LP_M {
        return Err(Error::Resource(format!("exact k-median needs m <= {MAX_LP_M}, got {m}")));
    }
    let all: Vec<Ranking> = enumerate_all(m)?.collect();
    let n = all.len();
    if k == n {
        return Ok((all, 1.0));
    }
    let sets = binomial(n as u128 - 1, k as u128 - 1);
    if sets > MAX_KMEDIAN_SUBSETS {
        return Err(Error::Resource(format!(
            "exact k-median for m={m}, k={k} would visit {sets} sets (limit {MAX_KMEDIAN_SUBSETS})"
        )));
    }
    let d = distance_matrix(&all);
    let mut search = Search {
        d: &d,
        k,
        chosen: vec![0],
        best: None,
    };
    search.descend(1, &d[0]);
    let (total, chosen) = search.best.expect("at least one set is visited");
    let norm = factorial(m) as f64 * max_distance(m).max(1) as f64;
    Ok((chosen.into_iter().map(|i| all[i].clone()).collect(), 1.0 - 2.0 * total as f64 / norm))
}

const TERMS_PER_LINE: usize = 8;

fn write_sum<W: Write>(w: &mut W, terms: impl Iterator<Item = String>) -> std::io::Result<()> {
    for (i, t) in terms.enumerate() {
        if i > 0 {
            if i % TERMS_PER_LINE == 0 {
                write!(w, "\n   + ")?;
            } else {
                write!(w, " + ")?;
            }
        }
        write!(w, "{t}")?;
    }
    Ok(())
}

/// Writes the k-median binary program over all rankings of `m` candidates
/// in CPLEX LP format. Ranking `u_i` is the `i`-th in lexicographic order;
/// `y_i` selects `u_i` and `x_i_j = 1` assigns `u_j` to the selected `u_i`.
pub fn write_kmedian_lp<W: Write>(m: usize, k: usize, w: &mut W) -> Result<()> {
    check_size(m, k)?;
    if m > MAX_LP_M {
        return Err(Error::Resource(format!("LP export needs m <= {MAX_LP_M}, got {m}")));
    }
    let all: Vec<Ranking> = enumerate_all(m)?.collect();
    let n = all.len();
    let d = distance_matrix(&all);
    writeln!(w, "\\ k-median over all {n} rankings of {m} candidates, k = {k}")?;
    for (i, u) in all.iter().enumerate() {
        writeln!(w, "\\ u_{i} = {u}")?;
    }
    writeln!(w, "Minimize")?;
    write!(w, " obj: ")?;
    write_sum(w, (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| format!("{} x_{i}_{j}", d[i][j])))?;
    writeln!(w, "\nSubject To")?;
    for j in 0..n {
        write!(w, " assign_{j}: ")?;
        write_sum(w, (0..n).map(|i| format!("x_{i}_{j}")))?;
        writeln!(w, " = 1")?;
    }
    for i in 0..n {
        for j in 0..n {
            writeln!(w, " open_{i}_{j}: x_{i}_{j} - y_{i} <= 0")?;
        }
    }
    write!(w, " count: ")?;
    write_sum(w, (0..n).map(|i| format!("y_{i}")))?;
    writeln!(w, " = {k}")?;
    writeln!(w, "Binary")?;
    for i in 0..n {
        writeln!(w, " y_{i}")?;
    }
    for i in 0..n {
        for j in 0..n {
            writeln!(w, " x_{i}_{j}")?;
        }
    }
    writeln!(w, "End")?;
    Ok(())
}

pub fn kmedian_lp(m: usize, k: usize) -> Result<String> {
    let mut buf = Vec::new();
    write_kmedian_lp(m, k, &mut buf)?;
    Ok(String::from_utf8(buf).expect("LP text is ASCII"))
}

pub fn export_kmedian_lp(m: usize, k: usize, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_kmedian_lp(m, k, &mut w)?;
    w.flush()?;
    Ok(())
}
