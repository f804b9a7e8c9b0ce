use std::fmt::Write as _;

use serde::Serialize;

use super::popularity::{to_f64, PopularityTable};
use crate::ranking::{distance_from_positions, Ranking};

pub const TABLE_HEADER: &str = "family,m,size,ansd,outdiv,dist1,dist1_norm,std";

/// One line of the diversity table. Random families report means over
/// instances, so sizes and neighbourhoods may be fractional.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub family: String,
    pub m: usize,
    pub size: f64,
    pub ansd: f64,
    pub outdiv: f64,
    pub dist1: f64,
    pub dist1_norm: f64,
    /// Standard deviation of the sampling estimator, for sampled rows.
    pub std: Option<f64>,
}

/// Counts print as integers when they are whole, everything else with six decimals.
fn count(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x:.6}")
    }
}

impl TableRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{:.6},{:.6},{},{:.6},{}",
            self.family,
            self.m,
            count(self.size),
            self.ansd,
            self.outdiv,
            count(self.dist1),
            self.dist1_norm,
            self.std.map(|s| format!("{s:.6}")).unwrap_or_default()
        )
    }
}

pub fn layers_csv(layers: &[u64]) -> String {
    let mut out = String::from("distance,count\n");
    for (i, n) in layers.iter().enumerate() {
        let _ = writeln!(out, "{i},{n}");
    }
    out
}

pub fn popularity_csv(table: &PopularityTable) -> String {
    let mut out = String::from("ranking,pop,npop\n");
    for e in &table.entries {
        let _ = writeln!(out, "{},{:.6},{:.6}", e.ranking, to_f64(&e.pop), to_f64(&e.npop));
    }
    out
}

/// Square matrix of member distances. Row `i` starts with member `i`;
/// column `j` is headed by its index.
pub fn distance_matrix_csv(members: &[Ranking]) -> String {
    let mut out = String::from("ranking");
    for j in 0..members.len() {
        let _ = write!(out, ",{j}");
    }
    out.push('\n');
    for u in members {
        let pos = u.positions();
        out.push_str(&u.to_string());
        for w in members {
            let _ = write!(out, ",{}", distance_from_positions(&pos, w.as_slice()));
        }
        out.push('\n');
    }
    out
}
