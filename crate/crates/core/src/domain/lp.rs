//! Tiny dense simplex for the low-dimensional margin problems behind
//! Euclidean domain membership.

const PIVOT_EPS: f64 = 1e-12;
const MAX_PIVOTS: usize = 10_000;

/// One half-space `normal . x + margin <= rhs`.
#[derive(Debug, Clone)]
pub struct HalfSpace {
    pub normal: Vec<f64>,
    pub rhs: f64,
}

/// Maximizes `margin` subject to every half-space, the box `|x_j| <= bound`
/// and `margin <= cap`. Returns the optimal margin, which is negative when
/// the open region is empty.
pub fn max_margin(constraints: &[HalfSpace], dim: usize, bound: f64, cap: f64) -> f64 {
    // Shift to nonnegative variables x' = x + bound, e' = margin + shift so
    // that the origin is a feasible vertex and the slack basis can start.
    let shift = constraints
        .iter()
        .map(|h| -(h.rhs + bound * h.normal.iter().sum::<f64>()))
        .fold(0.0f64, f64::max);
    let nvars = dim + 1;
    let rows = constraints.len() + dim + 1;
    let cols = nvars + rows + 1;
    let rhs_col = cols - 1;
    let mut t = vec![0.0f64; (rows + 1) * cols];
    let at = |r: usize, c: usize| r * cols + c;

    for (i, h) in constraints.iter().enumerate() {
        for j in 0..dim {
            t[at(i, j)] = h.normal[j];
        }
        t[at(i, dim)] = 1.0;
        t[at(i, rhs_col)] = h.rhs + bound * h.normal.iter().sum::<f64>() + shift;
    }
    for j in 0..dim {
        let r = constraints.len() + j;
        t[at(r, j)] = 1.0;
        t[at(r, rhs_col)] = 2.0 * bound;
    }
    let cap_row = rows - 1;
    t[at(cap_row, dim)] = 1.0;
    t[at(cap_row, rhs_col)] = shift + cap;
    for r in 0..rows {
        t[at(r, nvars + r)] = 1.0;
    }
    // objective row stores -c
    t[at(rows, dim)] = -1.0;
    let mut basis: Vec<usize> = (nvars..nvars + rows).collect();

    for _ in 0..MAX_PIVOTS {
        // Bland's rule: lowest-index improving column
        let Some(enter) = (0..cols - 1).find(|&c| t[at(rows, c)] < -PIVOT_EPS) else {
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for r in 0..rows {
            let a = t[at(r, enter)];
            if a > PIVOT_EPS {
                let ratio = t[at(r, rhs_col)] / a;
                let better = match leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < best - PIVOT_EPS
                            || (ratio <= best + PIVOT_EPS && basis[r] < basis[lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        // bounded by construction; an unbounded column cannot occur
        let Some((pr, _)) = leave else { break };
        let pivot = t[at(pr, enter)];
        for c in 0..cols {
            t[at(pr, c)] /= pivot;
        }
        for r in 0..=rows {
            if r != pr {
                let factor = t[at(r, enter)];
                if factor != 0.0 {
                    for c in 0..cols {
                        t[at(r, c)] -= factor * t[at(pr, c)];
                    }
                }
            }
        }
        basis[pr] = enter;
    }
    t[at(rows, rhs_col)] - shift
}
