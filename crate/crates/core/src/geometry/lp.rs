//! Dense primal simplex for the "smallest uniform slack" problem
//!
//! ```text
//! minimise s  subject to  |a_i · y + b_i| ≤ 1 + s,   y ∈ ℝ^d, s ∈ ℝ.
//! ```
//!
//! With `u = s + 1 ≥ 0` and `y = y⁺ − y⁻` every constraint becomes
//! `±(a_i·y⁺ − a_i·y⁻) − u ≤ ∓b_i`. Pivoting `u` into the row with the most
//! negative right-hand side gives a feasible starting basis at once, after
//! which plain phase-2 iterations minimise `u`.

use crate::error::{Error, Result};

/// Smallest magnitude accepted as a pivot or as a negative reduced cost.
pub const PIVOT_TOL: f64 = 1e-11;

/// Dantzig pricing switches to Bland's rule after this many pivots without
/// objective progress.
const STALL_LIMIT: usize = 50;

#[derive(Debug, Clone)]
pub struct MaxViolationLp {
    dim: usize,
    coeffs: Vec<f64>,
    offsets: Vec<f64>,
}

impl MaxViolationLp {
    /// `coeffs` holds the `a_i` row by row (`offsets.len() × dim`).
    pub fn new(dim: usize, coeffs: Vec<f64>, offsets: Vec<f64>) -> Result<Self> {
        if offsets.is_empty() || coeffs.len() != dim * offsets.len() {
            return Err(Error::domain(
                "LP",
                format!(
                    "{} coefficients for {} rows of width {dim}",
                    coeffs.len(),
                    offsets.len()
                ),
            ));
        }
        Ok(Self {
            dim,
            coeffs,
            offsets,
        })
    }

    /// Optimal slack `s*`.
    pub fn solve(&self) -> Result<f64> {
        self.run(f64::NEG_INFINITY)
    }

    /// Whether `s* ≤ eps`; stops as soon as a basis with slack `≤ eps` is found.
    pub fn slack_at_most(&self, eps: f64) -> Result<bool> {
        Ok(self.run(eps)? <= eps)
    }

    fn run(&self, stop_at: f64) -> Result<f64> {
        let d = self.dim;
        let rows = 2 * self.offsets.len();
        let u_col = 2 * d;
        let cols = 2 * d + 1 + rows;
        let width = cols + 1;
        let rhs = cols;

        let mut t = vec![0.0; rows * width];
        for (i, &b) in self.offsets.iter().enumerate() {
            let a = &self.coeffs[i * d..(i + 1) * d];
            for (sign, r) in [(1.0, 2 * i), (-1.0, 2 * i + 1)] {
                let row = &mut t[r * width..(r + 1) * width];
                for c in 0..d {
                    row[c] = sign * a[c];
                    row[d + c] = -sign * a[c];
                }
                row[u_col] = -1.0;
                row[2 * d + 1 + r] = 1.0;
                row[rhs] = -sign * b;
            }
        }
        let mut basis: Vec<usize> = (0..rows).map(|r| 2 * d + 1 + r).collect();
        let mut obj = vec![0.0; width];
        obj[u_col] = 1.0;

        let start = (0..rows)
            .min_by(|&p, &q| t[p * width + rhs].total_cmp(&t[q * width + rhs]))
            .expect("at least one row");
        if t[start * width + rhs] >= 0.0 {
            // u = 0 is feasible, and u ≥ 0
            return Ok(-1.0);
        }
        pivot(&mut t, &mut obj, width, start, u_col);
        basis[start] = u_col;

        let limit = 50 * cols + 1000;
        let mut stalled = 0usize;
        let mut value = -obj[rhs] - 1.0;
        for _ in 0..limit {
            if value <= stop_at {
                return Ok(value);
            }
            let entering = if stalled >= STALL_LIMIT {
                (0..cols).find(|&c| obj[c] < -PIVOT_TOL)
            } else {
                (0..cols)
                    .filter(|&c| obj[c] < -PIVOT_TOL)
                    .min_by(|&p, &q| obj[p].total_cmp(&obj[q]))
            };
            let Some(q) = entering else {
                return Ok(value);
            };

            let mut leave: Option<(usize, f64)> = None;
            for r in 0..rows {
                let a = t[r * width + q];
                if a > PIVOT_TOL {
                    let ratio = t[r * width + rhs] / a;
                    let better = match leave {
                        None => true,
                        Some((best, best_ratio)) => {
                            ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[best])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else {
                // u is bounded below by 0, so this only happens through round-off
                return Err(Error::Degenerate(
                    "max-violation LP reported unbounded".into(),
                ));
            };
            pivot(&mut t, &mut obj, width, r, q);
            basis[r] = q;

            let next = -obj[rhs] - 1.0;
            if next < value - 1e-14 * value.abs().max(1.0) {
                stalled = 0;
            } else {
                stalled += 1;
            }
            value = next;
        }
        Err(Error::LpIterationLimit { limit })
    }
}

fn pivot(t: &mut [f64], obj: &mut [f64], width: usize, r: usize, q: usize) {
    let rows = t.len() / width;
    let p = t[r * width + q];
    for v in &mut t[r * width..(r + 1) * width] {
        *v /= p;
    }
    t[r * width + q] = 1.0;
    let (head, tail) = t.split_at_mut(r * width);
    let (prow, rest) = tail.split_at_mut(width);
    let eliminate = |row: &mut [f64]| {
        let f = row[q];
        if f != 0.0 {
            for (v, &pv) in row.iter_mut().zip(prow.iter()) {
                *v -= f * pv;
            }
            row[q] = 0.0;
        }
    };
    for i in 0..r {
        eliminate(&mut head[i * width..(i + 1) * width]);
    }
    for i in 0..(rows - r - 1) {
        eliminate(&mut rest[i * width..(i + 1) * width]);
    }
    eliminate(obj);
}

/// Optimal slack `min_y max_i |a_i·y + b_i| − 1`.
pub fn min_max_violation(dim: usize, coeffs: &[f64], offsets: &[f64]) -> Result<f64> {
    MaxViolationLp::new(dim, coeffs.to_vec(), offsets.to_vec())?.solve()
}
