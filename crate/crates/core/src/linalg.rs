//! Householder QR on small row-major matrices.

/// `A = Q R` for a `rows × cols` matrix with `rows ≥ cols`.
///
/// `q` is `rows × rows` orthogonal and `r` is `rows × cols` upper triangular,
/// signs normalised so that `r[i][i] ≥ 0`.
#[derive(Debug, Clone)]
pub(crate) struct Qr {
    pub rows: usize,
    pub cols: usize,
    pub q: Vec<f64>,
    pub r: Vec<f64>,
}

impl Qr {
    pub fn r_diag(&self, i: usize) -> f64 {
        self.r[i * self.cols + i]
    }

    pub fn q_at(&self, i: usize, j: usize) -> f64 {
        self.q[i * self.rows + j]
    }
}

/// Factorises `a` (row-major, `rows × cols`). Only the first `q_cols` columns of
/// `Q` are accumulated; columns past `q_cols` stay zero.
pub(crate) fn householder_qr(a: &[f64], rows: usize, cols: usize, q_cols: usize) -> Qr {
    assert!(rows >= cols && a.len() == rows * cols && q_cols <= rows);
    let mut r = a.to_vec();
    let mut reflectors: Vec<Vec<f64>> = Vec::with_capacity(cols);

    for c in 0..cols {
        let norm = (c..rows)
            .map(|i| r[i * cols + c].powi(2))
            .sum::<f64>()
            .sqrt();
        let mut v: Vec<f64> = (c..rows).map(|i| r[i * cols + c]).collect();
        if norm == 0.0 {
            reflectors.push(Vec::new());
            continue;
        }
        let alpha = if v[0] >= 0.0 { -norm } else { norm };
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            reflectors.push(Vec::new());
            continue;
        }
        for j in c..cols {
            let dot: f64 = (c..rows).map(|i| v[i - c] * r[i * cols + j]).sum();
            let s = 2.0 * dot / vnorm2;
            for i in c..rows {
                r[i * cols + j] -= s * v[i - c];
            }
        }
        for i in (c + 1)..rows {
            r[i * cols + c] = 0.0;
        }
        reflectors.push(v);
    }

    // Q = H_0 H_1 ... H_{cols-1}; apply in reverse to the leading identity columns
    let mut q = vec![0.0; rows * rows];
    for j in 0..q_cols {
        q[j * rows + j] = 1.0;
    }
    for (c, v) in reflectors.iter().enumerate().rev() {
        if v.is_empty() {
            continue;
        }
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        for j in 0..q_cols {
            let dot: f64 = (c..rows).map(|i| v[i - c] * q[i * rows + j]).sum();
            let s = 2.0 * dot / vnorm2;
            for i in c..rows {
                q[i * rows + j] -= s * v[i - c];
            }
        }
    }

    for c in 0..cols {
        if r[c * cols + c] < 0.0 {
            for j in c..cols {
                r[c * cols + j] = -r[c * cols + j];
            }
            for i in 0..rows {
                q[i * rows + c] = -q[i * rows + c];
            }
        }
    }

    Qr { rows, cols, q, r }
}

/// Solves the square system `a x = b` by partial-pivoting elimination.
/// Returns `None` when a pivot falls below `pivot_tol` times the largest entry.
pub(crate) fn solve_square(a: &[f64], b: &[f64], pivot_tol: f64) -> Option<Vec<f64>> {
    let n = b.len();
    debug_assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    let scale = m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if scale == 0.0 {
        return None;
    }
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| m[i * n + c].abs().total_cmp(&m[j * n + c].abs()))
            .unwrap();
        if m[p * n + c].abs() <= pivot_tol * scale {
            return None;
        }
        if p != c {
            for j in 0..n {
                m.swap(p * n + j, c * n + j);
            }
            x.swap(p, c);
        }
        for i in (c + 1)..n {
            let f = m[i * n + c] / m[c * n + c];
            if f == 0.0 {
                continue;
            }
            for j in c..n {
                m[i * n + j] -= f * m[c * n + j];
            }
            x[i] -= f * x[c];
        }
    }
    for c in (0..n).rev() {
        let s: f64 = ((c + 1)..n).map(|j| m[c * n + j] * x[j]).sum();
        x[c] = (x[c] - s) / m[c * n + c];
    }
    Some(x)
}
