use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::householder_qr;

/// Orthonormal basis of a `k`-dimensional subspace of `ℝ^n`, stored as an
/// `n × k` row-major matrix whose columns are the basis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis {
    n: usize,
    k: usize,
    entries: Vec<f64>,
}

/// Orthonormality tolerance `|BᵀB − I|_max`.
const ORTHO_TOL: f64 = 1e-12;

impl SubspaceBasis {
    /// Wraps an `n × k` row-major matrix after checking that its columns are
    /// orthonormal.
    pub fn from_rows(n: usize, k: usize, entries: Vec<f64>) -> Result<Self> {
        if k == 0 || k > n || entries.len() != n * k {
            return Err(Error::domain(
                "basis",
                format!(
                    "{} entries do not form an {n}×{k} matrix with 1 ≤ k ≤ n",
                    entries.len()
                ),
            ));
        }
        let basis = Self { n, k, entries };
        let dev = basis.orthonormality_error();
        if dev > ORTHO_TOL {
            return Err(Error::domain(
                "basis",
                format!("columns not orthonormal (deviation {dev:e})"),
            ));
        }
        Ok(basis)
    }

    /// Basis spanning the given coordinate axes (0-based) of `ℝ^n`.
    pub fn coordinate(n: usize, axes: &[usize]) -> Result<Self> {
        let k = axes.len();
        let mut entries = vec![0.0; n * k];
        for (c, &axis) in axes.iter().enumerate() {
            if axis >= n {
                return Err(Error::domain("axis", format!("{axis} ≥ {n}")));
            }
            entries[axis * k + c] = 1.0;
        }
        Self::from_rows(n, k, entries)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    /// Row `i`: the coordinates of the `i`-th standard functional restricted to
    /// the subspace.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.k..(i + 1) * self.k]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// The point `B c` of `ℝ^n`.
    pub fn embed(&self, coords: &[f64]) -> Vec<f64> {
        debug_assert_eq!(coords.len(), self.k);
        (0..self.n).map(|i| dot(self.row(i), coords)).collect()
    }

    pub fn orthonormality_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in 0..self.k {
            for b in a..self.k {
                let g: f64 = (0..self.n)
                    .map(|i| self.entries[i * self.k + a] * self.entries[i * self.k + b])
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Haar-random `k`-dimensional subspace of `ℝ^n`: QR of an `n × k` Gaussian
/// matrix with the diagonal of `R` made positive.
pub fn sample_subspace<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<SubspaceBasis> {
    if k < 1 || k >= n {
        return Err(Error::domain(
            "(n, k)",
            format!("need 1 ≤ k < n, got ({n}, {k})"),
        ));
    }
    for _ in 0..2 {
        let gauss: Vec<f64> = (0..n * k).map(|_| rng.sample(StandardNormal)).collect();
        let qr = householder_qr(&gauss, n, k, k);
        let scale = (n as f64).sqrt();
        if (0..k).any(|c| qr.r_diag(c) <= 1e-10 * scale) {
            continue;
        }
        let entries = (0..n)
            .flat_map(|i| (0..k).map(move |c| (i, c)))
            .map(|(i, c)| qr.q_at(i, c))
            .collect();
        return Ok(SubspaceBasis { n, k, entries });
    }
    Err(Error::Degenerate(
        "Gaussian matrix numerically rank deficient twice".into(),
    ))
}
