use crate::error::{Error, Result};
use crate::linalg::{householder_qr, solve_square};

use super::lp::MaxViolationLp;
use super::subspace::{dot, SubspaceBasis};

/// Default slack for boundary-grazing intersections.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Relative pivot threshold below which a fixed-row system counts as singular.
const SINGULAR_TOL: f64 = 1e-12;

/// Face of `[-1, 1]^n` given by fixing some coordinates to ±1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeFace {
    n: usize,
    /// `(index, sign)` with 0-based indices.
    fixed: Vec<(usize, i8)>,
}

impl CubeFace {
    /// `fixed` uses 0-based coordinate indices and signs ±1.
    pub fn new(n: usize, fixed: Vec<(usize, i8)>) -> Result<Self> {
        let mut seen = vec![false; n];
        for &(i, s) in &fixed {
            if i >= n || seen[i] || (s != 1 && s != -1) {
                return Err(Error::domain(
                    "cube face",
                    format!("bad fixed coordinate ({i}, {s})"),
                ));
            }
            seen[i] = true;
        }
        Ok(Self { n, fixed })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn fixed(&self) -> &[(usize, i8)] {
        &self.fixed
    }

    /// Dimension of the face, `n − |fixed|`.
    pub fn dim(&self) -> usize {
        self.n - self.fixed.len()
    }

    /// Indices of the coordinates left free on the face.
    pub fn free(&self) -> Vec<usize> {
        let mut free = vec![true; self.n];
        for &(i, _) in &self.fixed {
            free[i] = false;
        }
        (0..self.n).filter(|&i| free[i]).collect()
    }

    pub fn contains(&self, x: &[f64], eps: f64) -> bool {
        self.fixed
            .iter()
            .all(|&(i, s)| (x[i] - f64::from(s)).abs() <= eps)
            && x.iter().all(|v| v.abs() <= 1.0 + eps)
    }
}

/// The `(n−k+j)`-face fixing the last `k − j` coordinates to `+1`. All faces of
/// that dimension are equally likely to be hit, so this one stands for all.
pub fn canonical_face(j: usize, k: usize, n: usize) -> Result<CubeFace> {
    if !(j < k && k < n) {
        return Err(Error::domain(
            "(j, k, n)",
            format!("need 0 ≤ j < k < n, got ({j}, {k}, {n})"),
        ));
    }
    let first = n - (k - j);
    CubeFace::new(n, (first..n).map(|i| (i, 1)).collect())
}

/// Outcome of a face-intersection test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceHit {
    Hit,
    Miss,
    /// The fixed rows of the basis are numerically dependent; the sample should
    /// be excluded.
    Degenerate,
}

impl FaceHit {
    pub fn is_hit(self) -> bool {
        self == FaceHit::Hit
    }
}

/// Decides whether the subspace spanned by `basis` meets `face`.
///
/// With as many fixed coordinates as basis vectors the fixed rows determine a
/// unique candidate point, checked against the free rows. Otherwise the fixed
/// rows leave an affine family `c₀ + N y`, and the max-violation LP over `y`
/// decides whether some member satisfies every free row within `eps`.
pub fn face_hit(basis: &SubspaceBasis, face: &CubeFace, eps: f64) -> Result<FaceHit> {
    let k = basis.dim();
    let f = face.fixed().len();
    if basis.ambient_dim() != face.ambient_dim() || f > k || f == 0 {
        return Err(Error::domain(
            "face_hit",
            format!(
                "face fixes {f} of {} coordinates, subspace has dimension {k} in ℝ^{}",
                face.ambient_dim(),
                basis.ambient_dim()
            ),
        ));
    }
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::domain("eps", format!("{eps} must be positive")));
    }
    let free = face.free();

    if f == k {
        let a: Vec<f64> = face
            .fixed()
            .iter()
            .flat_map(|&(i, _)| basis.row(i).iter().copied())
            .collect();
        let rhs: Vec<f64> = face.fixed().iter().map(|&(_, s)| f64::from(s)).collect();
        let Some(c) = solve_square(&a, &rhs, SINGULAR_TOL) else {
            return Ok(FaceHit::Degenerate);
        };
        let inside = free
            .iter()
            .all(|&i| dot(basis.row(i), &c).abs() <= 1.0 + eps);
        return Ok(if inside { FaceHit::Hit } else { FaceHit::Miss });
    }

    // Aᵀ = Q R with A the f × k fixed-row block; A = R₁ᵀ Q₁ᵀ.
    let mut at = vec![0.0; k * f];
    for (c, &(i, _)) in face.fixed().iter().enumerate() {
        for (r, &v) in basis.row(i).iter().enumerate() {
            at[r * f + c] = v;
        }
    }
    let qr = householder_qr(&at, k, f, k);
    if (0..f).any(|c| qr.r_diag(c) <= SINGULAR_TOL) {
        return Ok(FaceHit::Degenerate);
    }
    // forward substitution R₁ᵀ z = s, then c₀ = Q₁ z
    let mut z = vec![0.0; f];
    for (c, &(_, s)) in face.fixed().iter().enumerate() {
        let partial: f64 = (0..c).map(|p| qr.r[p * f + c] * z[p]).sum();
        z[c] = (f64::from(s) - partial) / qr.r_diag(c);
    }
    let c0: Vec<f64> = (0..k)
        .map(|r| (0..f).map(|c| qr.q_at(r, c) * z[c]).sum())
        .collect();

    let null_dim = k - f;
    let mut coeffs = Vec::with_capacity(free.len() * null_dim);
    let mut offsets = Vec::with_capacity(free.len());
    for &i in &free {
        let row = basis.row(i);
        for col in f..k {
            coeffs.push((0..k).map(|r| row[r] * qr.q_at(r, col)).sum());
        }
        offsets.push(dot(row, &c0));
    }
    let lp = MaxViolationLp::new(null_dim, coeffs, offsets)?;
    Ok(if lp.slack_at_most(eps)? {
        FaceHit::Hit
    } else {
        FaceHit::Miss
    })
}
