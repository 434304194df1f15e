use rand::Rng;
use rand_distr::StandardNormal;

use crate::analysis::gaussian_cube_measure;
use crate::error::{Error, Result};

use super::subspace::{dot, sample_subspace, SubspaceBasis};

/// Gaussian measure of a shifted cube section, estimated by sampling, next to
/// the bound `γ_j(τ√(m/j) C^j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionMeasure {
    pub lhs_estimate: f64,
    /// Binomial standard error of `lhs_estimate`.
    pub lhs_std_error: f64,
    pub rhs: f64,
}

impl SectionMeasure {
    /// `lhs ≤ rhs + z·σ`.
    pub fn holds_within(&self, z: f64) -> bool {
        self.lhs_estimate <= self.rhs + z * self.lhs_std_error
    }
}

/// Estimates `γ_j((Y ∩ τCᵐ) − y₀)` for `Y` spanned by `basis` and
/// `y₀ = B w`, by drawing standard Gaussians `z` in the frame of `Y` and testing
/// `B(w + z) ∈ τCᵐ`.
pub fn affine_section_gaussian_measure<R: Rng + ?Sized>(
    basis: &SubspaceBasis,
    offset_coords: &[f64],
    tau: f64,
    rng: &mut R,
    trials: u64,
) -> Result<SectionMeasure> {
    let (m, j) = (basis.ambient_dim(), basis.dim());
    if offset_coords.len() != j {
        return Err(Error::domain(
            "offset",
            format!(
                "{} coordinates for a {j}-dimensional subspace",
                offset_coords.len()
            ),
        ));
    }
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::domain("tau", format!("{tau} must be positive")));
    }
    if trials == 0 {
        return Err(Error::domain("trials", "need at least one trial"));
    }
    let mut point = vec![0.0; j];
    let mut inside = 0u64;
    for _ in 0..trials {
        for (p, w) in point.iter_mut().zip(offset_coords) {
            *p = w + rng.sample::<f64, _>(StandardNormal);
        }
        if (0..m).all(|i| dot(basis.row(i), &point).abs() <= tau) {
            inside += 1;
        }
    }
    let p = inside as f64 / trials as f64;
    Ok(SectionMeasure {
        lhs_estimate: p,
        lhs_std_error: (p * (1.0 - p) / trials as f64).sqrt(),
        rhs: gaussian_cube_measure(j as u64, tau * (m as f64 / j as f64).sqrt())?,
    })
}

/// One random instance of the shifted-section inequality: a Haar-random
/// `j`-subspace `Y ⊂ ℝᵐ` and `y₀ ∈ Y` uniform in the ball of radius `τ√m`.
pub fn lemma33_check<R: Rng + ?Sized>(
    m: usize,
    j: usize,
    tau: f64,
    rng: &mut R,
    trials: u64,
) -> Result<SectionMeasure> {
    if !((1..=2).contains(&j) && j < m && m <= 6) {
        return Err(Error::domain(
            "(m, j)",
            format!("need 1 ≤ j ≤ 2 and j < m ≤ 6, got ({m}, {j})"),
        ));
    }
    let basis = sample_subspace(m, j, rng)?;
    let mut w: Vec<f64> = (0..j).map(|_| rng.sample(StandardNormal)).collect();
    let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    let u: f64 = rng.random();
    let radius = tau * (m as f64).sqrt() * u.powf(1.0 / j as f64);
    for x in &mut w {
        *x *= radius / norm;
    }
    affine_section_gaussian_measure(&basis, &w, tau, rng, trials)
}
