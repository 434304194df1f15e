//! Expected face numbers of random central sections of the cube `[-1, 1]^n`.
//!
//! For a subspace `X` drawn from the rotation-invariant measure on the
//! Grassmannian `G(n, k)`, `f(j, k, n)` is the expected number of `j`-faces of
//! the polytope `X ∩ [-1, 1]^n`. This crate provides
//!
//! * [`analysis`]: the normal CDF, Gaussian measure of cubes, the central
//!   integral `I(α, m) = ∫₀^∞ exp(-αt²/2) P(max_{i≤m} |g_i| ≤ t) dt`, and
//!   its extreme-value asymptotics;
//! * [`formulas`]: the exact vertex count `f(0, k, n)`, lower and upper bounds
//!   for `f(j, k, n)`, and asymptotic approximations;
//! * [`geometry`]: Haar subspace sampling, face-intersection tests, exact
//!   planar sections, symmetric Gaussian hulls and the affine-section Gaussian
//!   measure check;
//! * [`montecarlo`]: reproducible, parallel estimators of `f(j, k, n)`.

pub mod analysis;
pub mod error;
pub mod formulas;
pub mod geometry;
mod linalg;
pub mod montecarlo;

pub use error::{Error, Result};
pub use formulas::FaceQuery;
pub use montecarlo::{Estimate, Method, RunConfig};
