//! Exact values, bounds and asymptotics for `f(j, k, n)`.
//!
//! Everything here is built on [`cube_gauss_integral`]; tolerances passed to the
//! public functions bound the absolute error of the returned quantity, and are
//! rescaled before reaching the quadrature. The rescaled tolerance never drops
//! below round-off in the integral, so for very large prefactors the error is
//! relative (about `1e−13`) rather than absolute.

use std::f64::consts::PI;

use crate::analysis::{cube_gauss_integral, DEFAULT_TOL};
use crate::error::{Error, Result};

/// The triple `(j, k, n)`: `j`-faces of a `k`-dimensional central section of the
/// `n`-cube. Always satisfies `j < k < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceQuery {
    j: u32,
    k: u32,
    n: u32,
}

impl FaceQuery {
    pub fn new(j: u32, k: u32, n: u32) -> Result<Self> {
        if j < k && k < n {
            Ok(Self { j, k, n })
        } else {
            Err(Error::domain(
                "face query",
                format!("(j, k, n) = ({j}, {k}, {n}) violates 0 ≤ j < k < n"),
            ))
        }
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of cube coordinates fixed to ±1 on a face that can meet the
    /// section in a `j`-face.
    pub fn codim(&self) -> u32 {
        self.k - self.j
    }
}

/// A lower and an upper bound for a face count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPair {
    pub lower: f64,
    pub upper: f64,
}

/// Binomial coefficient in exact integer arithmetic.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        // c * (n - i) is divisible by (i + 1) after the multiplication
        c = c
            .checked_mul(u128::from(n - i))
            .ok_or(Error::Overflow { what: "binomial" })?
            / u128::from(i + 1);
    }
    Ok(c)
}

/// `2^e · C(n, e)`, the number of cube faces with `e` coordinates fixed.
fn face_multiplicity(n: u64, e: u64) -> Result<f64> {
    let v = 2f64.powi(e as i32) * binomial(n, e)? as f64;
    finite(v, "face multiplicity")
}

fn finite(v: f64, what: &'static str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Range { what })
    }
}

/// Smallest relative accuracy asked of the quadrature.
const ROUNDOFF_FLOOR: f64 = 1e-13;

/// Integral tolerance giving absolute error `tol` after multiplying by
/// `prefactor`, floored at round-off relative to the bound `I(α, m) ≤ √(π/(2α))`.
fn integral_tol(tol: f64, prefactor: f64, alpha: f64) -> f64 {
    (tol / prefactor).max(ROUNDOFF_FLOOR * (PI / (2.0 * alpha)).sqrt())
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 {
        Ok(())
    } else {
        Err(Error::domain("tol", format!("{tol} must be positive")))
    }
}

/// Expected number of vertices of a random `k`-section of the `n`-cube:
/// `2^k C(n,k) √(2k/π) · I(k, n − k)`.
pub fn f0_exact(k: u32, n: u32, tol: f64) -> Result<f64> {
    if k < 1 || k >= n {
        return Err(Error::domain(
            "(k, n)",
            format!("need 1 ≤ k < n, got ({k}, {n})"),
        ));
    }
    check_tol(tol)?;
    let kf = f64::from(k);
    let prefactor = face_multiplicity(u64::from(n), u64::from(k))? * (2.0 * kf / PI).sqrt();
    let integral = cube_gauss_integral(kf, u64::from(n - k), integral_tol(tol, prefactor, kf))?;
    finite(prefactor * integral.value, "f0_exact")
}

/// Closed form for sections of codimension one: `(2^n n / π) arctan(1/√(n−1))`.
pub fn f0_codim1_closed_form(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("n", format!("{n} < 2")));
    }
    let nf = f64::from(n);
    let v = 2f64.powi(n as i32) * nf / PI * (1.0 / (nf - 1.0).sqrt()).atan();
    finite(v, "f0_codim1_closed_form")
}

/// Jensen-type lower bound for codimension `d`:
/// `C(n, d) 2^n ((1/π) arctan(1/√(n−d)))^d`. Equal to the exact value at `d = 1`.
pub fn f0_codim_lower_bound(d: u32, n: u32) -> Result<f64> {
    if d < 1 || d >= n {
        return Err(Error::domain(
            "(d, n)",
            format!("need 1 ≤ d < n, got ({d}, {n})"),
        ));
    }
    let angle = (1.0 / f64::from(n - d).sqrt()).atan() / PI;
    let v =
        binomial(u64::from(n), u64::from(d))? as f64 * 2f64.powi(n as i32) * angle.powi(d as i32);
    finite(v, "f0_codim_lower_bound")
}

/// Fixed-`k`, large-`n` asymptotic `(2^k/√k) (π log n)^{(k−1)/2}`.
pub fn f0_asymptotic(k: u32, n: u64) -> Result<f64> {
    if k < 1 {
        return Err(Error::domain("k", "must be ≥ 1"));
    }
    if n < 2 {
        return Err(Error::domain("n", format!("{n} < 2")));
    }
    let kf = f64::from(k);
    let v = 2f64.powi(k as i32) / kf.sqrt() * (PI * (n as f64).ln()).powf((kf - 1.0) / 2.0);
    finite(v, "f0_asymptotic")
}

/// Upper bound on the largest normalised spherical measure of a face-cone
/// slice, capped at the trivial half-space value 1/2.
///
/// With `α = j(k−j)/(n−k+j)` the uncapped value is `√(α/(2π)) · I(α, j)`.
pub fn t_bound(j: u32, k: u32, n: u32, tol: f64) -> Result<f64> {
    if j < 1 || j >= k || k >= n {
        return Err(Error::domain(
            "(j, k, n)",
            format!("need 1 ≤ j < k < n, got ({j}, {k}, {n})"),
        ));
    }
    check_tol(tol)?;
    let alpha = f64::from(j) * f64::from(k - j) / f64::from(n - k + j);
    let scale = (alpha / (2.0 * PI)).sqrt();
    let integral = cube_gauss_integral(alpha, u64::from(j), integral_tol(tol, scale, alpha))?;
    Ok((scale * integral.value).min(0.5))
}

/// Lower bound `f(0, k−j, n) / (2 t_bound(j, k, n))` for `j ≥ 1`.
pub fn f_lower_bound(q: FaceQuery, tol: f64) -> Result<f64> {
    if q.j < 1 {
        return Err(Error::domain("j", "the lower bound needs j ≥ 1"));
    }
    let t = t_bound(q.j, q.k, q.n, tol)?;
    let vertices = f0_exact(q.codim(), q.n, tol)?;
    finite(vertices / (2.0 * t), "f_lower_bound")
}

/// Trivial upper bound: the number of `(n−k+j)`-faces of the cube,
/// `2^{k−j} C(n, k−j)`.
pub fn f_upper_bound(q: FaceQuery) -> Result<f64> {
    face_multiplicity(u64::from(q.n), u64::from(q.codim()))
}

/// Fixed-codimension asymptotic for `f(n−m, n−l, n)`: `(2n)^{m−l} / (m−l)!`.
pub fn f_codim_asymptotic(l: u32, m: u32, n: u32) -> Result<f64> {
    if l < 1 || l >= m || m >= n {
        return Err(Error::domain(
            "(l, m, n)",
            format!("need 1 ≤ l < m < n, got ({l}, {m}, {n})"),
        ));
    }
    let e = m - l;
    let factorial: f64 = (1..=e).map(f64::from).product();
    finite(
        (2.0 * f64::from(n)).powi(e as i32) / factorial,
        "f_codim_asymptotic",
    )
}

/// Best available bounds for `f(j, k, n)`.
///
/// For `j = 0` the lower end is the `2^k` vertex floor that almost every
/// `k`-section attains; for `j ≥ 1` it is [`f_lower_bound`].
pub fn face_bounds(q: FaceQuery, tol: f64) -> Result<BoundPair> {
    let upper = f_upper_bound(q)?;
    let lower = if q.j == 0 {
        2f64.powi(q.k as i32)
    } else {
        f_lower_bound(q, tol)?
    };
    Ok(BoundPair { lower, upper })
}

/// [`f0_exact`] at the default tolerance.
pub fn f0(k: u32, n: u32) -> Result<f64> {
    f0_exact(k, n, DEFAULT_TOL)
}
