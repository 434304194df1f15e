//! Special functions, Gaussian measures of cubes and the central integral
//!
//! ```text
//! I(α, m) = ∫₀^∞ exp(-α t² / 2) · F_m(t) dt,   F_m(t) = P(max_{i ≤ m} |g_i| ≤ t)
//! ```
//!
//! together with the extreme-value constants governing `F_m` for large `m`.

mod quadrature;

pub use quadrature::IntegralValue;

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};

/// Default absolute tolerance for every quadrature-backed quantity.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Evaluation budget for [`cube_gauss_integral`].
pub const MAX_EVALUATIONS: usize = 4_000_000;

/// Gamma function (Lanczos-type approximation from `libm`).
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// `P(|g| ≤ t)` for a standard normal `g`, i.e. `erf(t/√2)`.
pub fn std_normal_cdf_sym(t: f64) -> Result<f64> {
    check_nonnegative("t", t)?;
    if t.is_infinite() {
        return Ok(1.0);
    }
    Ok(libm::erf(t * FRAC_1_SQRT_2))
}

/// `P(|g| > t)`, accurate in relative terms far into the tail.
pub fn std_normal_tail_sym(t: f64) -> Result<f64> {
    check_nonnegative("t", t)?;
    if t.is_infinite() {
        return Ok(0.0);
    }
    Ok(libm::erfc(t * FRAC_1_SQRT_2))
}

/// Gaussian measure of the scaled cube `t·[-1, 1]^m`, i.e. `F_m(t)`.
pub fn gaussian_cube_measure(m: u64, t: f64) -> Result<f64> {
    check_nonnegative("t", t)?;
    if m == 0 {
        return Ok(1.0);
    }
    let tail = std_normal_tail_sym(t)?;
    let mf = m as f64;
    if tail < 0.5 {
        Ok((mf * (-tail).ln_1p()).exp())
    } else {
        Ok((mf * (1.0 - tail).ln()).exp())
    }
}

fn check_nonnegative(what: &'static str, t: f64) -> Result<()> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::domain(what, format!("{t} must be ≥ 0")));
    }
    Ok(())
}

/// Normalising constants for the maximum of `n` iid `|N(0, 1)|` variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremeValueConstants {
    pub a_n: f64,
    pub b_n: f64,
}

impl ExtremeValueConstants {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("n", format!("{n} < 2")));
        }
        Self::from_log((n as f64).ln())
    }

    /// Same constants written in terms of `log n`, which need not come from an
    /// integer `n`.
    pub fn from_log(log_n: f64) -> Result<Self> {
        if !(log_n.is_finite() && log_n > 0.0) {
            return Err(Error::domain("log n", format!("{log_n} must be positive")));
        }
        let root = (2.0 * log_n).sqrt();
        Ok(Self {
            a_n: 1.0 / root,
            b_n: root - (PI * log_n).ln() / (2.0 * root),
        })
    }
}

pub fn extreme_value_constants(n: u64) -> Result<ExtremeValueConstants> {
    ExtremeValueConstants::new(n)
}

/// `|F_n(a_n x + b_n) − exp(−e^{−x})|`: distance from the Gumbel limit.
pub fn gumbel_limit_check(n: u64, x: f64) -> Result<f64> {
    let c = ExtremeValueConstants::new(n)?;
    let t = c.a_n * x + c.b_n;
    let finite = if t <= 0.0 {
        0.0
    } else {
        gaussian_cube_measure(n, t)?
    };
    Ok((finite - (-(-x).exp()).exp()).abs())
}

/// `I(α, m)` with an absolute error estimate at most `tol`.
///
/// The range is cut at `T = max(b_m + 12 a_m, T_α)` (the first term only for
/// `m ≥ 2`), where `T_α` makes the Gaussian tail bound
/// `exp(−αT²/2)/(αT)` smaller than `tol/10`; that bound is added to the error
/// estimate. `m = 0` uses `√(π/(2α))` directly.
pub fn cube_gauss_integral(alpha: f64, m: u64, tol: f64) -> Result<IntegralValue> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::domain("alpha", format!("{alpha} must be positive")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::domain("tol", format!("{tol} must be positive")));
    }
    if m == 0 {
        return Ok(IntegralValue {
            value: (PI / (2.0 * alpha)).sqrt(),
            abs_error_estimate: 0.0,
            evaluations: 0,
        });
    }

    let tail_bound = |t: f64| (-alpha * t * t / 2.0).exp() / (alpha * t);
    let mut cutoff = (2.0 * (10.0 / tol).ln().max(1.0) / alpha).sqrt();
    while tail_bound(cutoff) > tol / 10.0 {
        cutoff *= 1.1;
    }

    let mut panels = 32usize;
    if m >= 2 {
        let c = ExtremeValueConstants::new(m)?;
        cutoff = cutoff.max(c.b_n + 12.0 * c.a_n);
        // keep the initial panels narrower than the width of the F_m transition
        panels = panels.max((2.0 * cutoff / c.a_n).ceil() as usize);
    }
    let truncation = tail_bound(cutoff);

    let mf = m as f64;
    let integrand = |t: f64| {
        let tail = libm::erfc(t * FRAC_1_SQRT_2);
        let measure = if tail < 0.5 {
            (mf * (-tail).ln_1p()).exp()
        } else {
            (mf * (1.0 - tail).ln()).exp()
        };
        (-alpha * t * t / 2.0).exp() * measure
    };

    let quad = quadrature::integrate(
        integrand,
        0.0,
        cutoff,
        panels,
        tol - truncation,
        MAX_EVALUATIONS,
    )?;
    Ok(IntegralValue {
        value: quad.value,
        abs_error_estimate: quad.abs_error_estimate + truncation,
        evaluations: quad.evaluations,
    })
}

/// Leading-order asymptotic of `I(α, n)` as `n → ∞`:
/// `Γ(α) π^{α/2} / √2 · (log n)^{(α−1)/2} / n^α`.
pub fn integral_asymptotic(alpha: f64, n: u64) -> Result<f64> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::domain("alpha", format!("{alpha} must be positive")));
    }
    if n < 2 {
        return Err(Error::domain("n", format!("{n} < 2")));
    }
    let ln_n = (n as f64).ln();
    let log_value = gamma(alpha).ln() + 0.5 * alpha * PI.ln() - 0.5 * 2f64.ln()
        + 0.5 * (alpha - 1.0) * ln_n.ln()
        - alpha * ln_n;
    let v = log_value.exp();
    if !v.is_finite() {
        return Err(Error::Range {
            what: "integral_asymptotic",
        });
    }
    Ok(v)
}
