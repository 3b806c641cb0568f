//! Closed-form error bounds for the location-unaware CDF estimate.
//!
//! With `q(s) = (n + λ − 1)s(1 − s) + C`:
//!
//! | bound | value |
//! |---|---|
//! | location MSE | `q(s) λ²/n²` |
//! | pointwise field error | `(α²/ε²) q(s) λ²/n²` |
//! | uniform field error | `(32/β)(α²/ε²)(n + λ − 1) λ²/n²` |
//! | near-miss mass | `2α max_pdf (λ/n) √q(s)` |
//! | CDF error, `N → ∞` | pointwise field error + near-miss mass |
//! | CDF error, finite `N` | `A²/ε² + 2 max_pdf A + √(ln(2/δ)/(2N))`, `A = α √q(s) λ/n` |
//!
//! Values above one are returned unchanged; use [`is_vacuous`] to flag them.

use alloc::vec::Vec;

use crate::error::{check_unit, Error, Result};

/// Parameters shared by every bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    /// Lipschitz constant of the field.
    pub alpha: f64,
    /// Average spatial sampling rate.
    pub n: f64,
    /// Support multiplier, `θ ≤ λ/n`.
    pub lambda: f64,
    /// Constant of the location mean-squared-error bound.
    pub c: f64,
    /// Constant of the uniform field-error bound, in `(0, 1]`.
    pub beta: f64,
    /// Accuracy level ε.
    pub eps: f64,
    /// Failure probability δ.
    pub delta: f64,
    /// Number of trials N.
    pub trials: u64,
    /// `max_x f_{X(s)}(x)`.
    pub max_pdf: f64,
}

impl Default for BoundParams {
    fn default() -> Self {
        BoundParams {
            alpha: 1.0,
            n: 100.0,
            lambda: 2.0,
            c: 1.0,
            beta: 1.0,
            eps: 0.1,
            delta: 0.05,
            trials: 50,
            max_pdf: 1.0,
        }
    }
}

impl BoundParams {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && !v.is_nan();
        if !(positive(self.alpha) && self.alpha.is_finite()) {
            return Err(Error::Argument("alpha must be finite and > 0"));
        }
        if !(positive(self.n) && self.n.is_finite()) {
            return Err(Error::Argument("n must be finite and > 0"));
        }
        if !(self.lambda > 1.0 && self.lambda.is_finite()) {
            return Err(Error::Argument("lambda must be finite and > 1"));
        }
        if !(positive(self.c) && self.c.is_finite()) {
            return Err(Error::Argument("C must be finite and > 0"));
        }
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(Error::Argument("beta must lie in (0, 1]"));
        }
        if !(positive(self.eps) && self.eps.is_finite()) {
            return Err(Error::Argument("eps must be finite and > 0"));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Argument("delta must lie in (0, 1)"));
        }
        if self.trials == 0 {
            return Err(Error::Argument("N must be >= 1"));
        }
        if !positive(self.max_pdf) {
            return Err(Error::Argument("max_pdf must be > 0"));
        }
        Ok(())
    }

    pub fn with_eps(self, eps: f64) -> Self {
        BoundParams { eps, ..self }
    }

    /// `(n + λ − 1)s(1 − s) + C`.
    fn spread(&self, s: f64) -> f64 {
        (self.n + self.lambda - 1.0) * s * (1.0 - s) + self.c
    }

    fn checked(&self, s: f64) -> Result<()> {
        check_unit("s", s)?;
        self.validate()
    }
}

/// Bound on `E|S_k − s|²` for the selected sample `k`.
pub fn prop1_mse_bound(p: &BoundParams, s: f64) -> Result<f64> {
    p.checked(s)?;
    Ok(p.spread(s) * p.lambda * p.lambda / (p.n * p.n))
}

/// Bound on `P(|X(s) − X̂(s)| > ε)`.
pub fn prop2_pointwise_bound(p: &BoundParams, s: f64) -> Result<f64> {
    let mse = prop1_mse_bound(p, s)?;
    Ok(p.alpha * p.alpha / (p.eps * p.eps) * mse)
}

/// Bound on `P(sup_s |X(s) − X̂(s)| > ε)`.
pub fn prop2_sup_bound(p: &BoundParams) -> Result<f64> {
    p.validate()?;
    let ratio = p.alpha * p.alpha / (p.eps * p.eps);
    Ok(32.0 / p.beta * ratio * (p.n + p.lambda - 1.0) * p.lambda * p.lambda / (p.n * p.n))
}

/// Bound on `P(X̂(s) ≤ x, x < X(s) ≤ x + ε)`; does not depend on ε.
pub fn lemma1_bound(p: &BoundParams, s: f64) -> Result<f64> {
    p.checked(s)?;
    Ok(2.0 * p.alpha * p.max_pdf * p.lambda / p.n * libm::sqrt(p.spread(s)))
}

/// Pointwise bound on `|F_{X(s)}(x) − F_{X̂(s)}(x)|` in the `N → ∞` limit.
pub fn theorem1_cdf_bound(p: &BoundParams, s: f64) -> Result<f64> {
    Ok(prop2_pointwise_bound(p, s)? + lemma1_bound(p, s)?)
}

/// Finite-`N` bound and its parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theorem2Bound {
    pub value: f64,
    /// `A = α √q(s) λ/n`.
    pub a: f64,
    /// The DKW half-width `√(ln(2/δ)/(2N))`.
    pub dkw: f64,
}

/// Bound on `sup_x |F_{X̂(s),N}(x) − F_{X(s)}(x)|`, holding with probability `1 − δ`.
pub fn theorem2_cdf_bound(p: &BoundParams, s: f64) -> Result<Theorem2Bound> {
    p.checked(s)?;
    let a = p.alpha * libm::sqrt(p.spread(s)) * p.lambda / p.n;
    let dkw = dkw_epsilon(p.trials, p.delta)?;
    let value = a * a / (p.eps * p.eps) + 2.0 * p.max_pdf * a + dkw;
    Ok(Theorem2Bound { value, a, dkw })
}

/// DKW band half-width `√(ln(2/δ)/(2N))` for `δ ∈ (0, 2]`.
pub fn dkw_epsilon(trials: u64, delta: f64) -> Result<f64> {
    if trials == 0 {
        return Err(Error::Argument("N must be >= 1"));
    }
    if !(delta > 0.0 && delta <= 2.0) {
        return Err(Error::Argument("delta must lie in (0, 2]"));
    }
    Ok(libm::sqrt(libm::log(2.0 / delta) / (2.0 * trials as f64)))
}

pub fn is_vacuous(bound: f64) -> bool {
    bound > 1.0
}

/// Grid argmin of [`theorem1_cdf_bound`] over ε; ties go to the smaller ε.
pub fn minimize_theorem1_bound(p: &BoundParams, s: f64, eps_grid: &[f64]) -> Result<(f64, f64)> {
    if eps_grid.is_empty() {
        return Err(Error::Argument("eps grid must not be empty"));
    }
    let mut best: Option<(f64, f64)> = None;
    for &eps in eps_grid {
        let value = theorem1_cdf_bound(&p.with_eps(eps), s)?;
        best = match best {
            Some((be, bv)) if bv < value || (bv == value && be <= eps) => Some((be, bv)),
            _ => Some((eps, value)),
        };
    }
    Ok(best.expect("grid is non-empty"))
}

/// `ε = n^(−1/4)`, which makes the pointwise term `O(1/√n)`.
pub fn quarter_power_eps(n: f64) -> f64 {
    libm::pow(n, -0.25)
}

/// Log-spaced ε grid from `10^-6` to `10^6`, 20 points per decade.
pub fn default_eps_grid() -> Vec<f64> {
    (0..=240)
        .map(|i| libm::pow(10.0, -6.0 + i as f64 / 20.0))
        .collect()
}

/// How ε is chosen for a bound evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum EpsRule {
    Fixed(f64),
    QuarterPower,
    /// Argmin of the `N → ∞` CDF bound over a grid.
    Minimize(Vec<f64>),
}

impl EpsRule {
    pub fn resolve(&self, p: &BoundParams, s: f64) -> Result<f64> {
        match self {
            EpsRule::Fixed(eps) => {
                if *eps > 0.0 && eps.is_finite() {
                    Ok(*eps)
                } else {
                    Err(Error::Argument("eps must be finite and > 0"))
                }
            }
            EpsRule::QuarterPower => Ok(quarter_power_eps(p.n)),
            EpsRule::Minimize(grid) => Ok(minimize_theorem1_bound(p, s, grid)?.0),
        }
    }
}
