//! Bounded, Lipschitz spatio-temporal fields on the unit path.
//!
//! A [`FieldSpec`] describes a random field `X(s, t)`. Drawing its random
//! parts at one time epoch gives a [`FieldRealization`], a deterministic
//! function of `s` that every sample of one trial is read from.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::Rng;

use crate::error::{check_unit, Error, Result};
use crate::seed;

/// Relative slack allowed on top of analytic bound and Lipschitz ceilings.
pub const GRID_TOLERANCE: f64 = 1e-9;

/// How the per-harmonic amplitudes `a_k(t)` of a cosine field are produced.
#[derive(Debug, Clone, PartialEq)]
pub enum AmplitudeLaw {
    /// Frozen amplitudes, identical at every time.
    Fixed(Vec<f64>),
    /// `a_k(t) ~ Uniform[0, c_k · (1 + modulation · sin(2πt / period))]`.
    Uniform {
        ceilings: Vec<f64>,
        period: f64,
        modulation: f64,
    },
}

impl AmplitudeLaw {
    /// Default time-varying law with `c_k = scale / k`, `k = 1..=harmonics`.
    pub fn harmonic_uniform(harmonics: usize, scale: f64, period: f64, modulation: f64) -> Self {
        let ceilings = (1..=harmonics).map(|k| scale / k as f64).collect();
        AmplitudeLaw::Uniform {
            ceilings,
            period,
            modulation,
        }
    }

    pub fn harmonics(&self) -> usize {
        match self {
            AmplitudeLaw::Fixed(a) => a.len(),
            AmplitudeLaw::Uniform { ceilings, .. } => ceilings.len(),
        }
    }

    /// Largest magnitude each amplitude can take at any time.
    fn max_magnitudes(&self) -> impl Iterator<Item = f64> + '_ {
        let (values, gain) = match self {
            AmplitudeLaw::Fixed(a) => (a, 1.0),
            AmplitudeLaw::Uniform {
                ceilings,
                modulation,
                ..
            } => (ceilings, 1.0 + libm::fabs(*modulation)),
        };
        values.iter().map(move |c| libm::fabs(*c) * gain)
    }

    fn validate(&self) -> Result<()> {
        match self {
            AmplitudeLaw::Fixed(a) => {
                if a.iter().any(|v| !v.is_finite()) {
                    return Err(Error::Argument("fixed amplitudes must be finite"));
                }
            }
            AmplitudeLaw::Uniform {
                ceilings,
                period,
                modulation,
            } => {
                if ceilings.iter().any(|c| !c.is_finite() || *c < 0.0) {
                    return Err(Error::Argument(
                        "amplitude ceilings must be finite and >= 0",
                    ));
                }
                if !(period.is_finite() && *period > 0.0) {
                    return Err(Error::Argument("amplitude period must be > 0"));
                }
                if !(0.0..1.0).contains(modulation) {
                    return Err(Error::Argument("amplitude modulation must lie in [0, 1)"));
                }
            }
        }
        Ok(())
    }

    fn draw<R: Rng + ?Sized>(&self, t: f64, rng: &mut R) -> Vec<f64> {
        match self {
            AmplitudeLaw::Fixed(a) => a.clone(),
            AmplitudeLaw::Uniform {
                ceilings,
                period,
                modulation,
            } => {
                let gain = 1.0 + modulation * libm::sin(2.0 * PI * t / period);
                ceilings
                    .iter()
                    .map(|c| rng.random::<f64>() * c * gain)
                    .collect()
            }
        }
    }
}

/// The shape of a field.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldKind {
    /// `X(s, t) = a0 + Σ_k a_k(t) · cos(2π k f s)`.
    CosineSum {
        a0: f64,
        freq: f64,
        amplitudes: AmplitudeLaw,
    },
    /// Time-invariant piecewise-linear interpolant through `(s, value)` knots.
    /// Constant beyond the first and last knot.
    Table(Arc<[(f64, f64)]>),
}

/// A field together with its declared bound `b` and Lipschitz constant `α`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSpec {
    kind: FieldKind,
    declared_bound: f64,
    declared_lipschitz: f64,
}

impl FieldSpec {
    /// Cosine-sum field. The declared bound and Lipschitz constant are the
    /// analytic ceilings `|a0| + Σ max|a_k|` and `2πf Σ k max|a_k|`.
    pub fn cosine_sum(a0: f64, freq: f64, amplitudes: AmplitudeLaw) -> Result<Self> {
        if !a0.is_finite() {
            return Err(Error::Argument("a0 must be finite"));
        }
        if !(freq.is_finite() && freq >= 0.0) {
            return Err(Error::Argument("spatial frequency must be finite and >= 0"));
        }
        if amplitudes.harmonics() == 0 {
            return Err(Error::Argument("at least one harmonic is required"));
        }
        amplitudes.validate()?;
        let amp_sum: f64 = amplitudes.max_magnitudes().sum();
        let weighted: f64 = amplitudes
            .max_magnitudes()
            .enumerate()
            .map(|(i, m)| (i + 1) as f64 * m)
            .sum();
        let bound = libm::fabs(a0) + amp_sum;
        let lipschitz = 2.0 * PI * freq * weighted;
        Ok(FieldSpec {
            kind: FieldKind::CosineSum {
                a0,
                freq,
                amplitudes,
            },
            declared_bound: positive_or_tiny(bound),
            declared_lipschitz: positive_or_tiny(lipschitz),
        })
    }

    /// The simulated field used for the Monte-Carlo study: `a0 = 500`, `f = 5`,
    /// five harmonics with `c_k = 10/k`, period 24, modulation 0.5.
    pub fn reference_cosine() -> Self {
        let law = AmplitudeLaw::harmonic_uniform(5, 10.0, 24.0, 0.5);
        FieldSpec::cosine_sum(500.0, 5.0, law).expect("reference parameters are valid")
    }

    /// Piecewise-linear field through `points`, which must have strictly
    /// increasing `s` inside `[0, 1]`.
    pub fn table(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Argument("table field needs at least one knot"));
        }
        for &(s, v) in &points {
            check_unit("s", s)?;
            if !v.is_finite() {
                return Err(Error::Argument("table values must be finite"));
            }
        }
        if points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::Argument("table s must be strictly increasing"));
        }
        let bound = points.iter().map(|p| libm::fabs(p.1)).fold(0.0, f64::max);
        let slope = max_segment_slope(&points);
        Ok(FieldSpec {
            kind: FieldKind::Table(points.into()),
            declared_bound: positive_or_tiny(bound),
            declared_lipschitz: positive_or_tiny(slope),
        })
    }

    /// Replaces the computed bound and Lipschitz constant with user-declared ones.
    pub fn with_declared(mut self, bound: f64, lipschitz: f64) -> Result<Self> {
        if !(bound.is_finite() && bound > 0.0) {
            return Err(Error::Argument("declared bound must be finite and > 0"));
        }
        if !(lipschitz.is_finite() && lipschitz > 0.0) {
            return Err(Error::Argument(
                "declared Lipschitz constant must be finite and > 0",
            ));
        }
        self.declared_bound = bound;
        self.declared_lipschitz = lipschitz;
        Ok(self)
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn declared_bound(&self) -> f64 {
        self.declared_bound
    }

    pub fn declared_lipschitz(&self) -> f64 {
        self.declared_lipschitz
    }

    /// Freezes the random parts of the field at time `t`.
    pub fn realize<R: Rng + ?Sized>(&self, t: f64, rng: &mut R) -> FieldRealization {
        match &self.kind {
            FieldKind::CosineSum {
                a0,
                freq,
                amplitudes,
            } => FieldRealization::Cosine {
                a0: *a0,
                freq: *freq,
                amps: amplitudes.draw(t, rng),
            },
            FieldKind::Table(points) => FieldRealization::Table(points.clone()),
        }
    }

    /// Realization keyed by `(seed, t)`, as used by [`eval_field`].
    pub fn realize_seeded(&self, t: f64, seed: u64) -> FieldRealization {
        let mut rng = seed::rng_from_seed(seed::derive(seed, &[t.to_bits()]));
        self.realize(t, &mut rng)
    }
}

fn positive_or_tiny(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        f64::MIN_POSITIVE
    }
}

fn max_segment_slope(points: &[(f64, f64)]) -> f64 {
    points
        .windows(2)
        .map(|w| libm::fabs(w[1].1 - w[0].1) / (w[1].0 - w[0].0))
        .fold(0.0, f64::max)
}

/// A field with all randomness drawn: a deterministic function of `s`.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldRealization {
    Cosine { a0: f64, freq: f64, amps: Vec<f64> },
    Table(Arc<[(f64, f64)]>),
}

impl FieldRealization {
    pub fn eval(&self, s: f64) -> Result<f64> {
        check_unit("s", s)?;
        let v = match self {
            FieldRealization::Cosine { a0, freq, amps } => cosine_sum(*a0, *freq, amps, s),
            FieldRealization::Table(points) => interpolate(points, s),
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Numeric("field evaluation"))
        }
    }

    /// Exact Lipschitz constant of this realization in `s`.
    pub fn lipschitz(&self) -> f64 {
        match self {
            FieldRealization::Cosine { freq, amps, .. } => {
                let weighted: f64 = amps
                    .iter()
                    .enumerate()
                    .map(|(i, a)| (i + 1) as f64 * libm::fabs(*a))
                    .sum();
                2.0 * PI * freq * weighted
            }
            FieldRealization::Table(points) => max_segment_slope(points),
        }
    }
}

// cos(kx) by the Chebyshev recurrence cos(kx) = 2cos(x)cos((k-1)x) - cos((k-2)x).
fn cosine_sum(a0: f64, freq: f64, amps: &[f64], s: f64) -> f64 {
    let c1 = libm::cos(2.0 * PI * freq * s);
    let (mut prev, mut cur) = (1.0, c1);
    let mut acc = a0;
    for a in amps {
        acc += a * cur;
        let next = 2.0 * c1 * cur - prev;
        prev = cur;
        cur = next;
    }
    acc
}

fn interpolate(points: &[(f64, f64)], s: f64) -> f64 {
    let idx = points.partition_point(|p| p.0 <= s);
    if idx == 0 {
        return points[0].1;
    }
    if idx == points.len() {
        return points[idx - 1].1;
    }
    let (s0, v0) = points[idx - 1];
    let (s1, v1) = points[idx];
    v0 + (s - s0) * (v1 - v0) / (s1 - s0)
}

/// `X(s, t)` with the random parts drawn from a stream keyed by `(seed, t)`.
pub fn eval_field(spec: &FieldSpec, s: f64, t: f64, seed: u64) -> Result<f64> {
    check_unit("s", s)?;
    spec.realize_seeded(t, seed).eval(s)
}

/// `size` equispaced points covering `[0, 1]` (just `0` when `size == 1`).
pub fn unit_grid(size: usize) -> impl Iterator<Item = f64> {
    let denom = size.saturating_sub(1).max(1) as f64;
    (0..size).map(move |i| i as f64 / denom)
}

/// Largest difference quotient between adjacent points of a `grid_size` grid,
/// with the field frozen at time `t`.
pub fn estimate_lipschitz(spec: &FieldSpec, grid_size: usize, t: f64, seed: u64) -> Result<f64> {
    if grid_size < 2 {
        return Err(Error::Argument("Lipschitz estimate needs grid_size >= 2"));
    }
    let field = spec.realize_seeded(t, seed);
    let mut prev: Option<(f64, f64)> = None;
    let mut best = 0.0_f64;
    for s in unit_grid(grid_size) {
        let v = field.eval(s)?;
        if let Some((ps, pv)) = prev {
            best = best.max(libm::fabs(v - pv) / (s - ps));
        }
        prev = Some((s, v));
    }
    Ok(best)
}

/// One grid point where `|X(s, t)|` exceeded the declared bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundViolation {
    pub s: f64,
    pub t: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundednessReport {
    pub declared_bound: f64,
    pub points_checked: usize,
    pub violations: Vec<BoundViolation>,
}

impl BoundednessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `|X(s, t)| <= b` on a spatial grid for `num_time_draws` epochs
/// `t = 0, 1, 2, ...`, each with its own amplitude draw.
pub fn verify_bounded(
    spec: &FieldSpec,
    grid_size: usize,
    num_time_draws: usize,
    seed: u64,
) -> Result<BoundednessReport> {
    if grid_size == 0 || num_time_draws == 0 {
        return Err(Error::Argument("grid_size and num_time_draws must be >= 1"));
    }
    let b = spec.declared_bound;
    let limit = b * (1.0 + GRID_TOLERANCE);
    let mut violations = Vec::new();
    let mut checked = 0;
    for j in 0..num_time_draws {
        let t = j as f64;
        let field = spec.realize_seeded(t, seed);
        for s in unit_grid(grid_size) {
            let value = field.eval(s)?;
            checked += 1;
            if libm::fabs(value) > limit {
                violations.push(BoundViolation { s, t, value });
            }
        }
    }
    Ok(BoundednessReport {
        declared_bound: b,
        points_checked: checked,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn frozen(amps: Vec<f64>) -> FieldSpec {
        FieldSpec::cosine_sum(500.0, 5.0, AmplitudeLaw::Fixed(amps)).unwrap()
    }

    #[test]
    fn zero_amplitudes_give_offset() {
        let spec = frozen(vec![0.0; 5]);
        for &s in &[0.0, 0.13, 0.5, 1.0] {
            assert_eq!(eval_field(&spec, s, 3.0, 11).unwrap(), 500.0);
        }
        // Uniform law with zero ceilings is the same field.
        let law = AmplitudeLaw::harmonic_uniform(5, 0.0, 24.0, 0.5);
        let spec = FieldSpec::cosine_sum(500.0, 5.0, law).unwrap();
        assert_eq!(eval_field(&spec, 0.77, 9.0, 1).unwrap(), 500.0);
    }

    #[test]
    fn frozen_amplitudes_at_origin_sum_up() {
        let c = vec![3.0, -1.5, 2.25, 0.5, 4.0];
        let spec = frozen(c.clone());
        let expect = 500.0 + c.iter().sum::<f64>();
        assert!((eval_field(&spec, 0.0, 0.0, 0).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn frozen_amplitudes_match_term_by_term_sum() {
        // At s = 0.1, f = 5: cos(2πk·0.5) = cos(πk) = (-1)^k.
        let c = vec![3.0, -1.5, 2.25, 0.5, 4.0];
        let spec = frozen(c.clone());
        let oracle: f64 = 500.0
            + c.iter()
                .enumerate()
                .map(|(i, ck)| {
                    let k = (i + 1) as f64;
                    ck * (PI * k).cos()
                })
                .sum::<f64>();
        // 500 - 3 - 1.5 - 2.25 + 0.5 - 4
        assert!((oracle - 489.75).abs() < 1e-12);
        let got = eval_field(&spec, 0.1, 0.0, 0).unwrap();
        assert!((got - oracle).abs() < 1e-10, "{got} vs {oracle}");
    }

    #[test]
    fn recurrence_matches_direct_cosines() {
        let amps = vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0];
        for i in 0..=200 {
            let s = i as f64 / 200.0;
            let direct: f64 = amps
                .iter()
                .enumerate()
                .map(|(k, a)| a * libm::cos(2.0 * PI * (k + 1) as f64 * 5.0 * s))
                .sum();
            assert!((cosine_sum(0.0, 5.0, &amps, s) - direct).abs() < 1e-11);
        }
    }

    #[test]
    fn domain_errors() {
        let spec = FieldSpec::reference_cosine();
        assert!(matches!(
            eval_field(&spec, -0.01, 0.0, 0),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            eval_field(&spec, 1.5, 0.0, 0),
            Err(Error::Domain { .. })
        ));
        assert!(eval_field(&spec, f64::NAN, 0.0, 0).is_err());
    }

    #[test]
    fn eval_is_reproducible() {
        let spec = FieldSpec::reference_cosine();
        let a = eval_field(&spec, 0.42, 17.0, 99).unwrap();
        let b = eval_field(&spec, 0.42, 17.0, 99).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        assert_ne!(a, eval_field(&spec, 0.42, 17.0, 100).unwrap());
    }

    #[test]
    fn reference_field_declared_constants() {
        let spec = FieldSpec::reference_cosine();
        let h5 = 1.0 + 0.5 + 1.0 / 3.0 + 0.25 + 0.2;
        assert!((spec.declared_bound() - (500.0 + 15.0 * h5)).abs() < 1e-9);
        // 2π·5·Σ k·(15/k) = 2π·5·75
        assert!((spec.declared_lipschitz() - 2.0 * PI * 5.0 * 75.0).abs() < 1e-9);
    }

    #[test]
    fn lipschitz_of_constant_is_zero() {
        let spec = frozen(vec![0.0; 5]);
        assert_eq!(estimate_lipschitz(&spec, 1000, 0.0, 1).unwrap(), 0.0);
        assert!(estimate_lipschitz(&spec, 1, 0.0, 1).is_err());
    }

    #[test]
    fn lipschitz_single_harmonic_approaches_analytic() {
        let amp = 2.0;
        let spec = FieldSpec::cosine_sum(0.0, 5.0, AmplitudeLaw::Fixed(vec![amp])).unwrap();
        let analytic = 2.0 * PI * 5.0 * amp;
        let coarse = estimate_lipschitz(&spec, 101, 0.0, 0).unwrap();
        let fine = estimate_lipschitz(&spec, 100_001, 0.0, 0).unwrap();
        assert!(coarse <= analytic * (1.0 + GRID_TOLERANCE));
        assert!(fine <= analytic * (1.0 + GRID_TOLERANCE));
        assert!(fine > coarse);
        assert!((analytic - fine) / analytic < 1e-6);
    }

    #[test]
    fn lipschitz_of_identity_table() {
        let spec = FieldSpec::table(vec![(0.0, 0.0), (1.0, 1.0)]).unwrap();
        let est = estimate_lipschitz(&spec, 1001, 0.0, 0).unwrap();
        assert!((est - 1.0).abs() < 1e-9);
        assert!((spec.declared_lipschitz() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn table_validation() {
        assert!(FieldSpec::table(vec![]).is_err());
        assert!(FieldSpec::table(vec![(0.5, 1.0), (0.5, 2.0)]).is_err());
        assert!(FieldSpec::table(vec![(0.0, 1.0), (1.2, 2.0)]).is_err());
        let f = FieldSpec::table(vec![(0.2, 1.0), (0.6, 3.0)]).unwrap();
        let r = f.realize_seeded(0.0, 0);
        assert_eq!(r.eval(0.0).unwrap(), 1.0);
        assert_eq!(r.eval(1.0).unwrap(), 3.0);
        assert!((r.eval(0.4).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn boundedness_checks() {
        let spec = frozen(vec![0.0; 5]).with_declared(501.0, 1.0).unwrap();
        assert!(verify_bounded(&spec, 64, 3, 0).unwrap().passed());

        let spec = frozen(vec![0.0; 5]).with_declared(499.0, 1.0).unwrap();
        let report = verify_bounded(&spec, 64, 3, 0).unwrap();
        assert_eq!(report.violations.len(), report.points_checked);
        assert_eq!(report.points_checked, 64 * 3);

        // a_k = 10/k, b = 500 + Σ 10/k from the triangle inequality.
        let amps: Vec<f64> = (1..=5).map(|k| 10.0 / k as f64).collect();
        let b = 500.0 + amps.iter().sum::<f64>();
        let spec = frozen(amps).with_declared(b, 1e4).unwrap();
        assert!(verify_bounded(&spec, 2001, 1, 0).unwrap().passed());
        assert!(verify_bounded(&spec, 0, 1, 0).is_err());
    }

    #[test]
    fn reference_field_passes_its_own_checks() {
        let spec = FieldSpec::reference_cosine();
        assert!(verify_bounded(&spec, 501, 48, 5).unwrap().passed());
        for t in 0..24 {
            let est = estimate_lipschitz(&spec, 20_001, t as f64, 3).unwrap();
            assert!(est <= spec.declared_lipschitz() * (1.0 + GRID_TOLERANCE));
        }
    }

    #[test]
    fn declared_override_validation() {
        let spec = FieldSpec::reference_cosine();
        assert!(spec.clone().with_declared(0.0, 1.0).is_err());
        assert!(spec.with_declared(1.0, -1.0).is_err());
        let bad = AmplitudeLaw::Uniform {
            ceilings: vec![1.0],
            period: 24.0,
            modulation: 1.5,
        };
        assert!(FieldSpec::cosine_sum(0.0, 1.0, bad).is_err());
    }
}
