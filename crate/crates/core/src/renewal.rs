//! Renewal-process sampling locations and simulated sensing trials.
//!
//! The sensor takes samples at `S_j = θ_1 + … + θ_j` with i.i.d. gaps
//! `0 < θ ≤ λ/n`, `E[θ] = 1/n`, and stops at the last `M` with `S_M ≤ 1`.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Beta, Distribution, Open01};

use crate::error::{Error, Result};
use crate::field::{FieldRealization, FieldSpec};
use crate::seed::{self, SimRng};

/// Time between the epochs of consecutive trials (one day).
pub const TRIAL_SPACING: f64 = 1.0;
/// Time between consecutive samples of a trial (one second, in days).
pub const SAMPLE_PERIOD: f64 = 1.0 / 86_400.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntersampleKind {
    /// Symmetric triangular law on `(0, 2/n)` with mode `1/n`; `λ = 2`.
    TriangularSymmetric,
    /// `(λ/n) · Beta(a, b)` with `a = κ/λ`, `b = κ − a`, so the mean is `1/n`.
    /// Requires `κ ≥ λ`.
    ScaledBeta { concentration: f64 },
    /// Every gap is exactly `1/n`.
    Deterministic,
}

/// Law of the gap `θ` between consecutive sample locations.
#[derive(Debug, Clone)]
pub struct IntersampleDistribution {
    kind: IntersampleKind,
    n: f64,
    lambda: f64,
    beta: Option<Beta<f64>>,
}

impl IntersampleDistribution {
    /// Stochastic kinds require `n >= λ` so that a single gap never exceeds
    /// the path; the deterministic kind only needs `n >= 1`.
    pub fn new(kind: IntersampleKind, n: f64, lambda: f64) -> Result<Self> {
        if !(n.is_finite() && n >= 1.0) {
            return Err(Error::Argument("sampling rate n must be finite and >= 1"));
        }
        if !(lambda.is_finite() && lambda > 1.0) {
            return Err(Error::Argument(
                "support multiplier lambda must be finite and > 1",
            ));
        }
        let beta = match kind {
            IntersampleKind::TriangularSymmetric => {
                if lambda != 2.0 {
                    return Err(Error::Argument("symmetric triangular law has lambda = 2"));
                }
                None
            }
            IntersampleKind::ScaledBeta { concentration } => {
                // a >= 1 keeps the density bounded at zero, so gaps stay
                // well above the float resolution of the running sum.
                if !(concentration.is_finite() && concentration >= lambda) {
                    return Err(Error::Argument("beta concentration must be >= lambda"));
                }
                let a = concentration / lambda;
                let b = concentration - a;
                Some(Beta::new(a, b).map_err(|_| Error::Argument("invalid beta shape"))?)
            }
            IntersampleKind::Deterministic => None,
        };
        let stochastic = beta.is_some() || kind == IntersampleKind::TriangularSymmetric;
        if stochastic && n < lambda {
            return Err(Error::Argument("sampling rate n must be >= lambda"));
        }
        Ok(IntersampleDistribution {
            kind,
            n,
            lambda,
            beta,
        })
    }

    pub fn triangular(n: f64) -> Result<Self> {
        Self::new(IntersampleKind::TriangularSymmetric, n, 2.0)
    }

    pub fn scaled_beta(n: f64, lambda: f64, concentration: f64) -> Result<Self> {
        Self::new(IntersampleKind::ScaledBeta { concentration }, n, lambda)
    }

    /// Deterministic gaps `1/n`, with nominal `λ = 2` for the bound formulas.
    pub fn deterministic(n: f64) -> Result<Self> {
        Self::new(IntersampleKind::Deterministic, n, 2.0)
    }

    /// Same family at a different rate.
    pub fn with_rate(&self, n: f64) -> Result<Self> {
        Self::new(self.kind, n, self.lambda)
    }

    pub fn kind(&self) -> IntersampleKind {
        self.kind
    }

    pub fn rate(&self) -> f64 {
        self.n
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Support ceiling `λ/n`.
    pub fn max_interval(&self) -> f64 {
        self.lambda / self.n
    }

    pub fn mean(&self) -> f64 {
        1.0 / self.n
    }

    /// One gap `θ ∈ (0, λ/n]`.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.kind {
            IntersampleKind::TriangularSymmetric => {
                let width = 2.0 / self.n;
                let u: f64 = Open01.sample(rng);
                if u < 0.5 {
                    width * libm::sqrt(u / 2.0)
                } else {
                    width * (1.0 - libm::sqrt((1.0 - u) / 2.0))
                }
            }
            IntersampleKind::ScaledBeta { .. } => {
                let beta = self.beta.as_ref().expect("beta law built at construction");
                loop {
                    let b = beta.sample(rng);
                    if b > 0.0 {
                        return self.max_interval() * b;
                    }
                }
            }
            IntersampleKind::Deterministic => 1.0 / self.n,
        }
    }
}

/// Sample locations `S_1 < … < S_M ≤ 1` and the gap `θ_{M+1}` that crossed the end.
#[derive(Debug, Clone, PartialEq)]
pub struct LocationSequence {
    locations: Vec<f64>,
    intervals: Vec<f64>,
    overshoot: f64,
}

impl LocationSequence {
    /// Applies the stopping rule to an explicit gap sequence.
    pub fn from_intervals<I: IntoIterator<Item = f64>>(intervals: I) -> Result<Self> {
        let mut iter = intervals.into_iter();
        let mut locations = Vec::new();
        let mut gaps = Vec::new();
        let mut sum = 0.0;
        loop {
            let theta = iter.next().ok_or(Error::IntervalsExhausted {
                consumed: gaps.len(),
            })?;
            if !(theta.is_finite() && theta > 0.0) {
                return Err(Error::Argument("intervals must be finite and > 0"));
            }
            let next = sum + theta;
            if next > 1.0 {
                if locations.is_empty() {
                    return Err(Error::Argument(
                        "first interval already passes the path end",
                    ));
                }
                return Ok(LocationSequence {
                    locations,
                    intervals: gaps,
                    overshoot: theta,
                });
            }
            sum = next;
            locations.push(sum);
            gaps.push(theta);
        }
    }

    pub fn locations(&self) -> &[f64] {
        &self.locations
    }

    pub fn intervals(&self) -> &[f64] {
        &self.intervals
    }

    pub fn overshoot(&self) -> f64 {
        self.overshoot
    }

    pub fn sample_count(&self) -> usize {
        self.locations.len()
    }

    /// `S_M ≤ 1 < S_M + θ_{M+1}` with strictly increasing positive locations.
    pub fn satisfies_stopping_rule(&self) -> bool {
        let Some(&last) = self.locations.last() else {
            return false;
        };
        let increasing = self.locations.windows(2).all(|w| w[0] < w[1]);
        increasing && self.locations[0] > 0.0 && last <= 1.0 && last + self.overshoot > 1.0
    }
}

/// Draws gaps from `dist` until the stopping rule fires.
pub fn generate_locations<R: Rng + ?Sized>(
    dist: &IntersampleDistribution,
    rng: &mut R,
) -> LocationSequence {
    if dist.kind == IntersampleKind::Deterministic {
        // j / n rather than a running sum keeps S_M = 1 exact for integer n.
        let gap = 1.0 / dist.n;
        let mut count = libm::floor(dist.n) as usize;
        while (count + 1) as f64 / dist.n <= 1.0 {
            count += 1;
        }
        while count > 1 && count as f64 / dist.n > 1.0 {
            count -= 1;
        }
        let locations = (1..=count).map(|j| j as f64 / dist.n).collect();
        return LocationSequence {
            locations,
            intervals: alloc::vec![gap; count],
            overshoot: gap,
        };
    }
    LocationSequence::from_intervals(core::iter::repeat_with(|| dist.draw(rng)))
        .expect("n >= lambda keeps every gap inside the path")
}

/// Estimator-facing view of a trial: ordered values and their count, nothing else.
#[derive(Debug, Clone, Copy)]
pub struct TrialView<'a> {
    values: &'a [f64],
}

impl<'a> TrialView<'a> {
    pub fn new(values: &'a [f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Argument("a trial needs at least one sample"));
        }
        Ok(TrialView { values })
    }

    pub fn values(&self) -> &'a [f64] {
        self.values
    }

    pub fn sample_count(&self) -> usize {
        self.values.len()
    }
}

/// One pass of the sensor along the path.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    trial_id: u64,
    values: Vec<f64>,
    hidden_locations: Option<Vec<f64>>,
    overshoot: Option<f64>,
}

impl TrialRecord {
    /// A trial with no location information, as ingested from a sensor log.
    pub fn observed(trial_id: u64, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Argument("a trial needs at least one sample"));
        }
        Ok(TrialRecord {
            trial_id,
            values,
            hidden_locations: None,
            overshoot: None,
        })
    }

    /// Attaches true locations; they must satisfy the stopping rule for `overshoot`.
    pub fn with_locations(mut self, locations: Vec<f64>, overshoot: f64) -> Result<Self> {
        if locations.len() != self.values.len() {
            return Err(Error::Argument("one location per value is required"));
        }
        let check = LocationSequence {
            locations,
            intervals: Vec::new(),
            overshoot,
        };
        if !check.satisfies_stopping_rule() {
            return Err(Error::Argument("locations violate the stopping rule"));
        }
        self.hidden_locations = Some(check.locations);
        self.overshoot = Some(overshoot);
        Ok(self)
    }

    pub fn trial_id(&self) -> u64 {
        self.trial_id
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sample_count(&self) -> usize {
        self.values.len()
    }

    pub fn hidden_locations(&self) -> Option<&[f64]> {
        self.hidden_locations.as_deref()
    }

    pub fn overshoot(&self) -> Option<f64> {
        self.overshoot
    }

    pub fn view(&self) -> TrialView<'_> {
        TrialView {
            values: &self.values,
        }
    }

    pub fn strip_locations(mut self) -> Self {
        self.hidden_locations = None;
        self.overshoot = None;
        self
    }
}

/// A simulated trial plus the oracle side channel the estimator never sees.
#[derive(Debug, Clone)]
pub struct SimulatedTrial {
    pub record: TrialRecord,
    pub locations: LocationSequence,
    /// The field as it was during this trial.
    pub realization: FieldRealization,
    pub epoch: f64,
}

impl SimulatedTrial {
    /// `t_{i,j}` for the 1-based sample index `j`.
    pub fn sample_time(&self, j: usize) -> f64 {
        self.epoch + j as f64 * SAMPLE_PERIOD
    }

    /// `X(s, t_{i,k})`: the true field at `s` during this trial.
    pub fn true_value(&self, s: f64) -> Result<f64> {
        self.realization.eval(s)
    }
}

/// One sensing pass at epoch `trial_id · TRIAL_SPACING` with all randomness
/// drawn from `seed`.
pub fn run_trial(
    spec: &FieldSpec,
    dist: &IntersampleDistribution,
    trial_id: u64,
    seed: u64,
) -> Result<SimulatedTrial> {
    let mut rng: SimRng = seed::rng_from_seed(seed);
    let epoch = trial_id as f64 * TRIAL_SPACING;
    let realization = spec.realize(epoch, &mut rng);
    let locations = generate_locations(dist, &mut rng);
    let values = locations
        .locations()
        .iter()
        .map(|&s| realization.eval(s))
        .collect::<Result<Vec<_>>>()?;
    let record = TrialRecord {
        trial_id,
        values,
        hidden_locations: Some(locations.locations.clone()),
        overshoot: Some(locations.overshoot),
    };
    Ok(SimulatedTrial {
        record,
        locations,
        realization,
        epoch,
    })
}

/// Sample count `M` of one pass, without keeping the locations.
pub fn draw_sample_count<R: Rng + ?Sized>(dist: &IntersampleDistribution, rng: &mut R) -> usize {
    if dist.kind == IntersampleKind::Deterministic {
        return generate_locations(dist, rng).sample_count();
    }
    let mut sum = 0.0;
    let mut count = 0;
    loop {
        let next = sum + dist.draw(rng);
        if next > 1.0 {
            return count;
        }
        sum = next;
        count += 1;
    }
}

/// Monte-Carlo `(mean M, standard error)` over independent passes.
pub fn mean_sample_count(
    dist: &IntersampleDistribution,
    repetitions: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if repetitions == 0 {
        return Err(Error::Argument("repetitions must be >= 1"));
    }
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for r in 0..repetitions {
        let mut rng = seed::rng_from_seed(seed::derive(seed, &[r as u64]));
        let m = draw_sample_count(dist, &mut rng) as f64;
        let delta = m - mean;
        mean += delta / (r + 1) as f64;
        m2 += delta * (m - mean);
    }
    let stderr = if repetitions > 1 {
        libm::sqrt(m2 / (repetitions - 1) as f64 / repetitions as f64)
    } else {
        0.0
    };
    Ok((mean, stderr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::AmplitudeLaw;
    use alloc::vec;

    #[test]
    fn triangular_support() {
        let dist = IntersampleDistribution::triangular(10.0).unwrap();
        let mut rng = seed::rng_from_seed(1);
        for _ in 0..100_000 {
            let t = dist.draw(&mut rng);
            assert!(t > 0.0 && t <= 0.2);
        }
        assert_eq!(dist.lambda(), 2.0);
    }

    #[test]
    fn triangular_mean() {
        let dist = IntersampleDistribution::triangular(100.0).unwrap();
        let mut rng = seed::rng_from_seed(2);
        let draws = 1_000_000;
        let (mut sum, mut sq) = (0.0, 0.0);
        for _ in 0..draws {
            let t = dist.draw(&mut rng);
            sum += t;
            sq += t * t;
        }
        let mean = sum / draws as f64;
        let sd = libm::sqrt(sq / draws as f64 - mean * mean);
        // Var of the symmetric triangle on (0, w) is w²/24.
        assert!((sd - 0.02 / libm::sqrt(24.0)).abs() < 1e-4);
        assert!((mean - 0.01).abs() <= 3.0 * sd / 1000.0);
    }

    #[test]
    fn deterministic_draws() {
        let dist = IntersampleDistribution::deterministic(100.0).unwrap();
        let mut rng = seed::rng_from_seed(0);
        for _ in 0..10 {
            assert_eq!(dist.draw(&mut rng), 0.01);
        }
    }

    #[test]
    fn construction_errors() {
        assert!(IntersampleDistribution::triangular(1.5).is_err());
        assert!(
            IntersampleDistribution::new(IntersampleKind::TriangularSymmetric, 10.0, 3.0).is_err()
        );
        assert!(IntersampleDistribution::scaled_beta(10.0, 1.0, 4.0).is_err());
        assert!(IntersampleDistribution::scaled_beta(2.0, 3.0, 4.0).is_err());
        assert!(IntersampleDistribution::scaled_beta(10.0, 3.0, 0.0).is_err());
        assert!(IntersampleDistribution::scaled_beta(10.0, 3.0, 2.9).is_err());
        assert!(IntersampleDistribution::deterministic(0.5).is_err());
        assert!(IntersampleDistribution::deterministic(1.0).is_ok());
    }

    #[test]
    fn beta_support_and_mean() {
        let dist = IntersampleDistribution::scaled_beta(50.0, 3.0, 6.0).unwrap();
        let mut rng = seed::rng_from_seed(4);
        let draws = 200_000;
        let mut sum = 0.0;
        for _ in 0..draws {
            let t = dist.draw(&mut rng);
            assert!(t > 0.0 && t <= 3.0 / 50.0);
            sum += t;
        }
        assert!((sum / draws as f64 - 0.02).abs() < 2e-4);
    }

    #[test]
    fn deterministic_quarter_steps() {
        let dist = IntersampleDistribution::deterministic(4.0).unwrap();
        let seq = generate_locations(&dist, &mut seed::rng_from_seed(0));
        assert_eq!(seq.locations(), &[0.25, 0.5, 0.75, 1.0]);
        assert_eq!(seq.overshoot(), 0.25);
        assert!(seq.satisfies_stopping_rule());
    }

    #[test]
    fn deterministic_count_equals_rate() {
        for n in 1..=2000u32 {
            let dist = IntersampleDistribution::deterministic(n as f64).unwrap();
            let seq = generate_locations(&dist, &mut seed::rng_from_seed(0));
            assert_eq!(seq.sample_count(), n as usize, "n = {n}");
            assert!(seq.satisfies_stopping_rule());
        }
    }

    #[test]
    fn injected_intervals() {
        let seq = LocationSequence::from_intervals([0.4, 0.4, 0.3, 0.2]).unwrap();
        assert_eq!(seq.sample_count(), 2);
        assert_eq!(seq.locations(), &[0.4, 0.8]);
        assert_eq!(seq.overshoot(), 0.3);
        assert!(matches!(
            LocationSequence::from_intervals([0.4, 0.4]),
            Err(Error::IntervalsExhausted { consumed: 2 })
        ));
        assert!(LocationSequence::from_intervals([1.5]).is_err());
        assert!(LocationSequence::from_intervals([0.5, -0.1]).is_err());
    }

    #[test]
    fn constant_field_trial() {
        let spec = FieldSpec::cosine_sum(500.0, 5.0, AmplitudeLaw::Fixed(vec![0.0; 5])).unwrap();
        let dist = IntersampleDistribution::deterministic(2.0).unwrap();
        let trial = run_trial(&spec, &dist, 0, 3).unwrap();
        assert_eq!(trial.record.values(), &[500.0, 500.0]);
        assert_eq!(trial.record.sample_count(), 2);
    }

    #[test]
    fn identity_field_reveals_locations() {
        let spec = FieldSpec::table(vec![(0.0, 0.0), (1.0, 1.0)]).unwrap();
        let dist = IntersampleDistribution::deterministic(4.0).unwrap();
        let trial = run_trial(&spec, &dist, 5, 3).unwrap();
        assert_eq!(trial.record.values(), &[0.25, 0.5, 0.75, 1.0]);
        assert_eq!(
            trial.record.hidden_locations().unwrap(),
            trial.record.values()
        );
        assert_eq!(trial.sample_time(2), 5.0 + 2.0 / 86_400.0);
    }

    #[test]
    fn trials_are_reproducible() {
        let spec = FieldSpec::reference_cosine();
        let dist = IntersampleDistribution::triangular(10.0).unwrap();
        let a = run_trial(&spec, &dist, 3, 77).unwrap();
        let b = run_trial(&spec, &dist, 3, 77).unwrap();
        assert_eq!(a.record, b.record);
        let c = run_trial(&spec, &dist, 3, 78).unwrap();
        assert_ne!(a.record, c.record);
    }

    #[test]
    fn counting_matches_generation() {
        let dist = IntersampleDistribution::triangular(37.0).unwrap();
        for s in 0..50 {
            let m1 = draw_sample_count(&dist, &mut seed::rng_from_seed(s));
            let m2 = generate_locations(&dist, &mut seed::rng_from_seed(s)).sample_count();
            assert_eq!(m1, m2);
        }
    }

    #[test]
    fn mean_count_deterministic_and_bounds() {
        let dist = IntersampleDistribution::deterministic(25.0).unwrap();
        assert_eq!(mean_sample_count(&dist, 10, 0).unwrap(), (25.0, 0.0));
        assert!(mean_sample_count(&dist, 0, 0).is_err());

        for n in [10.0, 100.0] {
            let dist = IntersampleDistribution::triangular(n).unwrap();
            let (mean, se) = mean_sample_count(&dist, 100_000, 9).unwrap();
            assert!(mean <= n + 1.0 + 3.0 * se, "n={n}: {mean} ± {se}");
        }
    }

    #[test]
    fn observed_records() {
        assert!(TrialRecord::observed(1, vec![]).is_err());
        let r = TrialRecord::observed(1, vec![1.0, 2.0]).unwrap();
        assert!(r.hidden_locations().is_none());
        assert!(r.clone().with_locations(vec![0.5, 0.9], 0.2).is_ok());
        assert!(r.clone().with_locations(vec![0.5, 0.9], 0.05).is_err());
        assert!(r.with_locations(vec![0.5], 0.6).is_err());
    }
}
