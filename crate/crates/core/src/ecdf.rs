//! Empirical CDFs and distances between them.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Number of abscissae in the default averaging grid.
pub const DEFAULT_GRID_SIZE: usize = 512;
/// Fraction of the combined sample range added on each side of the grid.
pub const GRID_PADDING: f64 = 0.01;

/// Right-continuous step function `F(x) = #{v ≤ x} / N`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(values: &[f64]) -> Result<Self> {
        Self::from_vec(values.to_vec())
    }

    pub fn from_vec(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Argument("empirical CDF needs at least one value"));
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::Argument("empirical CDF values must not be NaN"));
        }
        values.sort_unstable_by(f64::total_cmp);
        Ok(EmpiricalCdf { sorted: values })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn sorted_values(&self) -> &[f64] {
        &self.sorted
    }

    pub fn min(&self) -> f64 {
        self.sorted[0]
    }

    pub fn max(&self) -> f64 {
        self.sorted[self.sorted.len() - 1]
    }

    /// `#{v ≤ x}`.
    pub fn count_le(&self, x: f64) -> usize {
        self.sorted.partition_point(|v| *v <= x)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.count_le(x) as f64 / self.sorted.len() as f64
    }

    /// `(x, F(x))` at every distinct sample value.
    pub fn jumps(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = self.sorted.len() as f64;
        self.sorted
            .iter()
            .enumerate()
            .filter(move |(i, v)| self.sorted.get(i + 1) != Some(v))
            .map(move |(i, v)| (*v, (i + 1) as f64 / n))
    }

    /// Empirical `q`-quantile (lower), `q ∈ [0, 1]`.
    pub fn quantile(&self, q: f64) -> f64 {
        let n = self.sorted.len();
        let idx = libm::ceil(q * n as f64) as usize;
        self.sorted[idx.clamp(1, n) - 1]
    }
}

/// `a(x)` at `x`.
pub fn cdf_eval(cdf: &EmpiricalCdf, x: f64) -> f64 {
    cdf.eval(x)
}

/// `mean_x |a(x) − b(x)|` over the supplied abscissae.
pub fn avg_pointwise_diff(a: &EmpiricalCdf, b: &EmpiricalCdf, grid: &[f64]) -> Result<f64> {
    if grid.is_empty() {
        return Err(Error::Argument("evaluation grid must not be empty"));
    }
    let total: f64 = grid
        .iter()
        .map(|&x| libm::fabs(a.eval(x) - b.eval(x)))
        .sum();
    Ok(total / grid.len() as f64)
}

/// Exact `sup_x |a(x) − b(x)|`, the two-sample Kolmogorov–Smirnov statistic.
///
/// Both functions are constant between points of the merged jump set, and the
/// value just left of a jump equals the value at the previous jump, so
/// checking every merged point suffices.
pub fn max_pointwise_diff(a: &EmpiricalCdf, b: &EmpiricalCdf) -> f64 {
    let (xs, ys) = (&a.sorted, &b.sorted);
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut best = 0.0_f64;
    while i < xs.len() || j < ys.len() {
        let x = match (xs.get(i), ys.get(j)) {
            (Some(&u), Some(&v)) => u.min(v),
            (Some(&u), None) => u,
            (None, Some(&v)) => v,
            (None, None) => unreachable!(),
        };
        while i < xs.len() && xs[i] <= x {
            i += 1;
        }
        while j < ys.len() && ys[j] <= x {
            j += 1;
        }
        best = best.max(libm::fabs(i as f64 / na - j as f64 / nb));
    }
    best
}

/// `size` equispaced abscissae over the union of both sample ranges, padded
/// by [`GRID_PADDING`] of the width on each side.
pub fn default_grid(a: &EmpiricalCdf, b: &EmpiricalCdf, size: usize) -> Result<Vec<f64>> {
    if size == 0 {
        return Err(Error::Argument("grid size must be >= 1"));
    }
    let lo = a.min().min(b.min());
    let hi = a.max().max(b.max());
    let width = hi - lo;
    let pad = if width > 0.0 {
        width * GRID_PADDING
    } else {
        GRID_PADDING * libm::fabs(lo).max(1.0)
    };
    let (lo, hi) = (lo - pad, hi + pad);
    if size == 1 {
        return Ok(alloc::vec![0.5 * (lo + hi)]);
    }
    let step = (hi - lo) / (size - 1) as f64;
    Ok((0..size)
        .map(|i| {
            if i + 1 == size {
                hi
            } else {
                lo + i as f64 * step
            }
        })
        .collect())
}

/// Largest histogram density of `values`, with Freedman–Diaconis bin width.
/// Infinite when the sample has no spread.
pub fn histogram_max_density(values: &[f64]) -> Result<f64> {
    let cdf = EmpiricalCdf::new(values)?;
    let n = cdf.len() as f64;
    let iqr = cdf.quantile(0.75) - cdf.quantile(0.25);
    let range = cdf.max() - cdf.min();
    if range <= 0.0 {
        return Ok(f64::INFINITY);
    }
    let width = if iqr > 0.0 {
        2.0 * iqr / libm::cbrt(n)
    } else {
        range / libm::ceil(libm::sqrt(n))
    };
    let bins = (libm::ceil(range / width) as usize).max(1);
    let mut counts = alloc::vec![0usize; bins];
    for &v in cdf.sorted_values() {
        let idx = (((v - cdf.min()) / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let peak = counts.into_iter().max().unwrap_or(0) as f64;
    Ok(peak / (n * width))
}
