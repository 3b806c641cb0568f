//! The location-unaware estimator.
//!
//! A trial that recorded `M` samples is assumed to have spread them evenly
//! along the path, so the field at `s` is read from sample `⌊(M − 1)s⌋ + 1`
//! (1-based). The floor has to be exact: `s = 0.29`, `M = 101` must select
//! sample 30 even though `100 * 0.29` rounds to `28.999…` in binary floating
//! point. [`PathPoint`] carries an exact rational next to the `f64` for this.

use core::fmt::{self, Write};

use crate::error::{check_unit, Error, Result};
use crate::renewal::TrialView;

/// A coordinate on the unit path, with an exact rational form when one is known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathPoint {
    value: f64,
    /// `num / den` equal to the decimal literal the point was written as.
    decimal: Option<(u64, u64)>,
}

impl PathPoint {
    /// Parses a plain decimal literal such as `0.29`, `1`, or `.5`, keeping the
    /// exact value. Other float syntaxes fall back to the binary value.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let value: f64 = text
            .parse()
            .map_err(|_| Error::Argument("path coordinate is not a number"))?;
        check_unit("s", value)?;
        Ok(PathPoint {
            value,
            decimal: parse_decimal(text),
        })
    }

    /// Exact binary value of `s`, with no decimal reinterpretation.
    pub fn binary(value: f64) -> Result<Self> {
        check_unit("s", value)?;
        Ok(PathPoint {
            value,
            decimal: None,
        })
    }

    pub fn value(self) -> f64 {
        self.value
    }

    fn floor_scaled(self, factor: u64) -> u64 {
        if let Some((num, den)) = self.decimal {
            return ((factor as u128 * num as u128) / den as u128) as u64;
        }
        floor_mul_binary(factor, self.value)
    }
}

impl TryFrom<f64> for PathPoint {
    type Error = Error;

    /// Uses the shortest decimal that round-trips to `value`, i.e. the literal
    /// the caller most likely wrote.
    fn try_from(value: f64) -> Result<Self> {
        check_unit("s", value)?;
        let mut buf = DecimalBuf::default();
        let decimal = match write!(buf, "{value}") {
            Ok(()) => parse_decimal(buf.as_str()),
            Err(_) => None,
        };
        Ok(PathPoint { value, decimal })
    }
}

#[derive(Default)]
struct DecimalBuf {
    bytes: [u8; 32],
    len: usize,
}

impl DecimalBuf {
    fn as_str(&self) -> &str {
        core::str::from_utf8(&self.bytes[..self.len]).unwrap_or("")
    }
}

impl Write for DecimalBuf {
    fn write_str(&mut self, s: &str) -> fmt::Result {
        let end = self.len + s.len();
        if end > self.bytes.len() {
            return Err(fmt::Error);
        }
        self.bytes[self.len..end].copy_from_slice(s.as_bytes());
        self.len = end;
        Ok(())
    }
}

/// `digits[.digits]` → `(num, 10^frac_len)`; `None` for anything else or on overflow.
fn parse_decimal(text: &str) -> Option<(u64, u64)> {
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return None;
    }
    let frac_part = frac_part.trim_end_matches('0');
    let mut num: u64 = 0;
    let mut den: u64 = 1;
    for b in int_part.bytes() {
        num = num.checked_mul(10)?.checked_add(u64::from(b - b'0'))?;
    }
    for b in frac_part.bytes() {
        num = num.checked_mul(10)?.checked_add(u64::from(b - b'0'))?;
        den = den.checked_mul(10)?;
    }
    (num <= den).then_some((num, den))
}

/// Exact `⌊factor · s⌋` for a binary `s ∈ [0, 1]`.
fn floor_mul_binary(factor: u64, s: f64) -> u64 {
    if s == 0.0 {
        return 0;
    }
    let bits = s.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, exp) = if raw_exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), raw_exp - 1075)
    };
    let shift = (-exp) as u32;
    if shift >= 128 {
        return 0;
    }
    ((factor as u128 * mant as u128) >> shift) as u64
}

/// Anything that can name a path coordinate.
pub trait IntoPathPoint {
    fn into_path_point(self) -> Result<PathPoint>;
}

impl IntoPathPoint for PathPoint {
    fn into_path_point(self) -> Result<PathPoint> {
        Ok(self)
    }
}

impl IntoPathPoint for f64 {
    fn into_path_point(self) -> Result<PathPoint> {
        PathPoint::try_from(self)
    }
}

/// 1-based index `⌊(M − 1)s⌋ + 1` of the sample that stands in for location `s`.
pub fn select_index<P>(sample_count: usize, s: P) -> Result<usize>
where
    P: IntoPathPoint,
{
    if sample_count == 0 {
        return Err(Error::Argument("sample count must be >= 1"));
    }
    let point = s.into_path_point()?;
    let k = point.floor_scaled(sample_count as u64 - 1) as usize + 1;
    debug_assert!((1..=sample_count).contains(&k));
    Ok(k)
}

/// `X̂(s)` for one trial: the value of sample [`select_index`]`(M, s)`.
pub fn estimate_field_at<P>(trial: &TrialView<'_>, s: P) -> Result<f64>
where
    P: IntoPathPoint,
{
    let k = select_index(trial.sample_count(), s)?;
    Ok(trial.values()[k - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_indices() {
        assert_eq!(select_index(11, 0.5).unwrap(), 6);
        assert_eq!(select_index(5, 0.0).unwrap(), 1);
        assert_eq!(select_index(5, 1.0).unwrap(), 5);
        assert_eq!(select_index(1, 0.7).unwrap(), 1);
    }

    #[test]
    fn decimal_literals_floor_exactly() {
        // 100 * 0.29 == 28.999999999999996 in binary floating point.
        assert_eq!(libm::floor(100.0 * 0.29), 28.0);
        assert_eq!(select_index(101, 0.29).unwrap(), 30);
        assert_eq!(
            select_index(101, PathPoint::parse("0.29").unwrap()).unwrap(),
            30
        );
        // The binary value itself is just below 0.29.
        assert_eq!(
            select_index(101, PathPoint::binary(0.29).unwrap()).unwrap(),
            29
        );
        assert_eq!(
            select_index(11, PathPoint::parse(".5").unwrap()).unwrap(),
            6
        );
        assert_eq!(select_index(4, PathPoint::parse("1").unwrap()).unwrap(), 4);
        assert_eq!(
            select_index(4, PathPoint::parse("1.000").unwrap()).unwrap(),
            4
        );
    }

    #[test]
    fn rejects_out_of_domain() {
        assert!(matches!(select_index(3, 1.01), Err(Error::Domain { .. })));
        assert!(matches!(
            select_index(3, -0.0001),
            Err(Error::Domain { .. })
        ));
        assert!(select_index(3, f64::NAN).is_err());
        assert!(select_index(0, 0.5).is_err());
        assert!(PathPoint::parse("1.5").is_err());
        assert!(PathPoint::parse("abc").is_err());
    }

    #[test]
    fn binary_floor_is_exact() {
        assert_eq!(floor_mul_binary(10, 0.5), 5);
        assert_eq!(floor_mul_binary(u64::MAX, 1.0), u64::MAX);
        assert_eq!(floor_mul_binary(1000, f64::MIN_POSITIVE), 0);
        assert_eq!(floor_mul_binary(3, 1.0 / 3.0), 0);
        assert_eq!(floor_mul_binary(1 << 40, 0.25), 1 << 38);
    }

    #[test]
    fn parse_decimal_forms() {
        assert_eq!(parse_decimal("0.25"), Some((25, 100)));
        assert_eq!(parse_decimal("0.2500"), Some((25, 100)));
        assert_eq!(parse_decimal("1"), Some((1, 1)));
        assert_eq!(parse_decimal("1e-3"), None);
        assert_eq!(parse_decimal("."), None);
        assert_eq!(parse_decimal("2.5"), None);
    }

    #[test]
    fn estimator_reads_selected_sample() {
        let values = [10.0, 20.0, 30.0];
        let view = TrialView::new(&values).unwrap();
        assert_eq!(estimate_field_at(&view, 0.0).unwrap(), 10.0);
        assert_eq!(estimate_field_at(&view, 1.0).unwrap(), 30.0);
        assert_eq!(estimate_field_at(&view, 0.5).unwrap(), 20.0);
        // identity field sampled at 0.25, 0.5, 0.75, 1.0: ⌊3 · 0.6⌋ + 1 = 2
        let identity = [0.25, 0.5, 0.75, 1.0];
        let view = TrialView::new(&identity).unwrap();
        assert_eq!(estimate_field_at(&view, 0.6).unwrap(), 0.5);
    }
}
