//! Flat `key = value` configuration shared by every command.
//!
//! A config file is a TOML document without tables. Command-line overrides
//! `KEY=VAL` are applied on top; `VAL` is read as a TOML value and falls back
//! to a plain string. Every key that a command reads is recorded with its
//! effective value so results files can echo the full configuration.

use std::collections::BTreeMap;
use std::path::Path;

use fieldcdf_core::bounds::{self, EpsRule};
use fieldcdf_core::{AmplitudeLaw, FieldSpec, IntersampleDistribution, IntersampleKind};
use toml::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default)]
pub struct ConfigMap {
    entries: BTreeMap<String, Value>,
    echo: BTreeMap<String, String>,
}

impl ConfigMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let table: toml::Table =
            toml::from_str(text).map_err(|e| Error::config(format!("invalid config: {e}")))?;
        let mut entries = BTreeMap::new();
        for (key, value) in table {
            if matches!(value, Value::Table(_)) {
                return Err(Error::config(format!(
                    "key `{key}`: tables are not allowed, the config is flat"
                )));
            }
            entries.insert(key, value);
        }
        Ok(ConfigMap {
            entries,
            echo: BTreeMap::new(),
        })
    }

    /// Reads `path` if given, then applies `overrides` in order.
    pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<Self> {
        let mut map = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| {
                    Error::config(format!("cannot read config file {}: {e}", p.display()))
                })?;
                Self::from_toml_str(&text)
                    .map_err(|e| Error::config(format!("{}: {e}", p.display())))?
            }
            None => Self::new(),
        };
        for kv in overrides {
            map.apply_override(kv)?;
        }
        Ok(map)
    }

    pub fn apply_override(&mut self, kv: &str) -> Result<()> {
        let (key, raw) = kv
            .split_once('=')
            .ok_or_else(|| Error::config(format!("override `{kv}` is not KEY=VAL")))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(Error::config(format!("override `{kv}` has an empty key")));
        }
        self.set(key, parse_value(raw.trim()));
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.entries.insert(key.to_string(), value);
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    /// Effective values of every key read so far, sorted by key.
    pub fn echo(&self) -> Vec<(String, String)> {
        self.echo
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }

    /// Fails on keys that were supplied but never read.
    pub fn finish(&self) -> Result<()> {
        let unknown: Vec<&str> = self
            .entries
            .keys()
            .filter(|k| !self.echo.contains_key(*k))
            .map(String::as_str)
            .collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            Err(Error::config(format!(
                "unknown key(s): {}",
                unknown.join(", ")
            )))
        }
    }

    fn record(&mut self, key: &str, value: String) {
        self.echo.insert(key.to_string(), value);
    }

    fn raw(&self, key: &str) -> Option<&Value> {
        self.entries.get(key)
    }

    pub fn f64_or(&mut self, key: &str, default: f64) -> Result<f64> {
        let v = self.opt_f64(key)?.unwrap_or(default);
        self.record(key, fmt_f64(v));
        Ok(v)
    }

    pub fn opt_f64(&mut self, key: &str) -> Result<Option<f64>> {
        let v = match self.raw(key) {
            None => None,
            Some(v) => Some(as_f64(key, v)?),
        };
        if let Some(x) = v {
            self.record(key, fmt_f64(x));
        }
        Ok(v)
    }

    pub fn u64_or(&mut self, key: &str, default: u64) -> Result<u64> {
        let v = match self.raw(key) {
            None => default,
            Some(v) => as_u64(key, v)?,
        };
        self.record(key, v.to_string());
        Ok(v)
    }

    pub fn string_or(&mut self, key: &str, default: &str) -> Result<String> {
        let v = self.opt_string(key)?.unwrap_or_else(|| default.to_string());
        self.record(key, quote(&v));
        Ok(v)
    }

    pub fn opt_string(&mut self, key: &str) -> Result<Option<String>> {
        let v = match self.raw(key) {
            None => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(Value::Integer(i)) => Some(i.to_string()),
            Some(Value::Float(f)) => Some(fmt_f64(*f)),
            Some(other) => {
                return Err(Error::config(format!(
                    "key `{key}`: expected a string, got {other}"
                )))
            }
        };
        if let Some(s) = &v {
            self.record(key, quote(s));
        }
        Ok(v)
    }

    /// A list of numbers; a scalar is read as a one-element list.
    pub fn f64_list_or(&mut self, key: &str, default: &[f64]) -> Result<Vec<f64>> {
        let v = self.opt_f64_list(key)?.unwrap_or_else(|| default.to_vec());
        self.record(key, fmt_list(v.iter().map(|x| fmt_f64(*x))));
        Ok(v)
    }

    pub fn opt_f64_list(&mut self, key: &str) -> Result<Option<Vec<f64>>> {
        let v = match self.raw(key) {
            None => None,
            Some(Value::Array(items)) => Some(
                items
                    .iter()
                    .map(|x| as_f64(key, x))
                    .collect::<Result<Vec<_>>>()?,
            ),
            Some(scalar) => Some(vec![as_f64(key, scalar)?]),
        };
        if let Some(list) = &v {
            self.record(key, fmt_list(list.iter().map(|x| fmt_f64(*x))));
        }
        Ok(v)
    }

    /// A list of `[x, y]` pairs.
    pub fn opt_pairs(&mut self, key: &str) -> Result<Option<Vec<(f64, f64)>>> {
        let v = match self.raw(key) {
            None => None,
            Some(Value::Array(items)) => Some(
                items
                    .iter()
                    .map(|item| match item {
                        Value::Array(p) if p.len() == 2 => {
                            Ok((as_f64(key, &p[0])?, as_f64(key, &p[1])?))
                        }
                        other => Err(Error::config(format!(
                            "key `{key}`: expected [x, y], got {other}"
                        ))),
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            Some(other) => {
                return Err(Error::config(format!(
                    "key `{key}`: expected a list of [x, y] pairs, got {other}"
                )))
            }
        };
        if let Some(pairs) = &v {
            self.record(key, fmt_pairs(pairs));
        }
        Ok(v)
    }

    pub fn u64_list_or(&mut self, key: &str, default: &[u64]) -> Result<Vec<u64>> {
        let v = match self.raw(key) {
            None => default.to_vec(),
            Some(Value::Array(items)) => items
                .iter()
                .map(|x| as_u64(key, x))
                .collect::<Result<Vec<_>>>()?,
            Some(scalar) => vec![as_u64(key, scalar)?],
        };
        self.record(key, fmt_list(v.iter().map(u64::to_string)));
        Ok(v)
    }
}

fn parse_value(raw: &str) -> Value {
    let doc = format!("v = {raw}");
    match toml::from_str::<toml::Table>(&doc) {
        Ok(mut t) => t
            .remove("v")
            .unwrap_or_else(|| Value::String(raw.to_string())),
        Err(_) => Value::String(raw.to_string()),
    }
}

fn as_f64(key: &str, v: &Value) -> Result<f64> {
    match v {
        Value::Float(f) => Ok(*f),
        Value::Integer(i) => Ok(*i as f64),
        other => Err(Error::config(format!(
            "key `{key}`: expected a number, got {other}"
        ))),
    }
}

fn as_u64(key: &str, v: &Value) -> Result<u64> {
    match v {
        Value::Integer(i) if *i >= 0 => Ok(*i as u64),
        Value::String(s) if s.parse::<u64>().is_ok() => Ok(s.parse().expect("checked")),
        Value::Float(f) if *f >= 0.0 && f.fract() == 0.0 && *f < 9.007_199_254_740_992e15 => {
            Ok(*f as u64)
        }
        other => Err(Error::config(format!(
            "key `{key}`: expected a non-negative integer, got {other}"
        ))),
    }
}

/// Shortest round-trip decimal, always with a `.` or exponent so it reads back
/// as a TOML float.
pub fn fmt_f64(x: f64) -> String {
    let s = format!("{x}");
    if s.contains(['.', 'e', 'E', 'i', 'N']) {
        s
    } else {
        format!("{s}.0")
    }
}

pub fn fmt_list(items: impl Iterator<Item = String>) -> String {
    let parts: Vec<String> = items.collect();
    format!("[{}]", parts.join(", "))
}

pub fn fmt_pairs(pairs: &[(f64, f64)]) -> String {
    fmt_list(
        pairs
            .iter()
            .map(|(x, y)| format!("[{}, {}]", fmt_f64(*x), fmt_f64(*y))),
    )
}

pub fn fmt_f64_list(values: &[f64]) -> String {
    fmt_list(values.iter().map(|x| fmt_f64(*x)))
}

pub fn quote(s: &str) -> String {
    Value::String(s.to_string()).to_string()
}

/// Parses `n^-1/4`, `min` or a positive number.
pub fn parse_eps_rule(text: &str) -> Result<EpsRule> {
    match text.trim() {
        "min" => Ok(EpsRule::Minimize(bounds::default_eps_grid())),
        "n^-1/4" | "n^(-1/4)" => Ok(EpsRule::QuarterPower),
        other => match other.parse::<f64>() {
            Ok(eps) if eps.is_finite() && eps > 0.0 => Ok(EpsRule::Fixed(eps)),
            _ => Err(Error::config(format!(
                "eps rule `{other}`: expected `min`, `n^-1/4` or a positive number"
            ))),
        },
    }
}

pub fn check_delta(delta: f64) -> Result<f64> {
    if delta > 0.0 && delta < 1.0 {
        Ok(delta)
    } else {
        Err(Error::config(format!("delta = {delta} must lie in (0, 1)")))
    }
}

/// Reads the field description.
///
/// Keys: `field` (`cosine`, `constant`, `table`), `a0`, `freq`, `harmonics`,
/// `amp_scale`, `amp_period`, `amp_modulation`, `amp_ceilings`, `amp_fixed`,
/// `table_path`, `declared_bound`, `declared_lipschitz`.
pub fn field_from_map(map: &mut ConfigMap) -> Result<FieldSpec> {
    let kind = map.string_or("field", "cosine")?;
    let spec = match kind.as_str() {
        "cosine" => {
            let a0 = map.f64_or("a0", 500.0)?;
            let freq = map.f64_or("freq", 5.0)?;
            let law = if let Some(fixed) = map.opt_f64_list("amp_fixed")? {
                AmplitudeLaw::Fixed(fixed)
            } else {
                let period = map.f64_or("amp_period", 24.0)?;
                let modulation = map.f64_or("amp_modulation", 0.5)?;
                let ceilings = match map.opt_f64_list("amp_ceilings")? {
                    Some(c) => c,
                    None => {
                        let harmonics = map.u64_or("harmonics", 5)? as usize;
                        let scale = map.f64_or("amp_scale", 10.0)?;
                        (1..=harmonics).map(|k| scale / k as f64).collect()
                    }
                };
                AmplitudeLaw::Uniform {
                    ceilings,
                    period,
                    modulation,
                }
            };
            FieldSpec::cosine_sum(a0, freq, law)
        }
        "constant" => {
            let a0 = map.f64_or("a0", 500.0)?;
            FieldSpec::cosine_sum(a0, 0.0, AmplitudeLaw::Fixed(vec![0.0]))
        }
        "table" => {
            let knots = match map.opt_pairs("table_knots")? {
                Some(knots) => knots,
                None => {
                    let path = map.opt_string("table_path")?.ok_or_else(|| {
                        Error::config("field = \"table\" needs `table_path` or `table_knots`")
                    })?;
                    crate::dataset::load_field_table(Path::new(&path))?
                }
            };
            FieldSpec::table(knots)
        }
        other => {
            return Err(Error::config(format!(
                "field `{other}`: expected cosine, constant or table"
            )))
        }
    }
    .map_err(|e| Error::config(format!("field: {e}")))?;
    let bound = map.opt_f64("declared_bound")?;
    let lipschitz = map.opt_f64("declared_lipschitz")?;
    if bound.is_none() && lipschitz.is_none() {
        return Ok(spec);
    }
    let b = bound.unwrap_or(spec.declared_bound());
    let a = lipschitz.unwrap_or(spec.declared_lipschitz());
    spec.with_declared(b, a)
        .map_err(|e| Error::config(format!("field: {e}")))
}

/// Inter-sample law without its rate; the rate comes from the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistFamily {
    pub kind: IntersampleKind,
    pub lambda: f64,
}

impl DistFamily {
    pub fn at(&self, n: f64) -> fieldcdf_core::Result<IntersampleDistribution> {
        IntersampleDistribution::new(self.kind, n, self.lambda)
    }
}

/// Keys: `dist` (`triangular`, `beta`, `deterministic`), `lambda`,
/// `beta_concentration`.
pub fn dist_from_map(map: &mut ConfigMap) -> Result<DistFamily> {
    let name = map.string_or("dist", "triangular")?;
    let family = match name.as_str() {
        "triangular" => DistFamily {
            kind: IntersampleKind::TriangularSymmetric,
            lambda: map.f64_or("lambda", 2.0)?,
        },
        "deterministic" => DistFamily {
            kind: IntersampleKind::Deterministic,
            lambda: map.f64_or("lambda", 2.0)?,
        },
        "beta" => {
            let lambda = map.f64_or("lambda", 2.0)?;
            let concentration = map.f64_or("beta_concentration", 4.0)?;
            DistFamily {
                kind: IntersampleKind::ScaledBeta { concentration },
                lambda,
            }
        }
        other => {
            return Err(Error::config(format!(
                "dist `{other}`: expected triangular, beta or deterministic"
            )))
        }
    };
    // probe with the smallest rate every stochastic kind accepts
    family
        .at(family.lambda.max(1.0))
        .map_err(|e| Error::config(format!("dist: {e}")))?;
    Ok(family)
}
