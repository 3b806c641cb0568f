//! Mobile-sensor trial logs, fixed-sensor reference samples and their
//! comparison.
//!
//! Trial CSV (`value` in device units, one row per sample, no location):
//!
//! ```text
//! # device: <free text>
//! # path_length_m: 1015
//! # sample_period_s: 1
//! # value_range: 30,130
//! trial_id,sample_index,value
//! 0,1,61.5
//! ```
//!
//! `sample_index` starts at 1 in each trial. Rows of a trial are contiguous.
//! Metadata lines are optional; `value_range` turns out-of-range values into
//! warnings.
//!
//! Reference CSV, one row per fixed-sensor sample:
//!
//! ```text
//! location_id,s,value
//! 1,0.1,58.25
//! ```
//!
//! A row with an empty `value` declares a location without adding a sample.
//!
//! Location sidecar written next to synthetic trials:
//! `trial_id,sample_index,location`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use fieldcdf_core::bounds::dkw_epsilon;
use fieldcdf_core::ecdf::{self, EmpiricalCdf};
use fieldcdf_core::renewal::{run_trial, TRIAL_SPACING};
use fieldcdf_core::seed;
use fieldcdf_core::{estimate_field_at, FieldSpec, IntersampleDistribution, TrialRecord};

use crate::error::{Error, Result};
use crate::io::{read_text, write_atomic};

pub const TRIAL_HEADER: &str = "trial_id,sample_index,value";
pub const REFERENCE_HEADER: &str = "location_id,s,value";
pub const LOCATION_HEADER: &str = "trial_id,sample_index,location";
pub const TABLE_HEADER: &str = "s,value";

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrialSet {
    /// `# key: value` lines in file order.
    pub metadata: Vec<(String, String)>,
    pub trials: Vec<TrialRecord>,
    /// Non-fatal findings from loading, such as out-of-range values.
    pub warnings: Vec<String>,
}

impl TrialSet {
    pub fn new(metadata: Vec<(String, String)>, trials: Vec<TrialRecord>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for t in &trials {
            if !seen.insert(t.trial_id()) {
                return Err(Error::config(format!(
                    "duplicate trial id {}",
                    t.trial_id()
                )));
            }
        }
        Ok(TrialSet {
            metadata,
            trials,
            warnings: Vec::new(),
        })
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn device(&self) -> Option<&str> {
        self.meta("device")
    }

    pub fn path_length_m(&self) -> Option<f64> {
        self.meta("path_length_m").and_then(|v| v.parse().ok())
    }

    pub fn sample_period_s(&self) -> Option<f64> {
        self.meta("sample_period_s").and_then(|v| v.parse().ok())
    }

    pub fn value_range(&self) -> Option<(f64, f64)> {
        parse_range(self.meta("value_range")?)
    }

    pub fn mean_sample_count(&self) -> f64 {
        let total: usize = self.trials.iter().map(TrialRecord::sample_count).sum();
        total as f64 / self.trials.len().max(1) as f64
    }
}

fn parse_range(text: &str) -> Option<(f64, f64)> {
    let (lo, hi) = text.split_once(',')?;
    let lo: f64 = lo.trim().parse().ok()?;
    let hi: f64 = hi.trim().parse().ok()?;
    (lo <= hi).then_some((lo, hi))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceEntry {
    pub location_id: String,
    pub s: f64,
    pub samples: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReferenceSet {
    pub entries: Vec<ReferenceEntry>,
}

impl ReferenceSet {
    pub fn get(&self, location_id: &str) -> Option<&ReferenceEntry> {
        self.entries.iter().find(|e| e.location_id == location_id)
    }
}

/// CSV records with their 1-based line numbers. Lines starting with `#` are
/// skipped; the first remaining record must equal `header`.
fn records(path: &Path, text: &str, header: &str) -> Result<Vec<(u64, csv::StringRecord)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    let mut header_seen = false;
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            Error::parse(path, line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if !header_seen {
            let got: Vec<&str> = rec.iter().collect();
            if got.join(",") != header {
                return Err(Error::parse(
                    path,
                    line,
                    format!("expected header `{header}`, found `{}`", got.join(",")),
                ));
            }
            header_seen = true;
            continue;
        }
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if rec.len() != 3 {
            return Err(Error::parse(
                path,
                line,
                format!("expected 3 columns, found {}", rec.len()),
            ));
        }
        out.push((line, rec));
    }
    if !header_seen {
        return Err(Error::parse(path, 1, format!("missing header `{header}`")));
    }
    Ok(out)
}

fn field<T: std::str::FromStr>(path: &Path, line: u64, name: &str, raw: &str) -> Result<T> {
    if raw.is_empty() {
        return Err(Error::parse(path, line, format!("missing `{name}`")));
    }
    raw.parse()
        .map_err(|_| Error::parse(path, line, format!("invalid `{name}`: `{raw}`")))
}

fn finite(path: &Path, line: u64, name: &str, raw: &str) -> Result<f64> {
    let v: f64 = field(path, line, name, raw)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::parse(path, line, format!("`{name}` must be finite")))
    }
}

fn leading_metadata(text: &str) -> Vec<(String, String)> {
    text.lines()
        .take_while(|l| l.starts_with('#'))
        .filter_map(|l| {
            let (k, v) = l.trim_start_matches('#').split_once(':')?;
            Some((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

/// `(trial_id, [(line, value)])` for one contiguous trial.
type Block = (u64, Vec<(u64, f64)>);

/// Rows grouped into contiguous per-trial blocks with 1-based indices.
fn indexed_blocks(
    path: &Path,
    rows: Vec<(u64, csv::StringRecord)>,
    value_name: &str,
) -> Result<Vec<Block>> {
    let mut blocks: Vec<Block> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (line, rec) in rows {
        let id: u64 = field(path, line, "trial_id", &rec[0])?;
        let idx: usize = field(path, line, "sample_index", &rec[1])?;
        let value = finite(path, line, value_name, &rec[2])?;
        let start_new = blocks.last().is_none_or(|(last, _)| *last != id);
        if start_new {
            if !seen.insert(id) {
                return Err(Error::parse(
                    path,
                    line,
                    format!("trial {id} continues after another trial; trial ids must be unique"),
                ));
            }
            blocks.push((id, Vec::new()));
        }
        let block = &mut blocks.last_mut().expect("pushed above").1;
        if idx != block.len() + 1 {
            return Err(Error::parse(
                path,
                line,
                format!(
                    "trial {id}: expected sample_index {}, found {idx}",
                    block.len() + 1
                ),
            ));
        }
        block.push((line, value));
    }
    Ok(blocks)
}

pub fn load_trials(path: &Path) -> Result<TrialSet> {
    let text = read_text(path)?;
    let metadata = leading_metadata(&text);
    let rows = records(path, &text, TRIAL_HEADER)?;
    let blocks = indexed_blocks(path, rows, "value")?;
    if blocks.is_empty() {
        return Err(Error::validation(path, "no trials"));
    }
    let mut set = TrialSet {
        metadata,
        trials: Vec::with_capacity(blocks.len()),
        warnings: Vec::new(),
    };
    let range = set.value_range();
    if set.meta("value_range").is_some() && range.is_none() {
        set.warnings.push(format!(
            "{}: unreadable value_range, expected `lo,hi`",
            path.display()
        ));
    }
    for (id, samples) in blocks {
        if let Some((lo, hi)) = range {
            for &(line, v) in &samples {
                if v < lo || v > hi {
                    set.warnings.push(format!(
                        "{}:{line}: value {v} outside device range [{lo}, {hi}]",
                        path.display()
                    ));
                }
            }
        }
        let values = samples.into_iter().map(|(_, v)| v).collect();
        set.trials.push(TrialRecord::observed(id, values)?);
    }
    Ok(set)
}

pub fn write_trials(set: &TrialSet, path: &Path) -> Result<()> {
    write_atomic(path, |w| {
        for (k, v) in &set.metadata {
            writeln!(w, "# {k}: {v}")?;
        }
        writeln!(w, "{TRIAL_HEADER}")?;
        for t in &set.trials {
            for (i, v) in t.values().iter().enumerate() {
                writeln!(w, "{},{},{v}", t.trial_id(), i + 1)?;
            }
        }
        Ok(())
    })
}

/// True sample locations keyed by trial id.
pub fn load_locations(path: &Path) -> Result<BTreeMap<u64, Vec<f64>>> {
    let text = read_text(path)?;
    let rows = records(path, &text, LOCATION_HEADER)?;
    let mut out = BTreeMap::new();
    for (id, samples) in indexed_blocks(path, rows, "location")? {
        for &(line, s) in &samples {
            if !(0.0..=1.0).contains(&s) {
                return Err(Error::parse(
                    path,
                    line,
                    format!("location {s} outside [0, 1]"),
                ));
            }
        }
        out.insert(id, samples.into_iter().map(|(_, s)| s).collect());
    }
    Ok(out)
}

pub fn write_locations<'a, I>(trials: I, path: &Path) -> Result<()>
where
    I: IntoIterator<Item = (u64, &'a [f64])>,
{
    write_atomic(path, |w| {
        writeln!(w, "{LOCATION_HEADER}")?;
        for (id, locs) in trials {
            for (i, s) in locs.iter().enumerate() {
                writeln!(w, "{id},{},{s}", i + 1)?;
            }
        }
        Ok(())
    })
}

pub fn load_reference(path: &Path) -> Result<ReferenceSet> {
    let text = read_text(path)?;
    let rows = records(path, &text, REFERENCE_HEADER)?;
    let mut set = ReferenceSet::default();
    for (line, rec) in rows {
        let id = rec[0].to_string();
        if id.is_empty() {
            return Err(Error::parse(path, line, "missing `location_id`"));
        }
        let s = finite(path, line, "s", &rec[1])?;
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::validation(
                path,
                format!("line {line}: location `{id}` has s = {s} outside [0, 1]"),
            ));
        }
        let pos = match set.entries.iter().position(|e| e.location_id == id) {
            Some(p) => {
                if set.entries[p].s != s {
                    return Err(Error::validation(
                        path,
                        format!(
                            "line {line}: location `{id}` has s = {s}, earlier rows say {}",
                            set.entries[p].s
                        ),
                    ));
                }
                p
            }
            None => {
                set.entries.push(ReferenceEntry {
                    location_id: id,
                    s,
                    samples: Vec::new(),
                });
                set.entries.len() - 1
            }
        };
        if !rec[2].is_empty() {
            let v = finite(path, line, "value", &rec[2])?;
            set.entries[pos].samples.push(v);
        }
    }
    if set.entries.is_empty() {
        return Err(Error::validation(path, "no locations"));
    }
    if let Some(e) = set.entries.iter().find(|e| e.samples.is_empty()) {
        return Err(Error::validation(
            path,
            format!("location `{}` has no samples", e.location_id),
        ));
    }
    Ok(set)
}

pub fn write_reference(set: &ReferenceSet, path: &Path) -> Result<()> {
    let mut out = Vec::new();
    {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(&mut out);
        w.write_record(REFERENCE_HEADER.split(','))
            .map_err(|e| Error::validation(path, e.to_string()))?;
        for e in &set.entries {
            let s = e.s.to_string();
            for v in &e.samples {
                w.write_record([e.location_id.as_str(), s.as_str(), v.to_string().as_str()])
                    .map_err(|e| Error::validation(path, e.to_string()))?;
            }
        }
        w.flush().map_err(|e| Error::io(path, e))?;
    }
    write_atomic(path, |w| w.write_all(&out))
}

/// Piecewise-linear field knots from a `s,value` CSV.
pub fn load_field_table(path: &Path) -> Result<Vec<(f64, f64)>> {
    let text = read_text(path)?;
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i as u64 + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if points.is_empty() && line == TABLE_HEADER {
            continue;
        }
        let (s, v) = line
            .split_once(',')
            .ok_or_else(|| Error::parse(path, line_no, "expected `s,value`"))?;
        points.push((
            finite(path, line_no, "s", s.trim())?,
            finite(path, line_no, "value", v.trim())?,
        ));
    }
    Ok(points)
}

/// Mobile-vs-fixed CDF comparison at one reference location.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub location_id: String,
    pub s: f64,
    /// CDF of the location-unaware estimates, one per trial.
    pub estimated: EmpiricalCdf,
    /// CDF of the fixed-sensor samples.
    pub reference: EmpiricalCdf,
    pub avg_diff: f64,
    pub max_diff: f64,
    /// DKW half-width for the estimated CDF at the requested δ.
    pub dkw_eps: f64,
}

pub fn compare_mobile_vs_fixed(
    trials: &TrialSet,
    reference: &ReferenceSet,
    location_id: &str,
    delta: f64,
    grid_size: usize,
) -> Result<Comparison> {
    let entry = reference
        .get(location_id)
        .ok_or_else(|| Error::UnknownLocation(location_id.to_string()))?;
    if trials.trials.is_empty() {
        return Err(Error::config("trial set is empty"));
    }
    let estimates = trials
        .trials
        .iter()
        .map(|t| estimate_field_at(&t.view(), entry.s))
        .collect::<fieldcdf_core::Result<Vec<_>>>()?;
    let estimated = EmpiricalCdf::from_vec(estimates)?;
    let reference_cdf = EmpiricalCdf::new(&entry.samples)?;
    let grid = ecdf::default_grid(&estimated, &reference_cdf, grid_size)?;
    Ok(Comparison {
        location_id: entry.location_id.clone(),
        s: entry.s,
        avg_diff: ecdf::avg_pointwise_diff(&estimated, &reference_cdf, &grid)?,
        max_diff: ecdf::max_pointwise_diff(&estimated, &reference_cdf),
        dkw_eps: dkw_epsilon(estimated.len() as u64, delta)?,
        estimated,
        reference: reference_cdf,
    })
}

/// Recipe for a synthetic data set in the two CSV formats.
#[derive(Debug, Clone)]
pub struct FixtureSpec {
    pub field: FieldSpec,
    pub dist: IntersampleDistribution,
    pub trials: usize,
    pub reference_samples: usize,
    pub locations: Vec<(String, f64)>,
    pub seed: u64,
}

impl FixtureSpec {
    /// 43 trials, 200 reference samples, nine locations at `s = k/10`.
    pub fn new(field: FieldSpec, dist: IntersampleDistribution, seed: u64) -> Self {
        FixtureSpec {
            field,
            dist,
            trials: 43,
            reference_samples: 200,
            locations: decile_locations(),
            seed,
        }
    }
}

pub fn decile_locations() -> Vec<(String, f64)> {
    (1..=9).map(|k| (k.to_string(), k as f64 / 10.0)).collect()
}

#[derive(Debug, Clone)]
pub struct Fixtures {
    /// Observed trials, without locations.
    pub trials: TrialSet,
    /// True sample locations per trial id, for the sidecar file.
    pub locations: Vec<(u64, Vec<f64>)>,
    pub reference: ReferenceSet,
}

const TAG_FIXTURE_TRIAL: u64 = 0x7472_6961_6c00_0001;
const TAG_FIXTURE_REFERENCE: u64 = 0x7265_6600_0000_0002;

/// Mobile trials from [`run_trial`] and fixed-sensor samples from fresh field
/// realizations, one per reference epoch, shared by all locations.
pub fn synthesize_fixtures(spec: &FixtureSpec) -> Result<Fixtures> {
    if spec.trials == 0 || spec.reference_samples == 0 || spec.locations.is_empty() {
        return Err(Error::config(
            "fixtures need at least one trial, reference sample and location",
        ));
    }
    let mut records = Vec::with_capacity(spec.trials);
    let mut locations = Vec::with_capacity(spec.trials);
    for i in 0..spec.trials as u64 {
        let trial_seed = seed::derive(spec.seed, &[TAG_FIXTURE_TRIAL, i]);
        let sim = run_trial(&spec.field, &spec.dist, i, trial_seed)?;
        locations.push((i, sim.locations.locations().to_vec()));
        records.push(sim.record.strip_locations());
    }
    let metadata = vec![
        ("device".to_string(), "synthetic fixture".to_string()),
        ("path_length_m".to_string(), "1015".to_string()),
        ("sample_period_s".to_string(), "1".to_string()),
        ("n".to_string(), spec.dist.rate().to_string()),
    ];
    let trials = TrialSet::new(metadata, records)?;

    let mut entries: Vec<ReferenceEntry> = spec
        .locations
        .iter()
        .map(|(id, s)| ReferenceEntry {
            location_id: id.clone(),
            s: *s,
            samples: Vec::with_capacity(spec.reference_samples),
        })
        .collect();
    for j in 0..spec.reference_samples as u64 {
        let epoch = j as f64 * TRIAL_SPACING;
        let mut rng = seed::rng_from_seed(seed::derive(spec.seed, &[TAG_FIXTURE_REFERENCE, j]));
        let realization = spec.field.realize(epoch, &mut rng);
        for e in &mut entries {
            e.samples.push(realization.eval(e.s)?);
        }
    }
    Ok(Fixtures {
        trials,
        locations,
        reference: ReferenceSet { entries },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixturePaths {
    pub trials: PathBuf,
    pub locations: PathBuf,
    pub reference: PathBuf,
}

impl FixturePaths {
    pub fn in_dir(dir: &Path) -> Self {
        FixturePaths {
            trials: dir.join("trials.csv"),
            locations: dir.join("trials.locations.csv"),
            reference: dir.join("reference.csv"),
        }
    }
}

pub fn write_fixtures(fx: &Fixtures, dir: &Path) -> Result<FixturePaths> {
    if !dir.is_dir() {
        return Err(Error::io(
            dir,
            std::io::Error::new(
                std::io::ErrorKind::NotFound,
                "output directory does not exist",
            ),
        ));
    }
    let paths = FixturePaths::in_dir(dir);
    write_trials(&fx.trials, &paths.trials)?;
    write_locations(
        fx.locations.iter().map(|(id, l)| (*id, l.as_slice())),
        &paths.locations,
    )?;
    write_reference(&fx.reference, &paths.reference)?;
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    #[test]
    fn two_trials_keep_row_counts() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            dir.path(),
            "t.csv",
            "# device: meter\n# sample_period_s: 1\ntrial_id,sample_index,value\n1,1,50\n1,2,51\n1,3,52\n2,1,60\n2,2,61\n",
        );
        let set = load_trials(&p).unwrap();
        let counts: Vec<usize> = set.trials.iter().map(|t| t.sample_count()).collect();
        assert_eq!(counts, vec![3, 2]);
        assert_eq!(set.device(), Some("meter"));
        assert_eq!(set.sample_period_s(), Some(1.0));
        assert!(set.trials.iter().all(|t| t.hidden_locations().is_none()));
    }

    #[test]
    fn missing_value_names_line() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            dir.path(),
            "t.csv",
            "# device: meter\ntrial_id,sample_index,value\n1,1,50\n1,2,\n",
        );
        let err = load_trials(&p).unwrap_err().to_string();
        assert!(err.contains(":4:"), "{err}");
        assert!(err.contains("value"), "{err}");
    }

    #[test]
    fn short_row_names_line() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            dir.path(),
            "t.csv",
            "trial_id,sample_index,value\n1,1,50\n1,2\n",
        );
        let err = load_trials(&p).unwrap_err().to_string();
        assert!(err.contains(":3:"), "{err}");
    }

    #[test]
    fn out_of_range_is_warning() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            dir.path(),
            "t.csv",
            "# value_range: 30,130\ntrial_id,sample_index,value\n1,1,50\n1,2,140\n",
        );
        let set = load_trials(&p).unwrap();
        assert_eq!(set.warnings.len(), 1);
        assert!(set.warnings[0].contains(":4:"));
    }

    #[test]
    fn duplicate_trial_block_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            dir.path(),
            "t.csv",
            "trial_id,sample_index,value\n1,1,50\n2,1,50\n1,1,50\n",
        );
        assert!(load_trials(&p).is_err());
    }

    #[test]
    fn canonical_trials_round_trip_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let body = "# device: meter\n# path_length_m: 1015\ntrial_id,sample_index,value\n0,1,61.5\n0,2,0.1\n3,1,-2e-7\n";
        let p = write(dir.path(), "t.csv", body);
        let set = load_trials(&p).unwrap();
        let out = dir.path().join("out.csv");
        write_trials(&set, &out).unwrap();
        let body_out = std::fs::read_to_string(&out).unwrap();
        // Display renders -2e-7 as -0.0000002
        assert_eq!(load_trials(&out).unwrap().trials, set.trials);
        let canonical = body_out.clone();
        write(dir.path(), "c.csv", &canonical);
        write_trials(&load_trials(&dir.path().join("c.csv")).unwrap(), &out).unwrap();
        assert_eq!(std::fs::read_to_string(&out).unwrap(), canonical);
    }

    #[test]
    fn reference_validation() {
        let dir = tempfile::tempdir().unwrap();
        let bad_s = write(dir.path(), "a.csv", "location_id,s,value\n1,1.2,50\n");
        assert!(matches!(
            load_reference(&bad_s),
            Err(Error::Validation { .. })
        ));
        let empty = write(
            dir.path(),
            "b.csv",
            "location_id,s,value\n1,0.1,50\n2,0.2,\n",
        );
        let err = load_reference(&empty).unwrap_err();
        assert!(matches!(err, Error::Validation { .. }));
        assert!(err.to_string().contains("`2`"));
        let ok = write(
            dir.path(),
            "c.csv",
            "location_id,s,value\n\"a, b\",0.5,50\n\"a, b\",0.5,51\n",
        );
        let set = load_reference(&ok).unwrap();
        assert_eq!(set.entries[0].location_id, "a, b");
        let out = dir.path().join("d.csv");
        write_reference(&set, &out).unwrap();
        assert_eq!(
            std::fs::read_to_string(&out).unwrap(),
            std::fs::read_to_string(&ok).unwrap()
        );
    }

    #[test]
    fn single_reference_sample_is_unit_step() {
        let trials = TrialSet::new(
            Vec::new(),
            vec![TrialRecord::observed(0, vec![3.0, 3.0]).unwrap()],
        )
        .unwrap();
        let reference = ReferenceSet {
            entries: vec![ReferenceEntry {
                location_id: "x".into(),
                s: 0.5,
                samples: vec![3.0],
            }],
        };
        let cmp = compare_mobile_vs_fixed(&trials, &reference, "x", 0.05, 64).unwrap();
        assert_eq!(cmp.reference.eval(2.999), 0.0);
        assert_eq!(cmp.reference.eval(3.0), 1.0);
        assert_eq!(cmp.max_diff, 0.0);
        assert!(matches!(
            compare_mobile_vs_fixed(&trials, &reference, "nope", 0.05, 64),
            Err(Error::UnknownLocation(_))
        ));
    }
}
