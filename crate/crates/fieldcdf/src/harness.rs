//! Monte-Carlo sweep over sampling rate `n` and trial count `N`.
//!
//! For every cell and repetition the harness runs `N` simulated trials. At
//! each evaluation location `s` it compares
//!
//! * the CDF of the location-unaware estimates `X̂ᵢ(s)`,
//! * the CDF of the true values `Xᵢ(s)` from the same trials (`avg_diff`,
//!   `max_diff`), and
//! * a reference CDF of the marginal of `X(s)` built from `reference_samples`
//!   independent field realizations (`ref_diff`, checked against the
//!   closed-form bound for `exceeded`).
//!
//! Seeds: repetition `r` of cell `(n, N)` uses
//! `derive(seed, [REP_TAG, n.to_bits(), N, r])`; trial `i` of it uses
//! `derive(rep_seed, [i])`. Reference realization `j` uses
//! `derive(seed, [REF_TAG, j])` at epoch `j`.

use std::io::Write;
use std::path::{Path, PathBuf};

use fieldcdf_core::bounds::{self, BoundParams, EpsRule};
use fieldcdf_core::ecdf::{self, EmpiricalCdf};
use fieldcdf_core::renewal::{run_trial, TRIAL_SPACING};
use fieldcdf_core::{estimate_field_at, seed, AmplitudeLaw, FieldKind, FieldSpec, IntersampleKind};
use rayon::prelude::*;

use crate::config::{self, ConfigMap, DistFamily};
use crate::error::{Error, Result};
use crate::io::{read_text, write_atomic};

/// `key = value` config lines echoed at the top of results files.
pub type Echo = Vec<(String, String)>;

pub const RESULTS_HEADER: &str = "s,n,N,rep,avg_diff,max_diff,bound,exceeded";
pub const METRICS_HEADER: &str = "metric,s,n,N,value";

const REP_TAG: u64 = 0x7265_7065_7469_7469;
const REF_TAG: u64 = 0x7265_6665_7265_6e63;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundSettings {
    pub c: f64,
    pub beta: f64,
    pub delta: f64,
    pub eps_rule: EpsRule,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub field: FieldSpec,
    pub dist: DistFamily,
    pub s_eval: Vec<f64>,
    pub n_sweep: Vec<f64>,
    pub trials_sweep: Vec<u64>,
    pub repetitions: usize,
    pub seed: u64,
    pub metric_grid_size: usize,
    pub bounds: BoundSettings,
    /// Field realizations behind each reference CDF.
    pub reference_samples: usize,
    /// Multiplier on the histogram estimate of the reference density maximum.
    pub pdf_safety: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self::from_map(&mut ConfigMap::new()).expect("defaults are valid")
    }
}

impl ExperimentConfig {
    /// Reads harness, field and distribution keys. The caller checks for
    /// leftover keys with [`ConfigMap::finish`].
    pub fn from_map(map: &mut ConfigMap) -> Result<Self> {
        let field = config::field_from_map(map)?;
        let dist = config::dist_from_map(map)?;
        let s_eval = map.f64_list_or("s_eval", &[0.25, 0.5, 0.75])?;
        let n_sweep = map.f64_list_or("n_sweep", &[10.0, 100.0, 1000.0, 10000.0])?;
        let trials_sweep = map.u64_list_or("N_sweep", &[50, 500])?;
        let reps = map.u64_or("repetitions", 200)?;
        if reps == 0 {
            return Err(Error::config("repetitions must be >= 1"));
        }
        let scale = map.f64_or("scale", 1.0)?;
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::config(format!("scale = {scale} must be > 0")));
        }
        let eps_text = map.string_or("eps_rule", "min")?;
        let cfg = ExperimentConfig {
            field,
            dist,
            s_eval,
            n_sweep,
            trials_sweep,
            repetitions: scaled_repetitions(reps as usize, scale),
            seed: map.u64_or("seed", 0)?,
            metric_grid_size: map.u64_or("metric_grid_size", ecdf::DEFAULT_GRID_SIZE as u64)?
                as usize,
            bounds: BoundSettings {
                c: map.f64_or("C", 1.0)?,
                beta: map.f64_or("beta", 1.0)?,
                delta: map.f64_or("delta", 0.05)?,
                eps_rule: config::parse_eps_rule(&eps_text)?,
            },
            reference_samples: map.u64_or("reference_samples", 20_000)? as usize,
            pdf_safety: map.f64_or("pdf_safety", 1.25)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.s_eval.is_empty() || self.n_sweep.is_empty() || self.trials_sweep.is_empty() {
            return Err(Error::config(
                "s_eval, n_sweep and N_sweep must be non-empty",
            ));
        }
        if let Some(s) = self.s_eval.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return Err(Error::config(format!("s_eval value {s} outside [0, 1]")));
        }
        for &n in &self.n_sweep {
            self.dist
                .at(n)
                .map_err(|e| Error::config(format!("n = {n}: {e}")))?;
        }
        if self.trials_sweep.contains(&0) {
            return Err(Error::config("N_sweep values must be >= 1"));
        }
        if self.repetitions == 0 {
            return Err(Error::config("repetitions must be >= 1"));
        }
        if self.metric_grid_size == 0 {
            return Err(Error::config("metric_grid_size must be >= 1"));
        }
        if self.reference_samples < 2 {
            return Err(Error::config("reference_samples must be >= 2"));
        }
        if !(self.pdf_safety.is_finite() && self.pdf_safety >= 1.0) {
            return Err(Error::config("pdf_safety must be >= 1"));
        }
        config::check_delta(self.bounds.delta)?;
        let probe = self.bound_params(self.n_sweep[0], 1, 1.0, 1.0);
        probe
            .validate()
            .map_err(|e| Error::config(format!("bound parameters: {e}")))?;
        Ok(())
    }

    fn bound_params(&self, n: f64, trials: u64, eps: f64, max_pdf: f64) -> BoundParams {
        BoundParams {
            alpha: self.field.declared_lipschitz(),
            n,
            lambda: self.dist.lambda,
            c: self.bounds.c,
            beta: self.bounds.beta,
            eps,
            delta: self.bounds.delta,
            trials,
            max_pdf,
        }
    }

    /// Every setting as `key = value` lines that read back as a config.
    pub fn echo(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = Vec::new();
        let mut put = |k: &str, v: String| out.push((k.to_string(), v));
        match self.field.kind() {
            FieldKind::CosineSum {
                a0,
                freq,
                amplitudes,
            } => {
                put("field", config::quote("cosine"));
                put("a0", config::fmt_f64(*a0));
                put("freq", config::fmt_f64(*freq));
                match amplitudes {
                    AmplitudeLaw::Fixed(a) => put("amp_fixed", config::fmt_f64_list(a)),
                    AmplitudeLaw::Uniform {
                        ceilings,
                        period,
                        modulation,
                    } => {
                        put("amp_ceilings", config::fmt_f64_list(ceilings));
                        put("amp_period", config::fmt_f64(*period));
                        put("amp_modulation", config::fmt_f64(*modulation));
                    }
                }
            }
            FieldKind::Table(points) => {
                put("field", config::quote("table"));
                put("table_knots", config::fmt_pairs(points));
            }
        }
        put(
            "declared_bound",
            config::fmt_f64(self.field.declared_bound()),
        );
        put(
            "declared_lipschitz",
            config::fmt_f64(self.field.declared_lipschitz()),
        );
        let dist = match self.dist.kind {
            IntersampleKind::TriangularSymmetric => "triangular",
            IntersampleKind::Deterministic => "deterministic",
            IntersampleKind::ScaledBeta { concentration } => {
                put("beta_concentration", config::fmt_f64(concentration));
                "beta"
            }
        };
        put("dist", config::quote(dist));
        put("lambda", config::fmt_f64(self.dist.lambda));
        put("s_eval", config::fmt_f64_list(&self.s_eval));
        put("n_sweep", config::fmt_f64_list(&self.n_sweep));
        put(
            "N_sweep",
            config::fmt_list(self.trials_sweep.iter().map(u64::to_string)),
        );
        put("repetitions", self.repetitions.to_string());
        put("seed", self.seed.to_string());
        put("metric_grid_size", self.metric_grid_size.to_string());
        put("C", config::fmt_f64(self.bounds.c));
        put("beta", config::fmt_f64(self.bounds.beta));
        put("delta", config::fmt_f64(self.bounds.delta));
        let eps = match &self.bounds.eps_rule {
            EpsRule::Fixed(e) => config::fmt_f64(*e),
            EpsRule::QuarterPower => "n^-1/4".to_string(),
            EpsRule::Minimize(_) => "min".to_string(),
        };
        put("eps_rule", config::quote(&eps));
        put("reference_samples", self.reference_samples.to_string());
        put("pdf_safety", config::fmt_f64(self.pdf_safety));
        out
    }
}

/// `max(1, round(reps · scale))`.
pub fn scaled_repetitions(reps: usize, scale: f64) -> usize {
    ((reps as f64 * scale).round() as usize).max(1)
}

/// Reference CDF of `X(s)` and the density ceiling fed to the bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteReference {
    pub s: f64,
    pub cdf: EmpiricalCdf,
    pub max_pdf: f64,
}

/// Paired and reference distances for one `s` in one repetition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiteMetrics {
    pub avg_diff: f64,
    pub max_diff: f64,
    pub ref_diff: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepetitionRow {
    pub s: f64,
    pub n: f64,
    pub trials: u64,
    pub rep: usize,
    pub avg_diff: f64,
    pub max_diff: f64,
    /// Not written to the results CSV; summarized in the metrics file.
    pub ref_diff: f64,
    pub bound: f64,
    pub exceeded: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellSummary {
    pub s: f64,
    pub n: f64,
    pub trials: u64,
    pub repetitions: usize,
    pub eps: f64,
    pub max_pdf: f64,
    pub bound: f64,
    pub vacuous: bool,
    pub mean_avg_diff: f64,
    pub mean_max_diff: f64,
    pub mean_ref_diff: f64,
    pub exceeded: usize,
    /// Fraction of repetitions where the bound held.
    pub coverage_rate: f64,
}

impl CellSummary {
    fn metrics(&self) -> [(&'static str, f64); 10] {
        [
            ("repetitions", self.repetitions as f64),
            ("eps", self.eps),
            ("max_pdf", self.max_pdf),
            ("bound", self.bound),
            ("vacuous", if self.vacuous { 1.0 } else { 0.0 }),
            ("mean_avg_diff", self.mean_avg_diff),
            ("mean_max_diff", self.mean_max_diff),
            ("mean_ref_diff", self.mean_ref_diff),
            ("exceeded", self.exceeded as f64),
            ("coverage_rate", self.coverage_rate),
        ]
    }

    pub fn exceed_rate(&self) -> f64 {
        self.exceeded as f64 / self.repetitions as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub echo: Vec<(String, String)>,
    pub rows: Vec<RepetitionRow>,
    pub cells: Vec<CellSummary>,
}

impl ExperimentResult {
    pub fn cell(&self, s: f64, n: f64, trials: u64) -> Option<&CellSummary> {
        self.cells
            .iter()
            .find(|c| c.s == s && c.n == n && c.trials == trials)
    }
}

fn sorted_unique(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// A validated config with its reference CDFs built.
#[derive(Debug, Clone)]
pub struct Sweep {
    cfg: ExperimentConfig,
    sites: Vec<SiteReference>,
}

impl Sweep {
    pub fn prepare(cfg: &ExperimentConfig) -> Result<Self> {
        cfg.validate()?;
        let mut cfg = cfg.clone();
        cfg.s_eval = sorted_unique(&cfg.s_eval);
        cfg.n_sweep = sorted_unique(&cfg.n_sweep);
        cfg.trials_sweep.sort_unstable();
        cfg.trials_sweep.dedup();
        let sites = reference_sites(&cfg)?;
        Ok(Sweep { cfg, sites })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.cfg
    }

    pub fn sites(&self) -> &[SiteReference] {
        &self.sites
    }

    /// One repetition of cell `(n, trials)`: metrics per `s`, in `s` order.
    pub fn run_repetition(&self, n: f64, trials: u64, rep: usize) -> Result<Vec<SiteMetrics>> {
        let cfg = &self.cfg;
        let dist = cfg.dist.at(n)?;
        let rep_seed = seed::derive(cfg.seed, &[REP_TAG, n.to_bits(), trials, rep as u64]);
        let k = self.sites.len();
        let mut estimates = vec![Vec::with_capacity(trials as usize); k];
        let mut truths = vec![Vec::with_capacity(trials as usize); k];
        for i in 0..trials {
            let trial = run_trial(&cfg.field, &dist, i, seed::derive(rep_seed, &[i]))?;
            let view = trial.record.view();
            for (j, site) in self.sites.iter().enumerate() {
                estimates[j].push(estimate_field_at(&view, site.s)?);
                truths[j].push(trial.true_value(site.s)?);
            }
        }
        let mut out = Vec::with_capacity(k);
        for ((est, truth), site) in estimates.into_iter().zip(truths).zip(&self.sites) {
            let est = EmpiricalCdf::from_vec(est)?;
            let truth = EmpiricalCdf::from_vec(truth)?;
            let grid = ecdf::default_grid(&est, &truth, cfg.metric_grid_size)?;
            out.push(SiteMetrics {
                avg_diff: ecdf::avg_pointwise_diff(&est, &truth, &grid)?,
                max_diff: ecdf::max_pointwise_diff(&est, &truth),
                ref_diff: ecdf::max_pointwise_diff(&est, &site.cdf),
            });
        }
        Ok(out)
    }

    /// `(ε, bound)` for cell `(n, trials)` at site index `j`.
    pub fn cell_bound(&self, j: usize, n: f64, trials: u64) -> Result<(f64, f64)> {
        let site = &self.sites[j];
        let p = self.cfg.bound_params(n, trials, 1.0, site.max_pdf);
        let eps = self.cfg.bounds.eps_rule.resolve(&p, site.s)?;
        let value = bounds::theorem2_cdf_bound(&p.with_eps(eps), site.s)?.value;
        Ok((eps, value))
    }

    pub fn run(&self) -> Result<ExperimentResult> {
        let cfg = &self.cfg;
        let tasks: Vec<(f64, u64, usize)> = cfg
            .n_sweep
            .iter()
            .flat_map(|&n| {
                cfg.trials_sweep
                    .iter()
                    .flat_map(move |&nt| (0..cfg.repetitions).map(move |r| (n, nt, r)))
            })
            .collect();
        let metrics: Vec<Vec<SiteMetrics>> = tasks
            .par_iter()
            .map(|&(n, nt, r)| self.run_repetition(n, nt, r))
            .collect::<Result<_>>()?;

        let mut rows = Vec::with_capacity(tasks.len() * self.sites.len());
        let mut cells = Vec::new();
        for (j, site) in self.sites.iter().enumerate() {
            for &n in &cfg.n_sweep {
                for &nt in &cfg.trials_sweep {
                    let (eps, bound) = self.cell_bound(j, n, nt)?;
                    let start = rows.len();
                    for ((tn, tnt, r), m) in tasks.iter().zip(&metrics) {
                        if *tn == n && *tnt == nt {
                            let m = m[j];
                            rows.push(RepetitionRow {
                                s: site.s,
                                n,
                                trials: nt,
                                rep: *r,
                                avg_diff: m.avg_diff,
                                max_diff: m.max_diff,
                                ref_diff: m.ref_diff,
                                bound,
                                exceeded: m.ref_diff > bound,
                            });
                        }
                    }
                    cells.push(summarize(&rows[start..], eps, site.max_pdf)?);
                }
            }
        }
        Ok(ExperimentResult {
            echo: cfg.echo(),
            rows,
            cells,
        })
    }
}

/// Reference CDF per `s` from independent realizations at epochs `0, 1, …`.
pub fn reference_sites(cfg: &ExperimentConfig) -> Result<Vec<SiteReference>> {
    let samples: Vec<Vec<f64>> = (0..cfg.reference_samples as u64)
        .into_par_iter()
        .map(|j| {
            let mut rng = seed::rng_from_seed(seed::derive(cfg.seed, &[REF_TAG, j]));
            let realization = cfg.field.realize(j as f64 * TRIAL_SPACING, &mut rng);
            cfg.s_eval
                .iter()
                .map(|&s| realization.eval(s))
                .collect::<fieldcdf_core::Result<Vec<_>>>()
        })
        .collect::<fieldcdf_core::Result<_>>()?;
    cfg.s_eval
        .iter()
        .enumerate()
        .map(|(j, &s)| {
            let values: Vec<f64> = samples.iter().map(|row| row[j]).collect();
            let max_pdf = ecdf::histogram_max_density(&values)? * cfg.pdf_safety;
            Ok(SiteReference {
                s,
                cdf: EmpiricalCdf::from_vec(values)?,
                max_pdf,
            })
        })
        .collect()
}

/// Aggregate of one cell; rows are summed in repetition order so the result
/// does not depend on the order they were produced in.
pub fn summarize(rows: &[RepetitionRow], eps: f64, max_pdf: f64) -> Result<CellSummary> {
    let first = rows
        .first()
        .ok_or_else(|| Error::config("cannot summarize an empty cell"))?;
    let mut sorted: Vec<&RepetitionRow> = rows.iter().collect();
    sorted.sort_by_key(|r| r.rep);
    let count = sorted.len();
    let mean =
        |f: fn(&RepetitionRow) -> f64| sorted.iter().map(|r| f(r)).sum::<f64>() / count as f64;
    let exceeded = sorted.iter().filter(|r| r.exceeded).count();
    Ok(CellSummary {
        s: first.s,
        n: first.n,
        trials: first.trials,
        repetitions: count,
        eps,
        max_pdf,
        bound: first.bound,
        vacuous: bounds::is_vacuous(first.bound),
        mean_avg_diff: mean(|r| r.avg_diff),
        mean_max_diff: mean(|r| r.max_diff),
        mean_ref_diff: mean(|r| r.ref_diff),
        exceeded,
        coverage_rate: (count - exceeded) as f64 / count as f64,
    })
}

pub fn run_sweep(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    Sweep::prepare(cfg)?.run()
}

/// `out.csv` → `out.metrics.csv`.
pub fn metrics_path(results: &Path) -> PathBuf {
    let stem = results
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    results.with_file_name(format!("{stem}.metrics.csv"))
}

fn write_echo(w: &mut impl Write, title: &str, echo: &[(String, String)]) -> std::io::Result<()> {
    writeln!(w, "# {title}")?;
    for (k, v) in echo {
        writeln!(w, "# {k} = {v}")?;
    }
    Ok(())
}

/// Writes the per-repetition results CSV at `path` and the per-cell metrics
/// next to it (see [`metrics_path`]). Returns the metrics path.
pub fn export_results(result: &ExperimentResult, path: &Path) -> Result<PathBuf> {
    write_atomic(path, |w| {
        write_echo(w, "fieldcdf simulate results", &result.echo)?;
        writeln!(w, "{RESULTS_HEADER}")?;
        for r in &result.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{}",
                r.s, r.n, r.trials, r.rep, r.avg_diff, r.max_diff, r.bound, r.exceeded
            )?;
        }
        Ok(())
    })?;
    let metrics = metrics_path(path);
    write_atomic(&metrics, |w| {
        write_echo(w, "fieldcdf simulate metrics", &result.echo)?;
        writeln!(w, "{METRICS_HEADER}")?;
        for c in &result.cells {
            for (name, value) in c.metrics() {
                writeln!(w, "{name},{},{},{},{value}", c.s, c.n, c.trials)?;
            }
        }
        Ok(())
    })?;
    Ok(metrics)
}

fn echo_and_body<'a>(
    path: &Path,
    text: &'a str,
    header: &str,
) -> Result<(Echo, Vec<(u64, &'a str)>)> {
    let mut echo = Vec::new();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i as u64 + 1, l));
    let mut found = false;
    for (no, line) in lines.by_ref() {
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.split_once(" = ") {
                echo.push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        if line != header {
            return Err(Error::parse(
                path,
                no,
                format!("expected header `{header}`"),
            ));
        }
        found = true;
        break;
    }
    if !found {
        return Err(Error::parse(path, 1, format!("missing header `{header}`")));
    }
    Ok((echo, lines.filter(|(_, l)| !l.is_empty()).collect()))
}

fn num<T: std::str::FromStr>(path: &Path, line: u64, raw: &str) -> Result<T> {
    raw.parse()
        .map_err(|_| Error::parse(path, line, format!("invalid number `{raw}`")))
}

/// Reads a results CSV back into its config echo and rows. `ref_diff` is not
/// stored in the file and reads back as NaN.
pub fn read_results(path: &Path) -> Result<(Echo, Vec<RepetitionRow>)> {
    let text = read_text(path)?;
    let (echo, body) = echo_and_body(path, &text, RESULTS_HEADER)?;
    let mut rows = Vec::with_capacity(body.len());
    for (no, line) in body {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 8 {
            return Err(Error::parse(path, no, "expected 8 columns"));
        }
        rows.push(RepetitionRow {
            s: num(path, no, f[0])?,
            n: num(path, no, f[1])?,
            trials: num(path, no, f[2])?,
            rep: num(path, no, f[3])?,
            avg_diff: num(path, no, f[4])?,
            max_diff: num(path, no, f[5])?,
            ref_diff: f64::NAN,
            bound: num(path, no, f[6])?,
            exceeded: num(path, no, f[7])?,
        });
    }
    Ok((echo, rows))
}

/// Reads a metrics CSV back into cell summaries, in file order.
pub fn read_metrics(path: &Path) -> Result<Vec<CellSummary>> {
    let text = read_text(path)?;
    let (_, body) = echo_and_body(path, &text, METRICS_HEADER)?;
    let mut cells: Vec<CellSummary> = Vec::new();
    for (no, line) in body {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 5 {
            return Err(Error::parse(path, no, "expected 5 columns"));
        }
        let (s, n, trials): (f64, f64, u64) = (
            num(path, no, f[1])?,
            num(path, no, f[2])?,
            num(path, no, f[3])?,
        );
        let value: f64 = num(path, no, f[4])?;
        let same = cells
            .last()
            .is_some_and(|c| c.s == s && c.n == n && c.trials == trials);
        if !same {
            cells.push(CellSummary {
                s,
                n,
                trials,
                repetitions: 0,
                eps: f64::NAN,
                max_pdf: f64::NAN,
                bound: f64::NAN,
                vacuous: false,
                mean_avg_diff: f64::NAN,
                mean_max_diff: f64::NAN,
                mean_ref_diff: f64::NAN,
                exceeded: 0,
                coverage_rate: f64::NAN,
            });
        }
        let c = cells.last_mut().expect("pushed above");
        match f[0] {
            "repetitions" => c.repetitions = value as usize,
            "eps" => c.eps = value,
            "max_pdf" => c.max_pdf = value,
            "bound" => c.bound = value,
            "vacuous" => c.vacuous = value != 0.0,
            "mean_avg_diff" => c.mean_avg_diff = value,
            "mean_max_diff" => c.mean_max_diff = value,
            "mean_ref_diff" => c.mean_ref_diff = value,
            "exceeded" => c.exceeded = value as usize,
            "coverage_rate" => c.coverage_rate = value,
            other => {
                return Err(Error::parse(path, no, format!("unknown metric `{other}`")));
            }
        }
    }
    Ok(cells)
}
