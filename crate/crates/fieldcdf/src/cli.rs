//! `fieldcdf` command line.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use fieldcdf_core::bounds::{self, BoundParams};
use toml::Value;

use crate::config::{self, ConfigMap};
use crate::dataset::{self, FixtureSpec};
use crate::error::{Error, Result};
use crate::harness::{self, ExperimentConfig};
use crate::io::{write_atomic, write_cdf};

#[derive(Debug, Parser)]
#[command(
    name = "fieldcdf",
    version,
    about = "Location-unaware CDF estimation along a sensing path"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the Monte-Carlo sweep and write per-repetition results plus per-cell metrics.
    Simulate(SimulateArgs),
    /// Evaluate the closed-form error bounds on a parameter grid.
    Bounds(BoundsArgs),
    /// Compare mobile-trial CDFs with fixed-sensor reference CDFs.
    Compare(CompareArgs),
    /// Write a synthetic trial log, location sidecar and reference file.
    GenFixtures(GenFixturesArgs),
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Flat TOML config file.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Set a config key, applied after the file. Repeatable.
    #[arg(long = "override", value_name = "KEY=VAL")]
    pub overrides: Vec<String>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Results CSV; metrics go to `<stem>.metrics.csv` beside it.
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
    /// Master seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Multiplier on the repetition count.
    #[arg(long)]
    pub scale: Option<f64>,
    /// Failure probability δ of the bound, in (0, 1).
    #[arg(long)]
    pub delta: Option<f64>,
    /// `min`, `n^-1/4` or a fixed positive ε.
    #[arg(long = "eps-rule", value_name = "RULE")]
    pub eps_rule: Option<String>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Bound table CSV; stdout when omitted.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Failure probability δ, in (0, 1).
    #[arg(long)]
    pub delta: Option<f64>,
    /// `min`, `n^-1/4` or a fixed positive ε.
    #[arg(long = "eps-rule", value_name = "RULE")]
    pub eps_rule: Option<String>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Report CSV, one row per location.
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
    /// δ of the DKW band, in (0, 1).
    #[arg(long)]
    pub delta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GenFixturesArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
    /// Seed for trials and reference samples.
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let outcome = match cli.command {
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Bounds(a) => cmd_bounds(&a),
        Command::Compare(a) => cmd_compare(&a),
        Command::GenFixtures(a) => cmd_gen_fixtures(&a),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("fieldcdf: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::UnknownLocation(_) => 2,
        _ => 1,
    }
}

fn load(args: &ConfigArgs) -> Result<ConfigMap> {
    ConfigMap::load(args.config.as_deref(), &args.overrides)
}

fn check_parent(out: &Path) -> Result<()> {
    match out.parent() {
        Some(p) if !p.as_os_str().is_empty() && !p.is_dir() => Err(Error::config(format!(
            "output directory {} does not exist",
            p.display()
        ))),
        _ => Ok(()),
    }
}

fn set_common(map: &mut ConfigMap, delta: Option<f64>, eps_rule: Option<&str>) -> Result<()> {
    if let Some(d) = delta {
        map.set("delta", Value::Float(d));
    }
    if let Some(rule) = eps_rule {
        config::parse_eps_rule(rule)?;
        map.set("eps_rule", Value::String(rule.to_string()));
    }
    Ok(())
}

fn set_seed(map: &mut ConfigMap, seed: Option<u64>) {
    if let Some(s) = seed {
        map.set("seed", Value::String(s.to_string()));
    }
}

pub fn cmd_simulate(a: &SimulateArgs) -> Result<()> {
    let mut map = load(&a.config)?;
    set_seed(&mut map, a.seed);
    if let Some(scale) = a.scale {
        map.set("scale", Value::Float(scale));
    }
    set_common(&mut map, a.delta, a.eps_rule.as_deref())?;
    let cfg = ExperimentConfig::from_map(&mut map)?;
    map.finish()?;
    check_parent(&a.out)?;
    let result = harness::run_sweep(&cfg)?;
    let metrics = harness::export_results(&result, &a.out)?;
    println!("wrote {} and {}", a.out.display(), metrics.display());
    Ok(())
}

pub const BOUNDS_HEADER: &str = "bound_name,s,n,N,eps,delta,C,beta,value,vacuous";

pub fn cmd_bounds(a: &BoundsArgs) -> Result<()> {
    let mut map = load(&a.config)?;
    set_common(&mut map, a.delta, a.eps_rule.as_deref())?;
    let base = BoundParams {
        alpha: map.f64_or("alpha", 1.0)?,
        n: 1.0,
        lambda: map.f64_or("lambda", 2.0)?,
        c: map.f64_or("C", 1.0)?,
        beta: map.f64_or("beta", 1.0)?,
        eps: 1.0,
        delta: config::check_delta(map.f64_or("delta", 0.05)?)?,
        trials: 1,
        max_pdf: map.f64_or("max_pdf", 1.0)?,
    };
    let rule = config::parse_eps_rule(&map.string_or("eps_rule", "min")?)?;
    let s_eval = map.f64_list_or("s_eval", &[0.5])?;
    let n_sweep = map.f64_list_or("n_sweep", &[100.0])?;
    let trials_sweep = map.u64_list_or("N_sweep", &[50])?;
    map.finish()?;

    let mut rows = Vec::new();
    for &s in &s_eval {
        for &n in &n_sweep {
            for &nt in &trials_sweep {
                let p = BoundParams {
                    n,
                    trials: nt,
                    ..base
                };
                p.validate()
                    .map_err(|e| Error::config(format!("n = {n}, N = {nt}: {e}")))?;
                if !(0.0..=1.0).contains(&s) {
                    return Err(Error::config(format!("s = {s} outside [0, 1]")));
                }
                let eps = rule.resolve(&p, s)?;
                let p = p.with_eps(eps);
                let values = [
                    ("prop1_mse", bounds::prop1_mse_bound(&p, s)?),
                    ("prop2_pointwise", bounds::prop2_pointwise_bound(&p, s)?),
                    ("prop2_sup", bounds::prop2_sup_bound(&p)?),
                    ("lemma1", bounds::lemma1_bound(&p, s)?),
                    ("theorem1", bounds::theorem1_cdf_bound(&p, s)?),
                    ("theorem2", bounds::theorem2_cdf_bound(&p, s)?.value),
                    ("dkw", bounds::dkw_epsilon(nt, p.delta)?),
                ];
                for (name, v) in values {
                    rows.push(format!(
                        "{name},{s},{n},{nt},{eps},{},{},{},{v},{}",
                        p.delta,
                        p.c,
                        p.beta,
                        bounds::is_vacuous(v)
                    ));
                }
            }
        }
    }
    let emit = |w: &mut dyn Write| -> std::io::Result<()> {
        writeln!(w, "{BOUNDS_HEADER}")?;
        for r in &rows {
            writeln!(w, "{r}")?;
        }
        Ok(())
    };
    match &a.out {
        Some(out) => {
            check_parent(out)?;
            write_atomic(out, |w| emit(w))
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            emit(&mut lock).map_err(|e| Error::io("<stdout>", e))
        }
    }
}

pub const COMPARE_HEADER: &str = "location_id,s,n_trials,n_ref,avg_diff,max_diff,dkw_eps";

pub fn cmd_compare(a: &CompareArgs) -> Result<()> {
    let mut map = load(&a.config)?;
    set_common(&mut map, a.delta, None)?;
    let trials_path = map
        .opt_string("trials")?
        .ok_or_else(|| Error::config("compare needs `trials` (trial CSV path)"))?;
    let reference_path = map
        .opt_string("reference")?
        .ok_or_else(|| Error::config("compare needs `reference` (reference CSV path)"))?;
    let location = map.opt_string("location")?;
    let delta = config::check_delta(map.f64_or("delta", 0.05)?)?;
    let grid = map.u64_or("metric_grid_size", 512)? as usize;
    let cdf_dir = map.opt_string("cdf_dir")?.map(PathBuf::from);
    map.finish()?;
    if grid == 0 {
        return Err(Error::config("metric_grid_size must be >= 1"));
    }
    check_parent(&a.out)?;
    if let Some(dir) = &cdf_dir {
        if !dir.is_dir() {
            return Err(Error::config(format!(
                "cdf_dir {} does not exist",
                dir.display()
            )));
        }
    }

    let trials = dataset::load_trials(Path::new(&trials_path))?;
    for w in &trials.warnings {
        eprintln!("warning: {w}");
    }
    let reference = dataset::load_reference(Path::new(&reference_path))?;
    let ids: Vec<String> = match location {
        Some(id) => {
            if reference.get(&id).is_none() {
                return Err(Error::UnknownLocation(id));
            }
            vec![id]
        }
        None => reference
            .entries
            .iter()
            .map(|e| e.location_id.clone())
            .collect(),
    };

    let mut buf = Vec::new();
    {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(&mut buf);
        let csv_err = |e: csv::Error| Error::validation(&a.out, e.to_string());
        w.write_record(COMPARE_HEADER.split(',')).map_err(csv_err)?;
        for id in &ids {
            let cmp = dataset::compare_mobile_vs_fixed(&trials, &reference, id, delta, grid)?;
            w.write_record([
                cmp.location_id.clone(),
                cmp.s.to_string(),
                cmp.estimated.len().to_string(),
                cmp.reference.len().to_string(),
                cmp.avg_diff.to_string(),
                cmp.max_diff.to_string(),
                cmp.dkw_eps.to_string(),
            ])
            .map_err(csv_err)?;
            if let Some(dir) = &cdf_dir {
                let stem = file_safe(id);
                write_cdf(&cmp.estimated, &dir.join(format!("{stem}.estimated.csv")))?;
                write_cdf(&cmp.reference, &dir.join(format!("{stem}.reference.csv")))?;
            }
        }
        w.flush().map_err(|e| Error::io(&a.out, e))?;
    }
    write_atomic(&a.out, |w| w.write_all(&buf))
}

fn file_safe(label: &str) -> String {
    label
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

pub fn cmd_gen_fixtures(a: &GenFixturesArgs) -> Result<()> {
    let mut map = load(&a.config)?;
    set_seed(&mut map, a.seed);
    let field = config::field_from_map(&mut map)?;
    let family = config::dist_from_map(&mut map)?;
    let n = map.f64_or("n", 200.0)?;
    let dist = family
        .at(n)
        .map_err(|e| Error::config(format!("n = {n}: {e}")))?;
    let seed = map.u64_or("seed", 0)?;
    let mut spec = FixtureSpec::new(field, dist, seed);
    spec.trials = map.u64_or("trials", spec.trials as u64)? as usize;
    spec.reference_samples =
        map.u64_or("reference_samples", spec.reference_samples as u64)? as usize;
    if let Some(locs) = map.opt_f64_list("locations")? {
        if let Some(s) = locs.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return Err(Error::config(format!("location s = {s} outside [0, 1]")));
        }
        spec.locations = locs
            .iter()
            .enumerate()
            .map(|(i, &s)| ((i + 1).to_string(), s))
            .collect();
    }
    map.finish()?;
    if !a.out.is_dir() {
        check_parent(&a.out)?;
        std::fs::create_dir(&a.out).map_err(|e| Error::io(&a.out, e))?;
    }
    let fx = dataset::synthesize_fixtures(&spec)?;
    let paths = dataset::write_fixtures(&fx, &a.out)?;
    println!(
        "wrote {}, {} and {}",
        paths.trials.display(),
        paths.locations.display(),
        paths.reference.display()
    );
    Ok(())
}
