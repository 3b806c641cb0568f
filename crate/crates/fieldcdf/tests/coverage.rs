//! Monte-Carlo coverage of the finite-N bound in a regime where it is
//! informative: a field that barely changes along the path.

use fieldcdf::config::ConfigMap;
use fieldcdf::harness::{self, ExperimentConfig};

#[test]
fn bound_holds_at_configured_rate() {
    let mut map = ConfigMap::new();
    for kv in [
        "a0=0",
        "freq=0.05",
        "amp_ceilings=[1]",
        "amp_modulation=0",
        "s_eval=[0.25, 0.5]",
        "n_sweep=1000",
        "N_sweep=100",
        "delta=0.1",
        "repetitions=200",
        "seed=31",
    ] {
        map.apply_override(kv).unwrap();
    }
    let cfg = ExperimentConfig::from_map(&mut map).unwrap();
    map.finish().unwrap();
    let result = harness::run_sweep(&cfg).unwrap();
    let limit = 0.1 + 3.0 * (0.1f64 * 0.9 / 200.0).sqrt();
    for cell in &result.cells {
        assert!(!cell.vacuous, "bound {} should be informative", cell.bound);
        assert!(
            cell.exceed_rate() <= limit,
            "s = {}: exceeded in {} of 200",
            cell.s,
            cell.exceeded
        );
    }
}
