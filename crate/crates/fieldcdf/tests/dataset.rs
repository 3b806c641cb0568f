use fieldcdf::dataset::{self, FixtureSpec, TrialSet};
use fieldcdf_core::renewal::run_trial;
use fieldcdf_core::{AmplitudeLaw, FieldSpec, IntersampleDistribution};

fn constant(v: f64) -> FieldSpec {
    FieldSpec::cosine_sum(v, 0.0, AmplitudeLaw::Fixed(vec![0.0])).unwrap()
}

#[test]
fn simulated_trials_reload_identically() {
    let dir = tempfile::tempdir().unwrap();
    let field = FieldSpec::reference_cosine();
    let dist = IntersampleDistribution::triangular(60.0).unwrap();
    let records: Vec<_> = (0..5)
        .map(|i| run_trial(&field, &dist, i, 100 + i).unwrap().record)
        .collect();
    let set = TrialSet::new(
        vec![("device".into(), "sim".into())],
        records
            .iter()
            .cloned()
            .map(|r| r.strip_locations())
            .collect(),
    )
    .unwrap();
    let path = dir.path().join("t.csv");
    dataset::write_trials(&set, &path).unwrap();
    let back = dataset::load_trials(&path).unwrap();
    assert_eq!(back.trials, set.trials);
    for (a, b) in back.trials.iter().zip(&records) {
        assert_eq!(a.values(), b.values());
    }

    let again = dir.path().join("again.csv");
    dataset::write_trials(&back, &again).unwrap();
    assert_eq!(
        std::fs::read(&path).unwrap(),
        std::fs::read(&again).unwrap()
    );
}

#[test]
fn fixture_files_round_trip_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let dist = IntersampleDistribution::triangular(80.0).unwrap();
    let fx =
        dataset::synthesize_fixtures(&FixtureSpec::new(FieldSpec::reference_cosine(), dist, 5))
            .unwrap();
    let paths = dataset::write_fixtures(&fx, dir.path()).unwrap();
    let trials = dataset::load_trials(&paths.trials).unwrap();
    let reference = dataset::load_reference(&paths.reference).unwrap();
    assert_eq!(reference.entries.len(), 9);
    for (k, e) in reference.entries.iter().enumerate() {
        assert_eq!(e.s, (k + 1) as f64 / 10.0);
        assert_eq!(e.samples.len(), 200);
    }
    assert_eq!(trials.trials.len(), 43);

    let out = tempfile::tempdir().unwrap();
    let t2 = out.path().join("t.csv");
    let r2 = out.path().join("r.csv");
    dataset::write_trials(&trials, &t2).unwrap();
    dataset::write_reference(&reference, &r2).unwrap();
    assert_eq!(
        std::fs::read(&paths.trials).unwrap(),
        std::fs::read(&t2).unwrap()
    );
    assert_eq!(
        std::fs::read(&paths.reference).unwrap(),
        std::fs::read(&r2).unwrap()
    );

    let locations = dataset::load_locations(&paths.locations).unwrap();
    for t in &trials.trials {
        assert_eq!(locations[&t.trial_id()].len(), t.sample_count());
    }
}

#[test]
fn faster_sensor_takes_fewer_samples() {
    let field = FieldSpec::reference_cosine();
    let mean_m = |n: f64| {
        let dist = IntersampleDistribution::triangular(n).unwrap();
        dataset::synthesize_fixtures(&FixtureSpec::new(field.clone(), dist, 9))
            .unwrap()
            .trials
            .mean_sample_count()
    };
    assert!(mean_m(50.0) < mean_m(200.0));
}

#[test]
fn constant_field_compares_exactly() {
    let dist = IntersampleDistribution::triangular(40.0).unwrap();
    let fx = dataset::synthesize_fixtures(&FixtureSpec::new(constant(72.5), dist, 1)).unwrap();
    for (id, _) in dataset::decile_locations() {
        let cmp =
            dataset::compare_mobile_vs_fixed(&fx.trials, &fx.reference, &id, 0.05, 128).unwrap();
        assert_eq!(cmp.max_diff, 0.0);
        assert_eq!(cmp.avg_diff, 0.0);
        assert_eq!(cmp.estimated.len(), 43);
    }
}

#[test]
fn comparison_uses_only_values_and_count() {
    // same values, different hidden locations: identical report
    let field = FieldSpec::reference_cosine();
    let dist = IntersampleDistribution::triangular(30.0).unwrap();
    let sim = run_trial(&field, &dist, 0, 4).unwrap();
    let with_locs = TrialSet::new(Vec::new(), vec![sim.record.clone()]).unwrap();
    let without = TrialSet::new(Vec::new(), vec![sim.record.strip_locations()]).unwrap();
    let reference = dataset::ReferenceSet {
        entries: vec![dataset::ReferenceEntry {
            location_id: "a".into(),
            s: 0.3,
            samples: vec![500.0, 505.0, 510.0],
        }],
    };
    let a = dataset::compare_mobile_vs_fixed(&with_locs, &reference, "a", 0.05, 64).unwrap();
    let b = dataset::compare_mobile_vs_fixed(&without, &reference, "a", 0.05, 64).unwrap();
    assert_eq!(a, b);
}

#[test]
fn missing_file_is_io_error_with_path() {
    let err = dataset::load_trials(std::path::Path::new("/no/trials.csv")).unwrap_err();
    assert!(matches!(err, fieldcdf::Error::Io { .. }));
    assert!(err.to_string().contains("/no/trials.csv"));
}
