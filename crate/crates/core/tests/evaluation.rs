use trajhash::eval::{
    ablation_metrics, average_precision_of_pattern, generate_synthetic, parameter_sweep, partition, run_experiment,
    run_experiment_with_diagnostics, ExperimentConfig, HashingParams, PartitionSpec, SweepGrid, SyntheticSpec,
};
use trajhash::{build_codebook_set, CodebookParams, Dataset, Metric};

fn data(noise: f64, seed: u64) -> Dataset {
    let mut spec = SyntheticSpec::new(4, 30, 20, noise, seed);
    spec.min_separation = 8.0;
    generate_synthetic(&spec).unwrap()
}

fn config(reps: usize) -> ExperimentConfig {
    ExperimentConfig {
        hashing: HashingParams { quantizers: 8, omega: 3, k: 6, metric: Metric::Hausdorff },
        repetitions: reps,
        seed: 3,
        workers: 2,
        ..Default::default()
    }
}

#[test]
fn relevant_first_patterns_score_one() {
    for r in 1..10 {
        for tail in 0..10 {
            let mut p = vec![true; r];
            p.extend(std::iter::repeat_n(false, tail));
            assert_eq!(average_precision_of_pattern(&p), Some(1.0));
        }
    }
    assert_eq!(average_precision_of_pattern(&[false, false]), None);
}

#[test]
fn ablation_is_paired() {
    let ds = data(1.0, 1);
    let cfg = config(3);
    let reports = ablation_metrics(&ds, &cfg, &Metric::ALL).unwrap();
    assert_eq!(reports.len(), 3);
    for r in 0..cfg.repetitions {
        let seed = cfg.repetition_seed(r);
        let (_, db) = partition(&ds, &PartitionSpec::small(seed)).unwrap();
        let sources = |metric| {
            let cbs = build_codebook_set(&db, CodebookParams::new(8, 3, 6, metric, seed)).unwrap();
            cbs.codebooks
                .iter()
                .flat_map(|cb| cb.prototypes.iter().map(|p| (p.source_id.clone(), p.points.clone())))
                .collect::<Vec<_>>()
        };
        let h = sources(Metric::Hausdorff);
        assert_eq!(h, sources(Metric::Dtw));
        assert_eq!(h, sources(Metric::DiscreteFrechet));
    }
    let direct = run_experiment(&ds, &cfg).unwrap();
    assert_eq!(reports[0].deterministic_payload(), direct.deterministic_payload());
    for r in &reports {
        assert_eq!(r.dataset, direct.dataset);
    }
}

#[test]
fn larger_codebooks_quantize_closer() {
    let ds = data(1.5, 2);
    for seed in 0..10 {
        let err = |omega| {
            let cfg = ExperimentConfig {
                hashing: HashingParams { quantizers: 4, omega, k: 8, metric: Metric::Hausdorff },
                repetitions: 1,
                seed,
                workers: 1,
                ..Default::default()
            };
            run_experiment_with_diagnostics(&ds, &cfg).unwrap().hashing().unwrap().quantization_error.unwrap()
        };
        let (small, large) = (err(1), err(6));
        assert!(large <= small, "seed {seed}: {large} > {small}");
    }
}

#[test]
fn timing_phases_cover_total() {
    let ds = data(1.0, 3);
    let mut cfg = config(2);
    cfg.baselines = vec![Metric::Hausdorff];
    let report = run_experiment(&ds, &cfg).unwrap();
    for m in &report.methods {
        let t = &m.timing;
        assert!(t.total > 0.0);
        assert!(t.phase_sum() <= t.total * 1.0001 + 1e-6);
        assert!(t.phase_sum() >= t.total * 0.5, "{t:?}");
        assert!(m.timing.total.is_finite());
    }
    let bf = report.brute_force(Metric::Hausdorff).unwrap();
    assert_eq!(bf.timing.codebook_build, 0.0);
}

#[test]
fn default_grid_yields_thirty_cells() {
    let ds = data(1.0, 4);
    let result = parameter_sweep(&ds, &config(1), &SweepGrid::default()).unwrap();
    assert_eq!(result.cells.len(), 30);
    let csv = result.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "psi,k,map,se,seconds");
    assert_eq!(lines.len(), 31);
    for (line, cell) in lines[1..].iter().zip(&result.cells) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f.len(), 5);
        assert_eq!(f[0].parse::<usize>().unwrap(), cell.psi);
        assert_eq!(f[1].parse::<usize>().unwrap(), cell.k);
        let map: f64 = f[2].parse().unwrap();
        assert!((0.0..=1.0).contains(&map));
        let h = cell.report.hashing().unwrap();
        assert_eq!(h.code_length, Some(64 / cell.omega as usize * cell.omega as usize));
    }
    let psis: Vec<usize> = result.cells.iter().step_by(5).map(|c| c.psi).collect();
    assert_eq!(psis, [2, 4, 8, 16, 32, 64]);
}

#[test]
fn single_cell_grid_matches_experiment() {
    let ds = data(1.0, 5);
    let cfg = config(2);
    let grid = SweepGrid { code_length: 24, omegas: vec![3], ks: vec![6] };
    let result = parameter_sweep(&ds, &cfg, &grid).unwrap();
    let direct = run_experiment(&ds, &cfg).unwrap();
    assert_eq!(result.cells[0].report.deterministic_payload(), direct.deterministic_payload());
}

#[test]
fn noiseless_categories_are_separable() {
    let ds = data(0.0, 6);
    let mut cfg = config(2);
    cfg.baselines = Metric::ALL.to_vec();
    let report = run_experiment(&ds, &cfg).unwrap();
    for metric in Metric::ALL {
        assert!(report.brute_force(metric).unwrap().map > 0.99, "{metric}");
    }
    assert!(report.hashing().unwrap().map > 0.9);
}

#[test]
fn same_seed_same_payload() {
    let ds = data(2.0, 7);
    let mut cfg = config(2);
    cfg.baselines = vec![Metric::Dtw];
    cfg.keep_per_query = true;
    let a = run_experiment(&ds, &cfg).unwrap();
    cfg.workers = 5;
    let b = run_experiment(&ds, &cfg).unwrap();
    let strip_workers = |mut v: serde_json::Value| {
        v["config"]["workers"] = serde_json::Value::Null;
        v
    };
    assert_eq!(strip_workers(a.deterministic_payload()), strip_workers(b.deterministic_payload()));
    cfg.seed += 1;
    let c = run_experiment(&ds, &cfg).unwrap();
    assert_ne!(a.hashing().unwrap().repetition_maps, c.hashing().unwrap().repetition_maps);
}
