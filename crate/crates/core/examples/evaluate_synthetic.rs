// Category retrieval on synthetic data: prototype hashing at L=64 against
// exhaustive Hausdorff ranking over the same partitions.
//
//     cargo run --release --example evaluate_synthetic

use trajhash::eval::{run_experiment, ExperimentConfig, SyntheticSpec};
use trajhash::{eval::generate_synthetic, Metric};

fn main() -> trajhash::Result<()> {
    let mut spec = SyntheticSpec::new(5, 100, 40, 1.0, 42);
    spec.min_separation = 10.0;
    let ds = generate_synthetic(&spec)?;
    println!("{} trajectories, {} categories", ds.len(), ds.categories().len());

    let cfg = ExperimentConfig {
        baselines: vec![Metric::Hausdorff],
        repetitions: 5,
        seed: 7,
        ..Default::default()
    };
    let report = run_experiment(&ds, &cfg)?;
    for m in &report.methods {
        println!(
            "{:>15} {:<10} mAP {:.4} ± {:.4}   {:.4}s per repetition",
            m.method, m.metric, m.map, m.two_se, m.timing.total
        );
    }
    Ok(())
}
