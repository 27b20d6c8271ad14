// Hashing with each quantization metric over identical partitions and prototypes.
//
//     cargo run --release --example metric_ablation

use trajhash::eval::{ablation_metrics, generate_synthetic, ExperimentConfig, SyntheticSpec};
use trajhash::Metric;

fn main() -> trajhash::Result<()> {
    let mut spec = SyntheticSpec::new(5, 40, 30, 2.0, 21);
    spec.min_separation = 8.0;
    let ds = generate_synthetic(&spec)?;
    let cfg = ExperimentConfig {
        repetitions: 3,
        seed: 4,
        ..Default::default()
    };
    let reports = ablation_metrics(&ds, &cfg, &Metric::ALL)?;
    for r in &reports {
        let m = r.hashing().expect("hashing ran");
        println!("{:<9} mAP {:.4} ± {:.4}", m.metric.name(), m.map, m.two_se);
    }
    // Paired runs: per-repetition differences are meaningful.
    let base = &reports[0].hashing().expect("hashing ran").repetition_maps;
    for r in &reports[1..] {
        let m = r.hashing().expect("hashing ran");
        let diffs: Vec<String> = base
            .iter()
            .zip(&m.repetition_maps)
            .map(|(a, b)| format!("{:+.3}", b - a))
            .collect();
        println!("{} - hausdorff per repetition: {}", m.metric.name(), diffs.join(" "));
    }
    Ok(())
}
