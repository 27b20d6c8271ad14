// Query cost of Hamming ranking against exhaustive metric ranking.
//
//     TRAJHASH_WORKERS=4 cargo run --release --example efficiency

use trajhash::eval::{bench, generate_synthetic, hamming_throughput, ExperimentConfig, SyntheticSpec};
use trajhash::{default_workers, Metric};

fn main() -> trajhash::Result<()> {
    let ds = generate_synthetic(&SyntheticSpec::new(5, 60, 40, 1.0, 17))?;
    let cfg = ExperimentConfig {
        baselines: Metric::ALL.to_vec(),
        repetitions: 1,
        workers: default_workers(),
        ..Default::default()
    };
    let report = bench(&ds, &cfg)?;
    println!("{} workers", report.workers);
    for m in &report.methods {
        println!(
            "{:>15} {:<9} {:>10.2} us/query amortised  (mAP {:.3})",
            m.method,
            m.metric.name(),
            m.seconds_per_query * 1e6,
            m.map
        );
    }
    if let Some(s) = report.online_seconds_per_query {
        println!("hash + rank one query: {:.2} us (single thread, codebooks and index prebuilt)", s * 1e6);
    }
    let rate = hamming_throughput(20_000, 64, 20, 1)?;
    println!("{rate:.3e} Hamming comparisons per second, single thread");
    Ok(())
}
