// Grid over codebook size and prototype size at L = 64; prints the CSV matrix.
//
//     cargo run --release --example parameter_sweep

use trajhash::eval::{generate_synthetic, parameter_sweep, ExperimentConfig, SweepGrid, SyntheticSpec};

fn main() -> trajhash::Result<()> {
    let mut spec = SyntheticSpec::new(4, 40, 30, 2.0, 8);
    spec.min_separation = 8.0;
    let ds = generate_synthetic(&spec)?;
    let cfg = ExperimentConfig {
        repetitions: 2,
        seed: 1,
        ..Default::default()
    };
    let grid = SweepGrid {
        omegas: vec![2, 4, 6],
        ks: vec![1, 5, 10],
        ..Default::default()
    };
    let result = parameter_sweep(&ds, &cfg, &grid)?;
    print!("{}", result.to_csv());
    if let Some(best) = result.best() {
        let m = best.report.hashing().expect("hashing ran");
        println!("best: psi={} k={} mAP {:.4}", best.psi, best.k, m.map);
    }
    Ok(())
}
