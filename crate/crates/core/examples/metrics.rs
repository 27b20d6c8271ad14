// The three trajectory distances on small hand-made inputs.
//
//     cargo run --example metrics

use trajhash::{directed_hausdorff, Metric, Points};

fn main() -> trajhash::Result<()> {
    let a = Points::from_rows([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])?;
    let b = Points::from_rows([[0.0, 1.0], [2.0, 1.0]])?;
    let reversed = Points::from_rows([[2.0, 0.0], [1.0, 0.0], [0.0, 0.0]])?;

    println!("directed a->b {:.4}", directed_hausdorff(&a, &b)?);
    println!("directed b->a {:.4}", directed_hausdorff(&b, &a)?);
    for metric in Metric::ALL {
        println!(
            "{:<9} a~b {:.4}   a~reversed(a) {:.4}",
            metric.name(),
            metric.distance(&a, &b)?,
            metric.distance(&a, &reversed)?
        );
    }
    // Hausdorff ignores order; the alignment metrics do not.
    assert_eq!(Metric::Hausdorff.distance(&a, &reversed)?, 0.0);
    assert!(Metric::DiscreteFrechet.distance(&a, &reversed)? > 0.0);
    Ok(())
}
