// Sample codebooks, inspect them, and round-trip them through a file.
//
//     cargo run --example build_codebooks

use trajhash::eval::{generate_synthetic, SyntheticSpec};
use trajhash::{build_codebook_set, CodebookParams, CodebookSet, Metric};

fn main() -> trajhash::Result<()> {
    let db = generate_synthetic(&SyntheticSpec::new(4, 50, 30, 1.0, 11))?;
    let params = CodebookParams::from_code_length(32, 4, 8, Metric::Hausdorff, 99)?;
    let cbs = build_codebook_set(&db, params)?;
    println!(
        "{} codebooks x {} prototypes, L = {}",
        cbs.codebooks.len(),
        cbs.params.codebook_size(),
        cbs.code_length()
    );
    let first = &cbs.codebooks[0];
    for (j, p) in first.prototypes.iter().take(4).enumerate() {
        println!("  codebook 1, prototype {}: {} points from {}", j + 1, p.points.len(), p.source_id);
    }

    let path = std::env::temp_dir().join(format!("trajhash-example-{}.cb", std::process::id()));
    cbs.save(&path)?;
    let loaded = CodebookSet::load(&path)?;
    std::fs::remove_file(&path).ok();
    assert_eq!(loaded, cbs);
    println!("fingerprint {}", loaded.fingerprint());

    // Same seed, same prototypes; another seed draws new ones.
    let again = build_codebook_set(&db, params)?;
    let other = build_codebook_set(&db, CodebookParams { seed: 100, ..params })?;
    assert_eq!(again.fingerprint(), cbs.fingerprint());
    assert_ne!(other.fingerprint(), cbs.fingerprint());
    Ok(())
}
