// Hash a database, persist the index, and answer top-n queries.
//
//     cargo run --example hash_and_search

use trajhash::dataset_io::code_dump;
use trajhash::eval::{generate_synthetic, SyntheticSpec};
use trajhash::{build_codebook_set, build_index, hamming_similarity, hash_trajectory, CodebookParams, HashIndex, Metric};

fn main() -> trajhash::Result<()> {
    let mut spec = SyntheticSpec::new(5, 40, 30, 1.0, 3);
    spec.min_separation = 10.0;
    let db = generate_synthetic(&spec)?;
    let cbs = build_codebook_set(&db, CodebookParams::new(16, 4, 10, Metric::Hausdorff, 5))?;
    let index = build_index(&db, &cbs, 4)?;

    let dump = code_dump(&index);
    for line in dump.lines().take(3) {
        println!("{line}");
    }

    let path = std::env::temp_dir().join(format!("trajhash-example-{}.idx", std::process::id()));
    index.save(&path)?;
    let index = HashIndex::load(&path)?;
    std::fs::remove_file(&path).ok();

    let query = db.get(57);
    let qcode = hash_trajectory(query, &cbs)?;
    let top = index.query_trajectory(query, &cbs, 8)?;
    println!("query {} ({})", query.id(), query.category());
    for (rank, item) in top.items.iter().enumerate() {
        let e = &index.entries()[item.position];
        println!(
            "{:>3}  {:<8} {:<4} hamming {:>2}  similarity {:.3}",
            rank + 1,
            e.id,
            e.category,
            item.distance,
            hamming_similarity(&qcode, &e.code)?
        );
    }
    Ok(())
}
