// End to end on CSV files: write a dataset, read it back, hash, and dump codes.
//
//     cargo run --example csv_pipeline

use trajhash::dataset_io::{code_dump, parse_code_dump, save_dataset};
use trajhash::eval::{generate_synthetic, SyntheticSpec};
use trajhash::{build_codebook_set, build_index, load_dataset, CodebookParams, Metric};

fn main() -> trajhash::Result<()> {
    let dir = std::env::temp_dir().join(format!("trajhash-csv-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| trajhash::Error::io(&dir, e))?;
    let path = dir.join("tracks.csv");

    // rows: traj_id,category,seq,x,y
    save_dataset(&generate_synthetic(&SyntheticSpec::new(3, 10, 12, 0.5, 2))?, &path)?;
    let text = std::fs::read_to_string(&path).map_err(|e| trajhash::Error::io(&path, e))?;
    for line in text.lines().take(3) {
        println!("{line}");
    }

    let ds = load_dataset(&path)?;
    println!("{} trajectories, dim {}", ds.len(), ds.dim());
    for (cat, count) in ds.categories() {
        println!("  {cat}: {count}");
    }
    let cbs = build_codebook_set(&ds, CodebookParams::new(5, 2, 4, Metric::Hausdorff, 0))?;
    let index = build_index(&ds, &cbs, 1)?;
    let dump = code_dump(&index);
    print!("{}", dump.lines().take(3).map(|l| format!("{l}\n")).collect::<String>());
    let parsed = parse_code_dump(&dump)?;
    assert_eq!(parsed.len(), ds.len());

    std::fs::remove_dir_all(&dir).ok();
    Ok(())
}
