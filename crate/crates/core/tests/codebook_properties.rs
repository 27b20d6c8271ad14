mod common;

use std::collections::HashSet;
use std::time::Instant;

use common::*;
use proptest::prelude::*;
use trajhash::eval::{generate_synthetic, SyntheticSpec};
use trajhash::{build_codebook_set, CodebookParams, CodebookSet, Metric};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn codebook_invariants(seed in any::<u64>(), m in 1usize..6, omega in 1u32..5, k in 1usize..12) {
        let mut r = rng(seed);
        let db = random_dataset(&mut r, 20, 15, 3);
        let cbs = build_codebook_set(&db, CodebookParams::new(m, omega, k, Metric::Hausdorff, seed)).unwrap();
        prop_assert_eq!(cbs.codebooks.len(), m);
        prop_assert_eq!(cbs.code_length(), m * omega as usize);
        for cb in &cbs.codebooks {
            prop_assert_eq!(cb.len(), 1 << omega);
            let ids: HashSet<&str> = cb.prototypes.iter().map(|p| p.source_id.as_str()).collect();
            prop_assert_eq!(ids.len(), cb.len());
            for p in &cb.prototypes {
                let src = db.trajectories().iter().find(|t| t.id() == p.source_id).unwrap();
                prop_assert_eq!(p.points.len(), k.min(src.len()));
                for q in p.points.iter() {
                    prop_assert!(src.points().iter().any(|s| s == q));
                }
            }
        }
        let again = build_codebook_set(&db, CodebookParams::new(m, omega, k, Metric::Hausdorff, seed)).unwrap();
        prop_assert_eq!(&again, &cbs);
        prop_assert_eq!(CodebookSet::from_bytes(&cbs.to_bytes().unwrap()).unwrap(), cbs);
    }
}

#[test]
fn seeds_give_distinct_selections() {
    let mut r = rng(8);
    let db = random_dataset(&mut r, 1_000, 4, 10);
    let selections: HashSet<Vec<String>> = (0..100)
        .map(|seed| {
            let cbs = build_codebook_set(&db, CodebookParams::new(1, 4, 10, Metric::Hausdorff, seed)).unwrap();
            cbs.codebooks[0].prototypes.iter().map(|p| p.source_id.clone()).collect()
        })
        .collect();
    assert!(selections.len() >= 99, "{} distinct selections", selections.len());
}

#[test]
fn construction_is_fast() {
    let db = generate_synthetic(&SyntheticSpec::new(10, 1_000, 50, 1.0, 3)).unwrap();
    assert_eq!(db.len(), 10_000);
    let start = Instant::now();
    let cbs = build_codebook_set(&db, CodebookParams::new(16, 4, 10, Metric::Hausdorff, 1)).unwrap();
    let took = start.elapsed();
    assert_eq!(cbs.codebooks.len(), 16);
    assert!(took.as_secs_f64() < 1.0, "construction took {took:?}");
}

#[test]
fn codebooks_independent_across_quantizers() {
    let mut r = rng(12);
    let db = random_dataset(&mut r, 200, 5, 4);
    let cbs = build_codebook_set(&db, CodebookParams::new(8, 3, 2, Metric::Hausdorff, 5)).unwrap();
    let orders: HashSet<Vec<&str>> = cbs
        .codebooks
        .iter()
        .map(|cb| cb.prototypes.iter().map(|p| p.source_id.as_str()).collect())
        .collect();
    assert_eq!(orders.len(), 8);
}
