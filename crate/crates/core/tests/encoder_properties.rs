mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use trajhash::{
    build_codebook_set, encode_index, hash_trajectory, quantization_error, quantize, Codebook, CodebookParams,
    Metric, Prototype, Trajectory,
};

#[test]
fn hash_matches_unpacked_reference() {
    let mut r = rng(21);
    for i in 0..1_000 {
        let db = random_dataset(&mut r, 12, 10, 3);
        let metric = Metric::ALL[i % 3];
        let m = r.random_range(1..5);
        let omega = r.random_range(1..4);
        let k = r.random_range(1..8);
        let cbs = build_codebook_set(&db, CodebookParams::new(m, omega, k, metric, i as u64)).unwrap();
        let q = Trajectory::new("q", "c", random_points(&mut r, 2, 12, 50.0)).unwrap();
        let code = hash_trajectory(&q, &cbs).unwrap();
        assert_eq!(code.len(), m * omega as usize);
        assert_eq!(code.to_bits(), naive_hash(q.points(), &cbs), "instance {i}");
        assert_eq!(hash_trajectory(&q, &cbs).unwrap(), code);
    }
}

#[test]
fn self_match_with_full_prototypes() {
    let mut r = rng(22);
    let db = random_dataset(&mut r, 16, 8, 2);
    // k >= every trajectory length: prototypes are whole point sets
    let cbs = build_codebook_set(&db, CodebookParams::new(6, 3, 8, Metric::Hausdorff, 4)).unwrap();
    let mut matched = 0;
    for t in db.trajectories() {
        let code = hash_trajectory(t, &cbs).unwrap();
        for (m, cb) in cbs.codebooks.iter().enumerate() {
            if let Some(j) = cb.prototypes.iter().position(|p| p.source_id == t.id()) {
                let block: Vec<bool> = (0..3).map(|b| code.bit(m * 3 + b)).collect();
                assert_eq!(block, encode_index(j + 1, 3).unwrap());
                assert_eq!(quantization_error(t, cb, Metric::Hausdorff).unwrap(), 0.0);
                matched += 1;
            }
        }
    }
    assert!(matched > 0);
}

#[test]
fn same_bucket_pairs_obey_bound() {
    let mut r = rng(23);
    let db = random_dataset(&mut r, 150, 12, 3);
    let cbs = build_codebook_set(&db, CodebookParams::new(4, 2, 4, Metric::Hausdorff, 2)).unwrap();
    let mut pairs = 0;
    for cb in &cbs.codebooks {
        let assigned: Vec<(usize, f64)> = db
            .trajectories()
            .iter()
            .map(|t| (quantize(t, cb, Metric::Hausdorff).unwrap(), quantization_error(t, cb, Metric::Hausdorff).unwrap()))
            .collect();
        for i in 0..db.len() {
            for j in i + 1..db.len() {
                if assigned[i].0 == assigned[j].0 {
                    let d = trajhash::hausdorff(db.get(i).points(), db.get(j).points()).unwrap();
                    assert!(d <= assigned[i].1 + assigned[j].1 + 1e-9 * 50.0);
                    pairs += 1;
                }
            }
        }
    }
    assert!(pairs > 1_000);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn argmin_survives_global_scaling(seed in any::<u64>(), s in 0.05f64..40.0) {
        let mut r = rng(seed);
        let cb = Codebook {
            prototypes: (0..8)
                .map(|j| Prototype { points: random_points(&mut r, 2, 6, 10.0), source_id: j.to_string() })
                .collect(),
            quantizer_index: 1,
        };
        let q = Trajectory::new("q", "c", random_points(&mut r, 2, 10, 10.0)).unwrap();
        let scaled_cb = Codebook {
            prototypes: cb
                .prototypes
                .iter()
                .map(|p| Prototype { points: p.points.map_coords(|c| c * s), source_id: p.source_id.clone() })
                .collect(),
            quantizer_index: 1,
        };
        let scaled_q = Trajectory::new("q", "c", q.points().map_coords(|c| c * s)).unwrap();
        for metric in [Metric::Hausdorff, Metric::DiscreteFrechet] {
            prop_assert_eq!(quantize(&q, &cb, metric).unwrap(), quantize(&scaled_q, &scaled_cb, metric).unwrap());
        }
    }
}
