//! Wall-clock efficiency measurements.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::experiment::{run_experiment, ExperimentConfig, Timing};
use super::partition::{partition, PartitionSpec};
use crate::code::BinaryCode;
use crate::codebook::{build_codebook_set, Fingerprint};
use crate::encoder::hash_trajectory;
use crate::error::{Error, Result};
use crate::index::{build_index, HashIndex, IndexEntry};
use crate::metric::Metric;
use crate::trajectory::Dataset;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodTiming {
    pub method: String,
    pub metric: Metric,
    pub queries: usize,
    /// Mean seconds per repetition, overheads included.
    pub timing: Timing,
    /// Repetition total over query count, so offline hashing work is amortised in.
    pub seconds_per_query: f64,
    pub map: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub workers: usize,
    pub repetitions: usize,
    pub methods: Vec<MethodTiming>,
    /// Single-threaded seconds to hash one query and rank the index, offline work excluded.
    pub online_seconds_per_query: Option<f64>,
    /// Single-threaded Hamming comparisons per second on the configured code length.
    pub hamming_comparisons_per_second: f64,
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bench report serializes")
    }
}

/// Times the hashing method and every configured baseline on shared partitions.
pub fn bench(ds: &Dataset, cfg: &ExperimentConfig) -> Result<BenchReport> {
    let report = run_experiment(ds, cfg)?;
    let queries = report.dataset.queries;
    let methods = report
        .methods
        .iter()
        .map(|m| MethodTiming {
            method: m.method.clone(),
            metric: m.metric,
            queries,
            timing: m.timing,
            seconds_per_query: m.timing.total / queries as f64,
            map: m.map,
        })
        .collect();
    Ok(BenchReport {
        workers: cfg.workers,
        repetitions: cfg.repetitions,
        methods,
        online_seconds_per_query: if cfg.run_hashing { Some(online_query_cost(ds, cfg)?) } else { None },
        hamming_comparisons_per_second: hamming_throughput(10_000, cfg.hashing.code_length(), 200, cfg.seed)?,
    })
}

fn online_query_cost(ds: &Dataset, cfg: &ExperimentConfig) -> Result<f64> {
    let seed = cfg.repetition_seed(0);
    let (queries, database) = partition(ds, &PartitionSpec::with_mode(cfg.partition, seed))?;
    let cbs = build_codebook_set(&database, cfg.hashing.codebook_params(seed))?;
    let index = build_index(&database, &cbs, cfg.workers)?;
    let start = Instant::now();
    for q in queries.trajectories() {
        let code = hash_trajectory(q, &cbs)?;
        std::hint::black_box(index.full_ranking(&code)?);
    }
    Ok(start.elapsed().as_secs_f64() / queries.len() as f64)
}

/// Comparisons per second of single-threaded full rankings over `n_codes`
/// random `code_length`-bit codes, measured over `queries` queries.
pub fn hamming_throughput(n_codes: usize, code_length: usize, queries: usize, seed: u64) -> Result<f64> {
    if n_codes == 0 || code_length == 0 || queries == 0 {
        return Err(Error::Config("throughput benchmark needs codes, bits and queries".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_code = |rng: &mut ChaCha8Rng| {
        let bits: Vec<bool> = (0..code_length).map(|_| rng.random()).collect();
        BinaryCode::from_bits(&bits)
    };
    let entries = (0..n_codes)
        .map(|i| IndexEntry {
            id: i.to_string(),
            category: String::new(),
            code: random_code(&mut rng),
        })
        .collect();
    let index = HashIndex::from_entries(entries, Fingerprint([0; 32]), code_length)?;
    let probes: Vec<BinaryCode> = (0..queries).map(|_| random_code(&mut rng)).collect();

    let start = Instant::now();
    let mut checksum = 0usize;
    for q in &probes {
        let r = index.full_ranking(q)?;
        checksum = checksum.wrapping_add(r.items[0].position);
    }
    let secs = start.elapsed().as_secs_f64().max(1e-9);
    std::hint::black_box(checksum);
    Ok((n_codes * queries) as f64 / secs)
}
