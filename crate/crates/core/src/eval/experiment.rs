//! End-to-end retrieval experiments: partition, hash, rank, score, repeat.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metrics::{average_precision, mean_and_se, mean_average_precision};
use super::partition::{partition, PartitionMode, PartitionSpec};
use crate::codebook::{build_codebook_set, CodebookParams, CodebookSet};
use crate::encoder::{hash_batch, mean_quantization_error};
use crate::error::{Error, Result};
use crate::index::{build_index, rank_distances, RankedResult};
use crate::metric::Metric;
use crate::parallel;
use crate::seed::{derive_seed, DOMAIN_REPETITION};
use crate::trajectory::Dataset;

/// Prototype hashing settings; the codebook seed is derived per repetition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HashingParams {
    pub quantizers: usize,
    pub omega: u32,
    pub k: usize,
    pub metric: Metric,
}

impl HashingParams {
    pub fn code_length(&self) -> usize {
        self.quantizers * self.omega as usize
    }

    /// `M = floor(L / ω)`; the effective length is `M·ω <= L`.
    pub fn for_code_length(code_length: usize, omega: u32, k: usize, metric: Metric) -> Result<Self> {
        if omega == 0 || (code_length as u64) < omega as u64 {
            return Err(Error::Config(format!(
                "code length {code_length} cannot hold one {omega}-bit block"
            )));
        }
        Ok(Self {
            quantizers: code_length / omega as usize,
            omega,
            k,
            metric,
        })
    }

    pub(crate) fn codebook_params(&self, seed: u64) -> CodebookParams {
        CodebookParams::new(self.quantizers, self.omega, self.k, self.metric, seed)
    }
}

impl Default for HashingParams {
    fn default() -> Self {
        Self {
            quantizers: 16,
            omega: 4,
            k: 10,
            metric: Metric::Hausdorff,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub hashing: HashingParams,
    /// Also run the prototype hashing method (disable to time baselines alone).
    pub run_hashing: bool,
    /// Exhaustive metric retrieval baselines run over the same partitions.
    pub baselines: Vec<Metric>,
    pub partition: PartitionMode,
    pub repetitions: usize,
    pub seed: u64,
    pub workers: usize,
    pub keep_per_query: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            hashing: HashingParams::default(),
            run_hashing: true,
            baselines: Vec::new(),
            partition: PartitionMode::Small,
            repetitions: 10,
            seed: 0,
            workers: parallel::default_workers(),
            keep_per_query: false,
        }
    }
}

impl ExperimentConfig {
    /// Seed driving partition and codebooks of repetition `r`.
    pub fn repetition_seed(&self, r: usize) -> u64 {
        derive_seed(self.seed, DOMAIN_REPETITION, r as u64)
    }
}

/// Wall-clock seconds per phase, averaged over repetitions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub codebook_build: f64,
    pub hashing: f64,
    pub query: f64,
    pub total: f64,
}

impl Timing {
    fn add(&mut self, other: &Timing) {
        self.codebook_build += other.codebook_build;
        self.hashing += other.hashing;
        self.query += other.query;
        self.total += other.total;
    }

    fn scaled(mut self, f: f64) -> Self {
        self.codebook_build *= f;
        self.hashing *= f;
        self.query *= f;
        self.total *= f;
        self
    }

    pub fn phase_sum(&self) -> f64 {
        self.codebook_build + self.hashing + self.query
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodReport {
    /// `"prototype_hash"` or `"brute_force"`.
    pub method: String,
    pub metric: Metric,
    pub code_length: Option<usize>,
    /// Mean over repetitions of the per-repetition mAP.
    pub map: f64,
    pub se: f64,
    pub two_se: f64,
    pub repetition_maps: Vec<f64>,
    pub skipped_queries: usize,
    /// Mean quantization error of database trajectories, averaged over quantizers and repetitions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantization_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_query_ap: Option<Vec<Vec<Option<f64>>>>,
    pub timing: Timing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub trajectories: usize,
    pub categories: usize,
    pub dim: usize,
    pub queries: usize,
    pub database: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub format_version: u32,
    pub config: ExperimentConfig,
    pub dataset: DatasetSummary,
    pub methods: Vec<MethodReport>,
}

impl EvalReport {
    pub fn method(&self, method: &str, metric: Metric) -> Option<&MethodReport> {
        self.methods.iter().find(|m| m.method == method && m.metric == metric)
    }

    /// Result row of the prototype hashing method, if it ran.
    pub fn hashing(&self) -> Option<&MethodReport> {
        self.methods.iter().find(|m| m.method == METHOD_HASH)
    }

    pub fn brute_force(&self, metric: Metric) -> Option<&MethodReport> {
        self.method(METHOD_BRUTE, metric)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON value with every timing field removed; identical across runs with the same seed.
    pub fn deterministic_payload(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        strip_timing(&mut v);
        v
    }
}

pub(crate) fn strip_timing(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(map) => {
            map.remove("timing");
            map.values_mut().for_each(strip_timing);
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

pub const REPORT_VERSION: u32 = 1;
pub const METHOD_HASH: &str = "prototype_hash";
pub const METHOD_BRUTE: &str = "brute_force";

struct RunOutcome {
    per_query: Vec<Option<f64>>,
    timing: Timing,
    quantization_error: Option<f64>,
}

fn relevance(queries: &Dataset, database: &Dataset) -> (Vec<u32>, Vec<u32>) {
    let mut labels: Vec<String> = Vec::new();
    let mut id_of = |c: &str| -> u32 {
        match labels.iter().position(|l| l == c) {
            Some(i) => i as u32,
            None => {
                labels.push(c.to_string());
                (labels.len() - 1) as u32
            }
        }
    };
    let db: Vec<u32> = database.trajectories().iter().map(|t| id_of(t.category())).collect();
    let q: Vec<u32> = queries.trajectories().iter().map(|t| id_of(t.category())).collect();
    (q, db)
}

fn score(ranking: &RankedResult, query_cat: u32, db_cats: &[u32]) -> Option<f64> {
    let rel: Vec<bool> = db_cats.iter().map(|&c| c == query_cat).collect();
    average_precision(ranking, &rel)
}

fn run_hashing(
    queries: &Dataset,
    database: &Dataset,
    cats: &(Vec<u32>, Vec<u32>),
    params: CodebookParams,
    workers: usize,
) -> Result<(RunOutcome, CodebookSet)> {
    let total = Instant::now();
    let t = Instant::now();
    let cbs = build_codebook_set(database, params)?;
    let codebook_build = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let index = build_index(database, &cbs, workers)?;
    let query_codes = hash_batch(queries.trajectories(), &cbs, workers)?;
    let hashing = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let per_query = parallel::run(workers, || {
        query_codes
            .par_iter()
            .zip(cats.0.par_iter())
            .map(|(code, &qc)| index.full_ranking(code).map(|r| score(&r, qc, &cats.1)))
            .collect::<Result<Vec<_>>>()
    })??;
    let query = t.elapsed().as_secs_f64();
    let total = total.elapsed().as_secs_f64();

    Ok((
        RunOutcome {
            per_query,
            timing: Timing {
                codebook_build,
                hashing,
                query,
                total,
            },
            quantization_error: None,
        },
        cbs,
    ))
}

fn run_brute_force(
    queries: &Dataset,
    database: &Dataset,
    cats: &(Vec<u32>, Vec<u32>),
    metric: Metric,
    workers: usize,
) -> Result<RunOutcome> {
    let total = Instant::now();
    let per_query = parallel::run(workers, || {
        queries
            .trajectories()
            .par_iter()
            .zip(cats.0.par_iter())
            .map(|(q, &qc)| {
                let distances = database
                    .trajectories()
                    .iter()
                    .map(|t| metric.distance(q.points(), t.points()))
                    .collect::<Result<Vec<_>>>()?;
                let ranking = RankedResult {
                    query_id: q.id().to_string(),
                    n: database.len(),
                    items: rank_distances(&distances),
                };
                Ok(score(&ranking, qc, &cats.1))
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let query = total.elapsed().as_secs_f64();
    Ok(RunOutcome {
        per_query,
        timing: Timing {
            codebook_build: 0.0,
            hashing: 0.0,
            query,
            total: query,
        },
        quantization_error: None,
    })
}

fn database_quantization_error(database: &Dataset, cbs: &CodebookSet, workers: usize) -> Result<f64> {
    let per_codebook = parallel::run(workers, || {
        cbs.codebooks
            .par_iter()
            .map(|cb| mean_quantization_error(database.trajectories(), cb, cbs.metric()))
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(per_codebook.iter().sum::<f64>() / per_codebook.len() as f64)
}

struct Accumulator {
    method: &'static str,
    metric: Metric,
    code_length: Option<usize>,
    maps: Vec<f64>,
    skipped: usize,
    qerr: Vec<f64>,
    per_query: Vec<Vec<Option<f64>>>,
    timing: Timing,
}

impl Accumulator {
    fn new(method: &'static str, metric: Metric, code_length: Option<usize>) -> Self {
        Self {
            method,
            metric,
            code_length,
            maps: Vec::new(),
            skipped: 0,
            qerr: Vec::new(),
            per_query: Vec::new(),
            timing: Timing::default(),
        }
    }

    fn push(&mut self, outcome: RunOutcome) -> Result<()> {
        let summary = mean_average_precision(&outcome.per_query)?;
        self.maps.push(summary.map);
        self.skipped += summary.skipped;
        self.timing.add(&outcome.timing);
        if let Some(e) = outcome.quantization_error {
            self.qerr.push(e);
        }
        self.per_query.push(outcome.per_query);
        Ok(())
    }

    fn finish(self, keep_per_query: bool) -> MethodReport {
        let (map, se) = mean_and_se(&self.maps);
        let reps = self.maps.len() as f64;
        MethodReport {
            method: self.method.to_string(),
            metric: self.metric,
            code_length: self.code_length,
            map,
            se,
            two_se: 2.0 * se,
            repetition_maps: self.maps,
            skipped_queries: self.skipped,
            quantization_error: (!self.qerr.is_empty())
                .then(|| self.qerr.iter().sum::<f64>() / self.qerr.len() as f64),
            per_query_ap: keep_per_query.then_some(self.per_query),
            timing: self.timing.scaled(1.0 / reps),
        }
    }
}

/// Runs every repetition of `cfg` on `ds` and aggregates mAP ± 2·SE.
///
/// Each repetition derives one seed that fixes both the partition and the
/// codebooks, so baselines and hashing share partitions, and two configs that
/// differ only in the quantization metric share prototypes too.
pub fn run_experiment(ds: &Dataset, cfg: &ExperimentConfig) -> Result<EvalReport> {
    run_experiment_with(ds, cfg, false)
}

fn run_experiment_with(ds: &Dataset, cfg: &ExperimentConfig, quantization_error: bool) -> Result<EvalReport> {
    ds.validate_for_evaluation()?;
    if cfg.repetitions == 0 {
        return Err(Error::Config("repetitions must be at least 1".into()));
    }
    if !cfg.run_hashing && cfg.baselines.is_empty() {
        return Err(Error::Config("experiment has no methods to run".into()));
    }
    let mut hash_acc = cfg.run_hashing.then(|| {
        Accumulator::new(METHOD_HASH, cfg.hashing.metric, Some(cfg.hashing.code_length()))
    });
    let mut brute_acc: Vec<Accumulator> = cfg
        .baselines
        .iter()
        .map(|&m| Accumulator::new(METHOD_BRUTE, m, None))
        .collect();

    let mut summary = None;
    for r in 0..cfg.repetitions {
        let rep_seed = cfg.repetition_seed(r);
        let (queries, database) = partition(ds, &PartitionSpec::with_mode(cfg.partition, rep_seed))?;
        let cats = relevance(&queries, &database);
        summary.get_or_insert_with(|| DatasetSummary {
            trajectories: ds.len(),
            categories: ds.categories().len(),
            dim: ds.dim(),
            queries: queries.len(),
            database: database.len(),
        });
        if let Some(acc) = hash_acc.as_mut() {
            let (mut outcome, cbs) =
                run_hashing(&queries, &database, &cats, cfg.hashing.codebook_params(rep_seed), cfg.workers)?;
            if quantization_error {
                outcome.quantization_error = Some(database_quantization_error(&database, &cbs, cfg.workers)?);
            }
            acc.push(outcome)?;
        }
        for acc in brute_acc.iter_mut() {
            acc.push(run_brute_force(&queries, &database, &cats, acc.metric, cfg.workers)?)?;
        }
    }

    let mut methods = Vec::new();
    if let Some(acc) = hash_acc {
        methods.push(acc.finish(cfg.keep_per_query));
    }
    methods.extend(brute_acc.into_iter().map(|a| a.finish(cfg.keep_per_query)));
    Ok(EvalReport {
        format_version: REPORT_VERSION,
        config: cfg.clone(),
        dataset: summary.expect("at least one repetition"),
        methods,
    })
}

/// Like [`run_experiment`], also recording the mean database quantization error.
pub fn run_experiment_with_diagnostics(ds: &Dataset, cfg: &ExperimentConfig) -> Result<EvalReport> {
    run_experiment_with(ds, cfg, true)
}

/// Hashing method rerun with each quantization metric in turn; all other
/// settings and seeds are shared, so runs are paired.
pub fn ablation_metrics(ds: &Dataset, cfg: &ExperimentConfig, metrics: &[Metric]) -> Result<Vec<EvalReport>> {
    if metrics.is_empty() {
        return Err(Error::Config("ablation needs at least one metric".into()));
    }
    metrics
        .iter()
        .map(|&metric| {
            let mut c = cfg.clone();
            c.hashing.metric = metric;
            c.run_hashing = true;
            c.baselines.clear();
            run_experiment(ds, &c)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    /// Target code length; quantizers per cell are `floor(L / ω)`.
    pub code_length: usize,
    pub omegas: Vec<u32>,
    pub ks: Vec<usize>,
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self {
            code_length: 64,
            omegas: (1..=6).collect(),
            ks: vec![1, 5, 10, 15, 20],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub omega: u32,
    pub psi: usize,
    pub k: usize,
    pub report: EvalReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub grid: SweepGrid,
    pub cells: Vec<SweepCell>,
}

impl SweepResult {
    /// Plot-ready matrix, one row per cell: `psi,k,map,se,seconds`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("psi,k,map,se,seconds\n");
        for c in &self.cells {
            let m = c.report.hashing().expect("sweep cells run the hashing method");
            out.push_str(&format!("{},{},{:.6},{:.6},{:.6}\n", c.psi, c.k, m.map, m.se, m.timing.total));
        }
        out
    }

    /// Cell with the highest mean mAP (first one on ties).
    pub fn best(&self) -> Option<&SweepCell> {
        self.cells.iter().fold(None, |best: Option<&SweepCell>, c| {
            let map = |c: &SweepCell| c.report.hashing().map_or(f64::NEG_INFINITY, |m| m.map);
            match best {
                Some(b) if map(b) >= map(c) => Some(b),
                _ => Some(c),
            }
        })
    }
}

/// One experiment per `(ω, k)` cell, row-major over `omegas` then `ks`.
pub fn parameter_sweep(ds: &Dataset, cfg: &ExperimentConfig, grid: &SweepGrid) -> Result<SweepResult> {
    if grid.omegas.is_empty() || grid.ks.is_empty() {
        return Err(Error::Config("sweep grids must be non-empty".into()));
    }
    let mut cells = Vec::with_capacity(grid.omegas.len() * grid.ks.len());
    for &omega in &grid.omegas {
        for &k in &grid.ks {
            let mut c = cfg.clone();
            c.hashing = HashingParams::for_code_length(grid.code_length, omega, k, cfg.hashing.metric)?;
            c.run_hashing = true;
            c.baselines.clear();
            let report = run_experiment(ds, &c)?;
            cells.push(SweepCell {
                omega,
                psi: 1usize << omega,
                k,
                report,
            });
        }
    }
    Ok(SweepResult {
        grid: grid.clone(),
        cells,
    })
}
