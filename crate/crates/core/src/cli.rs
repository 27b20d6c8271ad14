//! Subcommand bodies behind the `trajhash` binary. Each one is a
//! composition of library calls driven by a [`RunConfig`]; the returned
//! string is what the binary prints on success.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::codebook::{build_codebook_set, CodebookParams, CodebookSet};
use crate::config::RunConfig;
use crate::dataset_io::{code_dump, load_dataset, save_dataset};
use crate::error::{Error, Result};
use crate::eval::{
    ablation_metrics, bench as run_bench, generate_synthetic, parameter_sweep, run_experiment, EvalReport,
    ExperimentConfig, HashingParams, SweepGrid, SyntheticSpec,
};
use crate::index::{build_index, HashIndex};
use crate::metric::Metric;

fn require<'a>(field: &'a Option<PathBuf>, name: &str) -> Result<&'a Path> {
    field
        .as_deref()
        .ok_or_else(|| Error::Config(format!("missing required setting '{name}' (--{name})")))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn emit(out: &Option<PathBuf>, text: String, what: &str) -> Result<String> {
    match out {
        Some(path) => {
            write_text(path, &text)?;
            Ok(format!("wrote {what} to {}", path.display()))
        }
        None => Ok(text),
    }
}

fn experiment_config(cfg: &RunConfig) -> Result<ExperimentConfig> {
    let r = cfg.resolved()?;
    Ok(ExperimentConfig {
        hashing: HashingParams {
            quantizers: r.m.expect("resolved"),
            omega: r.omega.expect("resolved"),
            k: r.k(),
            metric: r.metric(),
        },
        run_hashing: true,
        baselines: r.baselines.clone().unwrap_or_default(),
        partition: r.partition.expect("resolved"),
        repetitions: r.repetitions.expect("resolved"),
        seed: r.seed(),
        workers: r.workers(),
        keep_per_query: r.per_query.unwrap_or(false),
    })
}

/// `build`: sample codebooks from `--data` and write them to `--codebooks` (or `--out`).
pub fn build(cfg: &RunConfig) -> Result<String> {
    let data = require(&cfg.data, "data")?;
    let target = cfg
        .codebooks
        .as_deref()
        .or(cfg.out.as_deref())
        .ok_or_else(|| Error::Config("missing required setting 'codebooks' (--codebooks)".into()))?;
    let (m, omega) = cfg.quantizers()?;
    let ds = load_dataset(data)?;
    let cbs = build_codebook_set(&ds, CodebookParams::new(m, omega, cfg.k(), cfg.metric(), cfg.seed()))
        .map_err(|e| Error::Config(format!("{}: {e}", data.display())))?;
    cbs.save(target)?;
    Ok(format!(
        "built {m} codebooks of {} prototypes (L={}, k={}, metric={}) from {} trajectories into {}; fingerprint {}",
        1usize << omega,
        cbs.code_length(),
        cfg.k(),
        cfg.metric(),
        ds.len(),
        target.display(),
        cbs.fingerprint()
    ))
}

/// `hash`: hash `--data` with `--codebooks` into `--index`; `--out` also gets a hex code dump.
pub fn hash(cfg: &RunConfig) -> Result<String> {
    let data = require(&cfg.data, "data")?;
    let cb_path = require(&cfg.codebooks, "codebooks")?;
    let index_path = require(&cfg.index, "index")?;
    let ds = load_dataset(data)?;
    let cbs = CodebookSet::load(cb_path)?;
    let index = build_index(&ds, &cbs, cfg.workers())?;
    index.save(index_path)?;
    if let Some(out) = &cfg.out {
        write_text(out, &code_dump(&index))?;
    }
    Ok(format!(
        "hashed {} trajectories to {}-bit codes into {}",
        index.len(),
        index.code_length(),
        index_path.display()
    ))
}

/// `query`: rank the index for every trajectory in `--queries`.
///
/// Output lines are `query_id<TAB>rank<TAB>id<TAB>hamming`.
pub fn query(cfg: &RunConfig) -> Result<String> {
    let index = HashIndex::load(require(&cfg.index, "index")?)?;
    let cb_path = require(&cfg.codebooks, "codebooks")?;
    let cbs = CodebookSet::load(cb_path)?;
    index
        .check_codebooks(&cbs)
        .map_err(|e| Error::Config(format!("{}: {e}", cb_path.display())))?;
    let queries = load_dataset(require(&cfg.queries, "queries")?)?;
    let mut out = String::from("query_id\trank\tid\thamming\n");
    for q in queries.trajectories() {
        let ranked = index.query_trajectory(q, &cbs, cfg.n())?;
        for (rank, item) in ranked.items.iter().enumerate() {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                q.id(),
                rank + 1,
                index.entries()[item.position].id,
                item.distance
            ));
        }
    }
    emit(&cfg.out, out, "rankings")
}

#[derive(Serialize)]
struct EvalOutput<'a> {
    run_config: &'a RunConfig,
    report: &'a EvalReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    ablation: Option<&'a [EvalReport]>,
}

/// `eval`: full experiment on `--data`, written as JSON.
pub fn eval(cfg: &RunConfig) -> Result<String> {
    let resolved = cfg.resolved()?;
    let ds = load_dataset(require(&cfg.data, "data")?)?;
    let exp = experiment_config(cfg)?;
    let report = run_experiment(&ds, &exp)?;
    let ablation = if resolved.ablation == Some(true) {
        Some(ablation_metrics(&ds, &exp, &Metric::ALL)?)
    } else {
        None
    };
    let json = serde_json::to_string_pretty(&EvalOutput {
        run_config: &resolved,
        report: &report,
        ablation: ablation.as_deref(),
    })
    .expect("report serializes");
    let mut summary = String::new();
    for m in &report.methods {
        summary.push_str(&format!(
            "{} ({}): mAP {:.4} ± {:.4}",
            m.method, m.metric, m.map, m.two_se
        ));
        if m.skipped_queries > 0 {
            summary.push_str(&format!(" ({} skipped queries)", m.skipped_queries));
        }
        summary.push('\n');
    }
    match &cfg.out {
        Some(path) => {
            write_text(path, &(json + "\n"))?;
            Ok(format!("{summary}wrote report to {}", path.display()))
        }
        None => Ok(json),
    }
}

/// `sweep`: grid over `--omegas` × `--ks` at fixed `--l` (default 64), as CSV.
pub fn sweep(cfg: &RunConfig) -> Result<String> {
    let ds = load_dataset(require(&cfg.data, "data")?)?;
    let defaults = SweepGrid::default();
    let grid = SweepGrid {
        code_length: cfg.l.unwrap_or(defaults.code_length),
        omegas: cfg.omegas.clone().unwrap_or(defaults.omegas),
        ks: cfg.ks.clone().unwrap_or(defaults.ks),
    };
    let mut no_m = cfg.clone();
    no_m.m = None;
    no_m.l = None;
    no_m.omega = None;
    let exp = experiment_config(&no_m)?;
    let result = parameter_sweep(&ds, &exp, &grid)?;
    emit(&cfg.out, result.to_csv(), "sweep matrix")
}

/// `bench`: timing of hashing and baselines (all three metrics unless `--baselines` is set).
pub fn bench(cfg: &RunConfig) -> Result<String> {
    let ds = load_dataset(require(&cfg.data, "data")?)?;
    let mut exp = experiment_config(cfg)?;
    if cfg.baselines.is_none() {
        exp.baselines = Metric::ALL.to_vec();
    }
    if cfg.repetitions.is_none() {
        exp.repetitions = 1;
    }
    let report = run_bench(&ds, &exp)?;
    emit(&cfg.out, report.to_json() + "\n", "timing report")
}

/// `synth`: write a labelled synthetic dataset as CSV.
pub fn synth(spec: &SyntheticSpec, out: &Path) -> Result<String> {
    let ds = generate_synthetic(spec)?;
    save_dataset(&ds, out)?;
    Ok(format!(
        "wrote {} trajectories in {} categories to {}",
        ds.len(),
        spec.categories,
        out.display()
    ))
}
