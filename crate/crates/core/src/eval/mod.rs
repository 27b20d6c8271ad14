//! Retrieval evaluation: partitioning, AP/mAP, experiments, sweeps,
//! metric ablation, synthetic data and timing.

mod bench;
mod experiment;
mod metrics;
mod partition;
mod synthetic;

pub use bench::{bench, hamming_throughput, BenchReport, MethodTiming};
pub use experiment::{
    ablation_metrics, parameter_sweep, run_experiment, run_experiment_with_diagnostics, DatasetSummary, EvalReport,
    ExperimentConfig, HashingParams, MethodReport, SweepCell, SweepGrid, SweepResult, Timing, METHOD_BRUTE,
    METHOD_HASH, REPORT_VERSION,
};
pub use metrics::{average_precision, average_precision_of_pattern, mean_and_se, mean_average_precision, MapSummary};
pub use partition::{partition, PartitionMode, PartitionSpec};
pub use synthetic::{generate_synthetic, min_template_separation, synthetic_templates, SyntheticSpec};
