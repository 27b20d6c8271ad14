use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use trajhash::cli;
use trajhash::eval::{PartitionMode, SyntheticSpec};
use trajhash::{Metric, RunConfig, WORKERS_ENV};

#[derive(Parser)]
#[command(name = "trajhash", version, about = "Prototype-based trajectory hashing and retrieval")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample prototype codebooks from a dataset
    Build(Common),
    /// Hash a dataset into a persisted index
    Hash(Common),
    /// Rank an index for each trajectory of a query file
    Query(Common),
    /// Run a retrieval experiment and write a JSON report
    Eval(Common),
    /// Grid over codebook size and prototype size, written as CSV
    Sweep(Common),
    /// Time hashing against exhaustive metric retrieval
    Bench(Common),
    /// Write a labelled synthetic dataset
    Synth(Synth),
}

#[derive(Args)]
struct Common {
    /// Key-value configuration file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long)]
    codebooks: Option<PathBuf>,
    #[arg(long)]
    index: Option<PathBuf>,
    #[arg(long)]
    queries: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, env = WORKERS_ENV)]
    workers: Option<usize>,
    #[arg(long)]
    metric: Option<Metric>,
    #[arg(long)]
    omega: Option<u32>,
    #[arg(long)]
    m: Option<usize>,
    /// Total code length; omega must divide it
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    partition: Option<PartitionMode>,
    #[arg(long)]
    repetitions: Option<usize>,
    /// Comma-separated exhaustive baselines (hausdorff,dtw,frechet)
    #[arg(long, value_delimiter = ',')]
    baselines: Option<Vec<Metric>>,
    #[arg(long, value_delimiter = ',')]
    omegas: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',')]
    ks: Option<Vec<usize>>,
    /// Include per-query AP lists in eval reports
    #[arg(long)]
    per_query: bool,
    /// Also rerun hashing under every quantization metric
    #[arg(long)]
    ablation: bool,
}

impl Common {
    fn into_config(self) -> trajhash::Result<RunConfig> {
        let base = match &self.config {
            Some(p) => RunConfig::from_file(p)?,
            None => RunConfig::default(),
        };
        let flags = RunConfig {
            data: self.data,
            codebooks: self.codebooks,
            index: self.index,
            queries: self.queries,
            out: self.out,
            seed: self.seed,
            workers: self.workers,
            metric: self.metric,
            omega: self.omega,
            m: self.m,
            l: self.l,
            k: self.k,
            n: self.n,
            partition: self.partition,
            repetitions: self.repetitions,
            baselines: self.baselines,
            omegas: self.omegas,
            ks: self.ks,
            per_query: self.per_query.then_some(true),
            ablation: self.ablation.then_some(true),
        };
        Ok(base.merged_with(flags))
    }
}

#[derive(Args)]
struct Synth {
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 5)]
    categories: usize,
    #[arg(long, default_value_t = 100)]
    per_class: usize,
    #[arg(long, default_value_t = 40)]
    template_len: usize,
    #[arg(long, default_value_t = 1.0)]
    noise: f64,
    /// Minimum Hausdorff distance between category templates
    #[arg(long, default_value_t = 10.0)]
    separation: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn run(cli: Cli) -> trajhash::Result<String> {
    match cli.command {
        Command::Build(c) => cli::build(&c.into_config()?),
        Command::Hash(c) => cli::hash(&c.into_config()?),
        Command::Query(c) => cli::query(&c.into_config()?),
        Command::Eval(c) => cli::eval(&c.into_config()?),
        Command::Sweep(c) => cli::sweep(&c.into_config()?),
        Command::Bench(c) => cli::bench(&c.into_config()?),
        Command::Synth(s) => {
            let mut spec = SyntheticSpec::new(s.categories, s.per_class, s.template_len, s.noise, s.seed);
            spec.min_separation = s.separation;
            cli::synth(&spec, &s.out)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(msg) => {
            println!("{}", msg.trim_end());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
