//! Run configuration: a plain `key = value` file merged with command-line flags.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::PartitionMode;
use crate::metric::Metric;
use crate::parallel;

pub const DEFAULT_OMEGA: u32 = 4;
pub const DEFAULT_CODE_LENGTH: usize = 64;
pub const DEFAULT_K: usize = 10;
pub const DEFAULT_N: usize = 10;
pub const DEFAULT_REPETITIONS: usize = 10;

/// Every field is optional so that a file and flags can be layered;
/// accessors supply defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RunConfig {
    pub data: Option<PathBuf>,
    pub codebooks: Option<PathBuf>,
    pub index: Option<PathBuf>,
    pub queries: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub metric: Option<Metric>,
    pub omega: Option<u32>,
    pub m: Option<usize>,
    pub l: Option<usize>,
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub partition: Option<PartitionMode>,
    pub repetitions: Option<usize>,
    pub baselines: Option<Vec<Metric>>,
    pub omegas: Option<Vec<u32>>,
    pub ks: Option<Vec<usize>>,
    pub per_query: Option<bool>,
    pub ablation: Option<bool>,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("invalid value '{value}' for '{key}'")))
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|v| parse_value(key, v))
        .collect()
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(Error::Config(format!("invalid boolean '{value}' for '{key}'"))),
    }
}

impl RunConfig {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |e: Error| Error::Parse {
                path: path.to_path_buf(),
                line: i + 1,
                message: e.to_string(),
            };
            let (key, value) = line.split_once('=').ok_or_else(|| {
                at(Error::Config(format!("expected 'key = value', got '{line}'")))
            })?;
            cfg.set(key.trim(), value.trim()).map_err(at)?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "data" => self.data = Some(value.into()),
            "codebooks" => self.codebooks = Some(value.into()),
            "index" => self.index = Some(value.into()),
            "queries" => self.queries = Some(value.into()),
            "out" => self.out = Some(value.into()),
            "seed" => self.seed = Some(parse_value(key, value)?),
            "workers" => self.workers = Some(parse_value(key, value)?),
            "metric" => self.metric = Some(value.parse()?),
            "omega" => self.omega = Some(parse_value(key, value)?),
            "m" => self.m = Some(parse_value(key, value)?),
            "l" | "code_length" => self.l = Some(parse_value(key, value)?),
            "k" => self.k = Some(parse_value(key, value)?),
            "n" => self.n = Some(parse_value(key, value)?),
            "partition" => self.partition = Some(value.parse()?),
            "repetitions" => self.repetitions = Some(parse_value(key, value)?),
            "baselines" => {
                self.baselines = Some(
                    value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(str::parse)
                        .collect::<Result<_>>()?,
                )
            }
            "omegas" => self.omegas = Some(parse_list(key, value)?),
            "ks" => self.ks = Some(parse_list(key, value)?),
            "per_query" => self.per_query = Some(parse_bool(key, value)?),
            "ablation" => self.ablation = Some(parse_bool(key, value)?),
            other => return Err(Error::Config(format!("unknown configuration key '{other}'"))),
        }
        Ok(())
    }

    /// Fields set in `overrides` replace those in `self`.
    pub fn merged_with(mut self, overrides: RunConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if overrides.$f.is_some() { self.$f = overrides.$f; } )* };
        }
        take!(
            data, codebooks, index, queries, out, seed, workers, metric, omega, m, l, k, n, partition,
            repetitions, baselines, omegas, ks, per_query, ablation
        );
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn workers(&self) -> usize {
        self.workers.unwrap_or_else(parallel::default_workers)
    }

    pub fn metric(&self) -> Metric {
        self.metric.unwrap_or_default()
    }

    pub fn k(&self) -> usize {
        self.k.unwrap_or(DEFAULT_K)
    }

    pub fn n(&self) -> usize {
        self.n.unwrap_or(DEFAULT_N)
    }

    pub fn omega(&self) -> u32 {
        self.omega.unwrap_or(DEFAULT_OMEGA)
    }

    /// `(M, ω)`: an explicit `m` wins; otherwise `L` (default 64) must be a multiple of `ω`.
    pub fn quantizers(&self) -> Result<(usize, u32)> {
        let omega = self.omega();
        if omega == 0 {
            return Err(Error::Config("omega must be at least 1".into()));
        }
        if let Some(m) = self.m {
            if let Some(l) = self.l {
                if l != m * omega as usize {
                    return Err(Error::Config(format!(
                        "l={l} contradicts m={m} with omega={omega} (m*omega={})",
                        m * omega as usize
                    )));
                }
            }
            return Ok((m, omega));
        }
        let l = self.l.unwrap_or(DEFAULT_CODE_LENGTH);
        if l == 0 || !l.is_multiple_of(omega as usize) {
            return Err(Error::Config(format!(
                "code length l={l} is not a positive multiple of omega={omega}"
            )));
        }
        Ok((l / omega as usize, omega))
    }

    /// Copy with every default filled in, as echoed into reports.
    pub fn resolved(&self) -> Result<Self> {
        let (m, omega) = self.quantizers()?;
        let mut r = self.clone();
        r.seed = Some(self.seed());
        r.workers = Some(self.workers());
        r.metric = Some(self.metric());
        r.omega = Some(omega);
        r.m = Some(m);
        r.l = Some(m * omega as usize);
        r.k = Some(self.k());
        r.n = Some(self.n());
        r.partition = Some(self.partition.unwrap_or(PartitionMode::Small));
        r.repetitions = Some(self.repetitions.unwrap_or(DEFAULT_REPETITIONS));
        r.baselines = Some(self.baselines.clone().unwrap_or_default());
        r.per_query = Some(self.per_query.unwrap_or(false));
        r.ablation = Some(self.ablation.unwrap_or(false));
        Ok(r)
    }
}
