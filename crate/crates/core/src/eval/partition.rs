use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::{self, DOMAIN_PARTITION};
use crate::trajectory::Dataset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionMode {
    /// A fixed fraction of the data becomes the query set, the rest the database.
    Small,
    /// Fixed-size disjoint query and database samples.
    Large,
}

impl std::str::FromStr for PartitionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Self::Small),
            "large" => Ok(Self::Large),
            other => Err(Error::Config(format!(
                "unknown partition mode '{other}' (expected small or large)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartitionSpec {
    pub mode: PartitionMode,
    pub query_fraction: f64,
    pub query_count: usize,
    pub database_count: usize,
    pub seed: u64,
}

impl PartitionSpec {
    pub fn small(seed: u64) -> Self {
        Self {
            mode: PartitionMode::Small,
            query_fraction: 0.25,
            query_count: 1_000,
            database_count: 10_000,
            seed,
        }
    }

    pub fn large(seed: u64) -> Self {
        Self {
            mode: PartitionMode::Large,
            ..Self::small(seed)
        }
    }

    pub fn with_mode(mode: PartitionMode, seed: u64) -> Self {
        match mode {
            PartitionMode::Small => Self::small(seed),
            PartitionMode::Large => Self::large(seed),
        }
    }
}

/// Splits `ds` into disjoint `(queries, database)`; each side keeps the
/// dataset's original order.
pub fn partition(ds: &Dataset, spec: &PartitionSpec) -> Result<(Dataset, Dataset)> {
    let n = ds.len();
    let (nq, ndb) = match spec.mode {
        PartitionMode::Small => {
            if !(spec.query_fraction > 0.0 && spec.query_fraction < 1.0) {
                return Err(Error::Config(format!(
                    "query fraction {} must lie strictly between 0 and 1",
                    spec.query_fraction
                )));
            }
            let nq = (n as f64 * spec.query_fraction).round() as usize;
            if nq == 0 || nq >= n {
                return Err(Error::Config(format!(
                    "{n} trajectories cannot be split with query fraction {}",
                    spec.query_fraction
                )));
            }
            (nq, n - nq)
        }
        PartitionMode::Large => {
            let need = spec.query_count + spec.database_count;
            if spec.query_count == 0 || spec.database_count == 0 || need > n {
                return Err(Error::Config(format!(
                    "large partition needs {} queries + {} database trajectories, dataset has {n}",
                    spec.query_count, spec.database_count
                )));
            }
            (spec.query_count, spec.database_count)
        }
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut seed::stream(spec.seed, DOMAIN_PARTITION, 0));
    let mut queries = order[..nq].to_vec();
    let mut database = order[nq..nq + ndb].to_vec();
    queries.sort_unstable();
    database.sort_unstable();
    Ok((ds.subset(&queries)?, ds.subset(&database)?))
}
