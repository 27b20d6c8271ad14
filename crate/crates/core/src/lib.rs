//! Prototype-based trajectory hashing.
//!
//! Trajectories of any length are mapped to fixed-length binary codes. A
//! hash function is a set of `M` codebooks, each holding `2^ω` prototypes:
//! small random point subsets of randomly drawn database trajectories. A
//! trajectory's sub-code for one codebook is the index of its nearest
//! prototype under the Hausdorff distance, and the full code concatenates
//! the `M` sub-codes. Retrieval then ranks database codes by Hamming
//! distance.
//!
//! ```
//! use trajhash::{build_codebook_set, build_index, hash_trajectory, CodebookParams, Metric};
//! use trajhash::eval::{generate_synthetic, SyntheticSpec};
//!
//! let db = generate_synthetic(&SyntheticSpec::new(3, 20, 30, 0.5, 7)).unwrap();
//! let cbs = build_codebook_set(&db, CodebookParams::new(8, 2, 10, Metric::Hausdorff, 1)).unwrap();
//! let index = build_index(&db, &cbs, 1).unwrap();
//!
//! let code = hash_trajectory(db.get(0), &cbs).unwrap();
//! assert_eq!(code.len(), 16);
//! let top = index.query_topn(&code, 5).unwrap();
//! assert_eq!(top.items[0].distance, 0.0);
//! ```
//!
//! The [`eval`] module reproduces a category-retrieval evaluation (mAP over
//! repeated random partitions, parameter sweeps, metric ablation) and the
//! `trajhash` binary exposes the pipeline on CSV files.

pub mod cli;
pub mod code;
pub mod codebook;
pub mod config;
pub mod dataset_io;
pub mod encoder;
mod error;
pub mod eval;
pub mod index;
pub mod metric;
mod parallel;
pub mod seed;
pub mod trajectory;
mod wire;

pub use code::{hamming_distance, hamming_similarity, BinaryCode};
pub use codebook::{
    build_codebook_set, build_prototype, sample_reference_trajectories, Codebook, CodebookParams, CodebookSet,
    Fingerprint, Prototype,
};
pub use config::RunConfig;
pub use dataset_io::load_dataset;
pub use encoder::{encode_index, hash_batch, hash_trajectory, quantization_error, quantize};
pub use error::{Error, Result};
pub use index::{brute_force_ranking, build_index, HashIndex, RankedItem, RankedResult};
pub use metric::{directed_hausdorff, discrete_frechet, dtw, euclidean_distance, hausdorff, Metric};
pub use parallel::{default_workers, DEFAULT_WORKERS, WORKERS_ENV};
pub use trajectory::{Dataset, Points, Trajectory};
