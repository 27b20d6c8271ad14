//! Minimum-distance quantization of trajectories against codebooks.

use rayon::prelude::*;

use crate::code::BinaryCode;
use crate::codebook::{Codebook, CodebookSet};
use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::parallel;
use crate::trajectory::{Points, Trajectory};

/// Position (0-based) and distance of the nearest prototype; ties go to the
/// smallest position.
pub fn nearest_prototype(points: &Points, cb: &Codebook, metric: Metric) -> Result<(usize, f64)> {
    let mut best = (usize::MAX, f64::INFINITY);
    for (j, proto) in cb.prototypes.iter().enumerate() {
        let d = metric.distance(points, &proto.points)?;
        if d < best.1 {
            best = (j, d);
        }
    }
    if best.0 == usize::MAX {
        return Err(Error::Internal(format!(
            "codebook {} has no prototypes",
            cb.quantizer_index
        )));
    }
    Ok(best)
}

/// Index `j*` in `1..=ψ` of the prototype nearest to `t`.
pub fn quantize(t: &Trajectory, cb: &Codebook, metric: Metric) -> Result<usize> {
    nearest_prototype(t.points(), cb, metric).map(|(j, _)| j + 1)
}

/// Distance from `t` to the prototype it quantizes to.
pub fn quantization_error(t: &Trajectory, cb: &Codebook, metric: Metric) -> Result<f64> {
    nearest_prototype(t.points(), cb, metric).map(|(_, d)| d)
}

/// Mean quantization error over a set of trajectories.
pub fn mean_quantization_error(trajectories: &[Trajectory], cb: &Codebook, metric: Metric) -> Result<f64> {
    if trajectories.is_empty() {
        return Err(Error::Input("mean quantization error over no trajectories".into()));
    }
    let mut total = 0.0;
    for t in trajectories {
        total += quantization_error(t, cb, metric)?;
    }
    Ok(total / trajectories.len() as f64)
}

/// `j* - 1` as an `omega`-bit big-endian block, returned as bits.
pub fn encode_index(j_star: usize, omega: u32) -> Result<Vec<bool>> {
    check_index(j_star, omega)?;
    let v = (j_star - 1) as u64;
    Ok((0..omega).rev().map(|b| v >> b & 1 == 1).collect())
}

fn check_index(j_star: usize, omega: u32) -> Result<()> {
    if omega == 0 || omega > 63 || j_star == 0 || j_star as u64 > 1u64 << omega {
        return Err(Error::Internal(format!(
            "prototype index {j_star} does not fit a {omega}-bit block"
        )));
    }
    Ok(())
}

/// Concatenation of the `M` sub-codes; quantizer 1 is the leftmost block.
pub fn hash_trajectory(t: &Trajectory, cbs: &CodebookSet) -> Result<BinaryCode> {
    hash_points(t.points(), cbs)
}

pub fn hash_points(points: &Points, cbs: &CodebookSet) -> Result<BinaryCode> {
    if points.dim() != cbs.dim {
        return Err(Error::Input(format!(
            "trajectory dimension {} does not match codebook dimension {}",
            points.dim(),
            cbs.dim
        )));
    }
    let omega = cbs.omega();
    let mut code = BinaryCode::zeros(cbs.code_length());
    for (m, cb) in cbs.codebooks.iter().enumerate() {
        let (j, _) = nearest_prototype(points, cb, cbs.metric())?;
        check_index(j + 1, omega)?;
        code.write_block(m * omega as usize, omega, j as u64);
    }
    Ok(code)
}

/// Hashes every trajectory on `workers` threads; output order matches input order.
pub fn hash_batch(trajectories: &[Trajectory], cbs: &CodebookSet, workers: usize) -> Result<Vec<BinaryCode>> {
    parallel::run(workers, || {
        trajectories
            .par_iter()
            .map(|t| hash_trajectory(t, cbs))
            .collect()
    })?
}
