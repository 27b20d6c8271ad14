//! Independent reference implementations and random generators shared by
//! the integration tests. Nothing here calls the optimized code paths.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trajhash::{BinaryCode, Codebook, CodebookSet, Dataset, Metric, Points, Trajectory};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rows(p: &Points) -> Vec<Vec<f64>> {
    p.iter().map(|r| r.to_vec()).collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..a.len() {
        s += (a[i] - b[i]) * (a[i] - b[i]);
    }
    s.sqrt()
}

pub fn naive_directed(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let mut worst = 0.0f64;
    for p in a {
        let mut best = f64::INFINITY;
        for q in b {
            best = best.min(dist(p, q));
        }
        worst = worst.max(best);
    }
    worst
}

pub fn naive_hausdorff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    naive_directed(a, b).max(naive_directed(b, a))
}

/// Full `(n+1) x (m+1)` cumulative-cost table.
pub fn naive_dtw(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let (n, m) = (a.len(), b.len());
    let mut t = vec![vec![f64::INFINITY; m + 1]; n + 1];
    t[0][0] = 0.0;
    for i in 1..=n {
        for j in 1..=m {
            let best = t[i - 1][j - 1].min(t[i - 1][j]).min(t[i][j - 1]);
            t[i][j] = dist(&a[i - 1], &b[j - 1]) + best;
        }
    }
    t[n][m]
}

/// Memoized recursion over couplings.
pub fn naive_frechet(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    fn go(i: usize, j: usize, a: &[Vec<f64>], b: &[Vec<f64>], memo: &mut Vec<Vec<Option<f64>>>) -> f64 {
        if let Some(v) = memo[i][j] {
            return v;
        }
        let d = dist(&a[i], &b[j]);
        let v = match (i, j) {
            (0, 0) => d,
            (0, _) => go(0, j - 1, a, b, memo).max(d),
            (_, 0) => go(i - 1, 0, a, b, memo).max(d),
            _ => go(i - 1, j, a, b, memo)
                .min(go(i - 1, j - 1, a, b, memo))
                .min(go(i, j - 1, a, b, memo))
                .max(d),
        };
        memo[i][j] = Some(v);
        v
    }
    let mut memo = vec![vec![None; b.len()]; a.len()];
    go(a.len() - 1, b.len() - 1, a, b, &mut memo)
}

pub fn naive_metric(metric: Metric, a: &Points, b: &Points) -> f64 {
    let (a, b) = (rows(a), rows(b));
    match metric {
        Metric::Hausdorff => naive_hausdorff(&a, &b),
        Metric::Dtw => naive_dtw(&a, &b),
        Metric::DiscreteFrechet => naive_frechet(&a, &b),
    }
}

/// Uniform points in `[-scale, scale]^dim`, length in `1..=max_len`.
pub fn random_points<R: Rng>(rng: &mut R, dim: usize, max_len: usize, scale: f64) -> Points {
    let n = rng.random_range(1..=max_len);
    let coords = (0..n * dim).map(|_| rng.random_range(-scale..=scale)).collect();
    Points::new(dim, coords).unwrap()
}

/// Points on a coarse integer grid, so exact duplicates and ties are common.
pub fn random_grid_points<R: Rng>(rng: &mut R, max_len: usize, cells: i32) -> Points {
    let n = rng.random_range(1..=max_len);
    let coords = (0..n * 2).map(|_| rng.random_range(0..cells) as f64).collect();
    Points::new(2, coords).unwrap()
}

pub fn random_dataset<R: Rng>(rng: &mut R, n: usize, max_len: usize, categories: usize) -> Dataset {
    Dataset::new(
        (0..n)
            .map(|i| {
                let p = random_points(rng, 2, max_len, 50.0);
                Trajectory::new(format!("t{i}"), format!("c{}", i % categories), p).unwrap()
            })
            .collect(),
    )
    .unwrap()
}

/// Nearest prototype by naive distances, smallest index on ties (1-based).
pub fn naive_quantize(t: &Points, cb: &Codebook, metric: Metric) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, p) in cb.prototypes.iter().enumerate() {
        let d = naive_metric(metric, t, &p.points);
        if d < best.1 {
            best = (j + 1, d);
        }
    }
    best
}

/// Unpacked per-bit reference for the full hash.
pub fn naive_hash(t: &Points, cbs: &CodebookSet) -> Vec<bool> {
    let omega = cbs.params.omega;
    let mut bits = Vec::new();
    for cb in &cbs.codebooks {
        let (j, _) = naive_quantize(t, cb, cbs.params.metric);
        let v = j - 1;
        for b in (0..omega).rev() {
            bits.push((v >> b) & 1 == 1);
        }
    }
    bits
}

pub fn naive_hamming(a: &BinaryCode, b: &BinaryCode) -> u32 {
    a.to_bits().iter().zip(b.to_bits()).filter(|(x, y)| **x != *y).count() as u32
}

/// Positions sorted by `(hamming, position)` with a full comparison sort.
pub fn naive_ranking(codes: &[BinaryCode], q: &BinaryCode) -> Vec<(usize, u32)> {
    let mut v: Vec<(usize, u32)> = codes.iter().enumerate().map(|(i, c)| (i, naive_hamming(c, q))).collect();
    v.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    v
}

pub fn random_code<R: Rng>(rng: &mut R, len: usize) -> BinaryCode {
    let bits: Vec<bool> = (0..len).map(|_| rng.random()).collect();
    BinaryCode::from_bits(&bits)
}
