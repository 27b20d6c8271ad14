//! Average precision and its mean over queries.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::RankedResult;

/// AP of a ranked relevance pattern, counting relevant items from the pattern itself.
///
/// Returns `None` when nothing is relevant: AP is undefined and the query is skipped.
pub fn average_precision_of_pattern(pattern: &[bool]) -> Option<f64> {
    let total = pattern.iter().filter(|&&r| r).count();
    ap_with_total(pattern.iter().copied(), total)
}

/// AP of `ranking`, where `relevant[p]` says whether database position `p`
/// is relevant to the query.
pub fn average_precision(ranking: &RankedResult, relevant: &[bool]) -> Option<f64> {
    let total = relevant.iter().filter(|&&r| r).count();
    ap_with_total(ranking.positions().map(|p| relevant[p]), total)
}

fn ap_with_total(pattern: impl Iterator<Item = bool>, total: usize) -> Option<f64> {
    if total == 0 {
        return None;
    }
    let mut hits = 0usize;
    let mut sum = 0.0;
    for (rank, rel) in pattern.enumerate() {
        if rel {
            hits += 1;
            sum += hits as f64 / (rank + 1) as f64;
        }
    }
    Some(sum / total as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MapSummary {
    pub map: f64,
    pub scored: usize,
    pub skipped: usize,
}

/// Arithmetic mean over the scored (non-skipped) queries.
pub fn mean_average_precision(per_query: &[Option<f64>]) -> Result<MapSummary> {
    let scored: Vec<f64> = per_query.iter().flatten().copied().collect();
    let skipped = per_query.len() - scored.len();
    if scored.is_empty() {
        return Err(Error::Evaluation(format!(
            "no query has a relevant database item ({skipped} skipped)"
        )));
    }
    Ok(MapSummary {
        map: scored.iter().sum::<f64>() / scored.len() as f64,
        scored: scored.len(),
        skipped,
    })
}

/// Mean and standard error (sample standard deviation over `sqrt(n)`).
pub fn mean_and_se(samples: &[f64]) -> (f64, f64) {
    let n = samples.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ap_examples() {
        assert_eq!(average_precision_of_pattern(&[true, true, false]), Some(1.0));
        assert_eq!(average_precision_of_pattern(&[false, true]), Some(0.5));
        assert_eq!(average_precision_of_pattern(&[true; 5]), Some(1.0));
        assert_eq!(average_precision_of_pattern(&[false, false]), None);
    }

    #[test]
    fn map_examples() {
        assert_eq!(mean_average_precision(&[Some(1.0), Some(0.5)]).unwrap().map, 0.75);
        assert_eq!(mean_average_precision(&[Some(0.3)]).unwrap().map, 0.3);
        let s = mean_average_precision(&[Some(1.0), None, Some(0.5), None]).unwrap();
        assert_eq!((s.map, s.scored, s.skipped), (0.75, 2, 2));
        assert!(mean_average_precision(&[None, None]).is_err());
    }

    #[test]
    fn worst_placement_is_minimal() {
        // 2 relevant among 5, placed last: (1/4 + 2/5) / 2
        let worst = average_precision_of_pattern(&[false, false, false, true, true]).unwrap();
        assert!((worst - (0.25 + 0.4) / 2.0).abs() < 1e-15);
        let others = [
            [true, false, false, false, true],
            [false, true, false, true, false],
            [false, false, true, false, true],
        ];
        for p in others {
            assert!(average_precision_of_pattern(&p).unwrap() > worst);
        }
    }

    #[test]
    fn standard_error() {
        let (m, se) = mean_and_se(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        // sample sd = sqrt(5/3)
        assert!((se - (5.0f64 / 3.0).sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(mean_and_se(&[0.7]), (0.7, 0.0));
    }
}
