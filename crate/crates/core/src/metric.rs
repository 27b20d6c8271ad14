//! Point-set and sequence distances.
//!
//! Set metrics ([`hausdorff`], [`directed_hausdorff`]) work on squared
//! distances internally and take a single square root at the end, which
//! returns the same value as comparing true distances because `sqrt` is
//! monotone and correctly rounded.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trajectory::Points;

#[inline]
fn squared(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn check_pair(a: &Points, b: &Points) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Input("distance between empty point collections".into()));
    }
    if a.dim() != b.dim() {
        return Err(Error::Input(format!(
            "dimension mismatch: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(())
}

/// L2 distance between two points of equal dimension.
pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Input(format!(
            "dimension mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(squared(a, b).sqrt())
}

/// `max_{p in a} min_{q in b} |p - q|`.
pub fn directed_hausdorff(a: &Points, b: &Points) -> Result<f64> {
    check_pair(a, b)?;
    let mut worst = 0.0_f64;
    for p in a.iter() {
        let mut nearest = f64::INFINITY;
        for q in b.iter() {
            let d = squared(p, q);
            if d < nearest {
                nearest = d;
                if d <= worst {
                    // cannot raise the running max any more
                    break;
                }
            }
        }
        if nearest > worst {
            worst = nearest;
        }
    }
    Ok(worst.sqrt())
}

/// Symmetric Hausdorff distance: the larger of the two directed distances.
///
/// Both directions come out of one pass over the pair matrix.
pub fn hausdorff(a: &Points, b: &Points) -> Result<f64> {
    check_pair(a, b)?;
    let mut col_min = vec![f64::INFINITY; b.len()];
    let mut row_max = 0.0_f64;
    for p in a.iter() {
        let mut row_min = f64::INFINITY;
        for (q, cm) in b.iter().zip(col_min.iter_mut()) {
            let d = squared(p, q);
            if d < row_min {
                row_min = d;
            }
            if d < *cm {
                *cm = d;
            }
        }
        if row_min > row_max {
            row_max = row_min;
        }
    }
    let col_max = col_min.into_iter().fold(0.0_f64, f64::max);
    Ok(row_max.max(col_max).sqrt())
}

/// Classic dynamic time warping: sum of Euclidean local costs along the
/// cheapest monotone warping path, no window constraint.
pub fn dtw(a: &Points, b: &Points) -> Result<f64> {
    check_pair(a, b)?;
    let m = b.len();
    let mut prev = vec![f64::INFINITY; m + 1];
    let mut cur = vec![f64::INFINITY; m + 1];
    prev[0] = 0.0;
    for p in a.iter() {
        cur[0] = f64::INFINITY;
        for (j, q) in b.iter().enumerate() {
            let cost = squared(p, q).sqrt();
            let best = prev[j].min(prev[j + 1]).min(cur[j]);
            cur[j + 1] = cost + best;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[m])
}

/// Discrete Fréchet distance over the vertex sequences.
pub fn discrete_frechet(a: &Points, b: &Points) -> Result<f64> {
    check_pair(a, b)?;
    let m = b.len();
    let mut prev = vec![f64::INFINITY; m];
    let mut cur = vec![f64::INFINITY; m];
    for (i, p) in a.iter().enumerate() {
        for (j, q) in b.iter().enumerate() {
            let d = squared(p, q);
            let reach = match (i, j) {
                (0, 0) => 0.0,
                (0, _) => cur[j - 1],
                (_, 0) => prev[0],
                _ => prev[j].min(prev[j - 1]).min(cur[j - 1]),
            };
            cur[j] = d.max(reach);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[m - 1].sqrt())
}

/// Distance used to compare a trajectory against prototypes or other trajectories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    #[default]
    Hausdorff,
    Dtw,
    #[serde(rename = "frechet")]
    DiscreteFrechet,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Hausdorff, Metric::Dtw, Metric::DiscreteFrechet];

    pub fn distance(self, a: &Points, b: &Points) -> Result<f64> {
        match self {
            Metric::Hausdorff => hausdorff(a, b),
            Metric::Dtw => dtw(a, b),
            Metric::DiscreteFrechet => discrete_frechet(a, b),
        }
    }

    /// Stable numeric id used in persisted files.
    pub fn id(self) -> u8 {
        match self {
            Metric::Hausdorff => 1,
            Metric::Dtw => 2,
            Metric::DiscreteFrechet => 3,
        }
    }

    pub fn from_id(id: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.id() == id)
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::Hausdorff => "hausdorff",
            Metric::Dtw => "dtw",
            Metric::DiscreteFrechet => "frechet",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hausdorff" => Ok(Metric::Hausdorff),
            "dtw" => Ok(Metric::Dtw),
            "frechet" | "discrete_frechet" | "fréchet" => Ok(Metric::DiscreteFrechet),
            other => Err(Error::Config(format!(
                "unknown metric '{other}' (expected hausdorff, dtw or frechet)"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(rows: &[[f64; 2]]) -> Points {
        Points::from_rows(rows).unwrap()
    }

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    #[test]
    #[allow(clippy::approx_constant)]
    fn euclidean_examples() {
        assert_eq!(euclidean_distance(&[0.0, 0.0], &[0.0, 0.0]).unwrap(), 0.0);
        assert_eq!(euclidean_distance(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0);
        assert!((euclidean_distance(&[0.0, 0.0], &[1.0, 1.0]).unwrap() - 1.4142136).abs() < 1e-7);
        assert!(euclidean_distance(&[0.0], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn directed_examples() {
        let a = pts(&[[0.0, 0.0], [1.0, 0.0]]);
        let b = pts(&[[0.0, 1.0]]);
        assert!((directed_hausdorff(&a, &b).unwrap() - SQRT2).abs() < 1e-15);
        assert_eq!(directed_hausdorff(&b, &a).unwrap(), 1.0);
        let sup = pts(&[[0.0, 0.0], [1.0, 0.0], [7.0, -2.0]]);
        assert_eq!(directed_hausdorff(&a, &sup).unwrap(), 0.0);
    }

    #[test]
    fn hausdorff_examples() {
        let a = pts(&[[0.0, 0.0], [1.0, 0.0]]);
        let b = pts(&[[0.0, 1.0]]);
        assert!((hausdorff(&a, &b).unwrap() - SQRT2).abs() < 1e-15);
        assert_eq!(hausdorff(&a, &a).unwrap(), 0.0);
        assert_eq!(hausdorff(&pts(&[[0.0, 0.0]]), &pts(&[[0.0, 3.0]])).unwrap(), 3.0);
    }

    #[test]
    fn dtw_examples() {
        let a = pts(&[[0.0, 0.0], [1.0, 0.0]]);
        assert_eq!(dtw(&a, &a).unwrap(), 0.0);
        assert_eq!(dtw(&pts(&[[0.0, 0.0]]), &pts(&[[0.0, 1.0], [0.0, 2.0]])).unwrap(), 3.0);
        let b = pts(&[[0.0, 0.0], [1.0, 0.0], [1.0, 0.0]]);
        assert_eq!(dtw(&a, &b).unwrap(), 0.0);
    }

    #[test]
    fn frechet_examples() {
        let a = pts(&[[0.0, 0.0], [1.0, 0.0]]);
        assert_eq!(discrete_frechet(&a, &a).unwrap(), 0.0);
        let b = pts(&[[0.0, 1.0], [1.0, 1.0]]);
        assert_eq!(discrete_frechet(&a, &b).unwrap(), 1.0);
        assert_eq!(
            discrete_frechet(&pts(&[[0.0, 0.0]]), &pts(&[[0.0, 0.0], [5.0, 0.0]])).unwrap(),
            5.0
        );
    }

    #[test]
    fn order_sensitivity() {
        let a = pts(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]);
        let rev = pts(&[[2.0, 0.0], [1.0, 0.0], [0.0, 0.0]]);
        assert_eq!(hausdorff(&a, &rev).unwrap(), 0.0);
        assert!(dtw(&a, &rev).unwrap() > 0.0);
        assert!(discrete_frechet(&a, &rev).unwrap() > 0.0);
    }

    #[test]
    fn empty_and_mismatched_inputs() {
        let empty = Points::new(2, vec![]).unwrap();
        let a = pts(&[[0.0, 0.0]]);
        let a3 = Points::from_rows([[0.0, 0.0, 0.0]]).unwrap();
        for m in Metric::ALL {
            assert!(m.distance(&empty, &a).is_err());
            assert!(m.distance(&a, &empty).is_err());
            assert!(m.distance(&a, &a3).is_err());
        }
        assert!(directed_hausdorff(&empty, &a).is_err());
    }

    #[test]
    fn metric_names_round_trip() {
        for m in Metric::ALL {
            assert_eq!(m.name().parse::<Metric>().unwrap(), m);
            assert_eq!(Metric::from_id(m.id()), Some(m));
        }
        assert!("cosine".parse::<Metric>().is_err());
        assert_eq!(Metric::from_id(0), None);
    }
}
