//! Labelled synthetic trajectories for desk-scale evaluation.
//!
//! Each category gets one smooth random template curve. Members are random
//! order-preserving subsamples of their template with isotropic Gaussian
//! noise on every coordinate. Templates and members draw from separate seed
//! streams, so changing the noise level leaves the templates untouched.

use rand::seq::index;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::hausdorff;
use crate::seed::{self, DOMAIN_MEMBER, DOMAIN_TEMPLATE};
use crate::trajectory::{Dataset, Points, Trajectory};

const MAX_TEMPLATE_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub categories: usize,
    pub per_class: usize,
    /// Points per template.
    pub template_len: usize,
    /// Per-coordinate Gaussian noise standard deviation.
    pub noise: f64,
    /// Members keep a uniformly random count in `[ceil(keep_fraction * len), len]` points.
    pub keep_fraction: f64,
    /// Minimum pairwise Hausdorff distance between templates (rejection sampled).
    pub min_separation: f64,
    /// Side of the square that template start points are drawn from.
    pub extent: f64,
    /// Distance between consecutive template points.
    pub step: f64,
    pub seed: u64,
}

impl SyntheticSpec {
    pub fn new(categories: usize, per_class: usize, template_len: usize, noise: f64, seed: u64) -> Self {
        Self {
            categories,
            per_class,
            template_len,
            noise,
            keep_fraction: 0.6,
            min_separation: 0.0,
            extent: 100.0,
            step: 1.0,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.categories < 2 {
            return Err(Error::Config(format!(
                "synthetic data needs at least 2 categories, got {}",
                self.categories
            )));
        }
        if self.per_class == 0 || self.template_len == 0 {
            return Err(Error::Config("per_class and template_len must be positive".into()));
        }
        if !(self.noise >= 0.0 && self.noise.is_finite()) {
            return Err(Error::Config(format!("noise {} must be finite and >= 0", self.noise)));
        }
        if !(self.keep_fraction > 0.0 && self.keep_fraction <= 1.0) {
            return Err(Error::Config(format!(
                "keep_fraction {} must lie in (0, 1]",
                self.keep_fraction
            )));
        }
        Ok(())
    }
}

fn random_curve<R: Rng>(spec: &SyntheticSpec, rng: &mut R) -> Points {
    let turn_noise = Normal::new(0.0, 0.08).expect("valid normal");
    let mut x = rng.random::<f64>() * spec.extent;
    let mut y = rng.random::<f64>() * spec.extent;
    let mut heading = rng.random::<f64>() * std::f64::consts::TAU;
    let mut turn = 0.0_f64;
    let mut coords = Vec::with_capacity(spec.template_len * 2);
    for _ in 0..spec.template_len {
        coords.push(x);
        coords.push(y);
        turn = (turn + turn_noise.sample(rng)).clamp(-0.25, 0.25);
        heading += turn;
        x += spec.step * heading.cos();
        y += spec.step * heading.sin();
    }
    Points::new(2, coords).expect("finite template")
}

/// One template per category, pairwise at least `min_separation` apart in Hausdorff distance.
pub fn synthetic_templates(spec: &SyntheticSpec) -> Result<Vec<Points>> {
    spec.validate()?;
    let mut rng = seed::stream(spec.seed, DOMAIN_TEMPLATE, 0);
    let mut templates: Vec<Points> = Vec::with_capacity(spec.categories);
    let mut attempts = 0;
    while templates.len() < spec.categories {
        attempts += 1;
        if attempts > MAX_TEMPLATE_ATTEMPTS {
            return Err(Error::Config(format!(
                "could not place {} templates {} apart inside extent {}",
                spec.categories, spec.min_separation, spec.extent
            )));
        }
        let candidate = random_curve(spec, &mut rng);
        let mut far_enough = true;
        for t in &templates {
            if hausdorff(t, &candidate)? < spec.min_separation {
                far_enough = false;
                break;
            }
        }
        if far_enough {
            templates.push(candidate);
        }
    }
    Ok(templates)
}

/// Smallest pairwise Hausdorff distance between templates.
pub fn min_template_separation(templates: &[Points]) -> Result<f64> {
    let mut best = f64::INFINITY;
    for (i, a) in templates.iter().enumerate() {
        for b in &templates[i + 1..] {
            best = best.min(hausdorff(a, b)?);
        }
    }
    Ok(best)
}

/// `categories * per_class` trajectories, grouped by category in label order.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<Dataset> {
    let templates = synthetic_templates(spec)?;
    let noise = Normal::new(0.0, spec.noise).map_err(|e| Error::Config(e.to_string()))?;
    let mut out = Vec::with_capacity(spec.categories * spec.per_class);
    for (c, template) in templates.iter().enumerate() {
        let len = template.len();
        let min_keep = ((spec.keep_fraction * len as f64).ceil() as usize).clamp(1, len);
        for i in 0..spec.per_class {
            let member = (c * spec.per_class + i) as u64;
            let mut rng = seed::stream(spec.seed, DOMAIN_MEMBER, member);
            let keep = rng.random_range(min_keep..=len);
            let mut picked = index::sample(&mut rng, len, keep).into_vec();
            picked.sort_unstable();
            let mut points = template.select(&picked);
            if spec.noise > 0.0 {
                points = points.map_coords(|v| v + noise.sample(&mut rng));
            }
            out.push(Trajectory::new(format!("c{c}_{i}"), format!("c{c}"), points)?);
        }
    }
    Dataset::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinality_and_labels() {
        let ds = generate_synthetic(&SyntheticSpec::new(5, 100, 30, 0.5, 1)).unwrap();
        assert_eq!(ds.len(), 500);
        let cats = ds.categories();
        assert_eq!(cats.len(), 5);
        assert!(cats.iter().all(|(_, n)| *n == 100));
    }

    #[test]
    fn noiseless_members_are_template_subsets() {
        let spec = SyntheticSpec::new(3, 20, 25, 0.0, 4);
        let templates = synthetic_templates(&spec).unwrap();
        let ds = generate_synthetic(&spec).unwrap();
        for t in ds.trajectories() {
            let c: usize = t.category()[1..].parse().unwrap();
            for p in t.points().iter() {
                assert!(templates[c].iter().any(|q| q == p));
            }
        }
    }

    #[test]
    fn separation_and_noise_independence() {
        let mut spec = SyntheticSpec::new(5, 4, 40, 1.0, 9);
        spec.min_separation = 10.0;
        let a = synthetic_templates(&spec).unwrap();
        assert!(min_template_separation(&a).unwrap() >= 10.0);
        spec.noise = 3.0;
        assert_eq!(synthetic_templates(&spec).unwrap(), a);
    }

    #[test]
    fn rejects_single_category() {
        assert!(generate_synthetic(&SyntheticSpec::new(1, 10, 10, 0.1, 0)).is_err());
    }
}
