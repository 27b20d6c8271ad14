//! Geometric domain types: point collections, trajectories and datasets.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// A contiguous collection of `d`-dimensional points.
///
/// Coordinates are stored row-major, so point `i` occupies
/// `coords[i * dim..(i + 1) * dim]`. Used both for ordered trajectories and
/// for the unordered point sets of prototypes.
#[derive(Debug, Clone, PartialEq)]
pub struct Points {
    dim: usize,
    coords: Vec<f64>,
}

impl Points {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Input("point dimension must be at least 1".into()));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::Input(format!(
                "{} coordinates do not split into points of dimension {dim}",
                coords.len()
            )));
        }
        if let Some(bad) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::Input(format!(
                "coordinate {} of point {} is not finite",
                bad % dim,
                bad / dim
            )));
        }
        Ok(Self { dim, coords })
    }

    /// Builds a collection from individual points, all of which must share one dimension.
    pub fn from_rows<I, P>(rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[f64]>,
    {
        let mut dim = None;
        let mut coords = Vec::new();
        for (i, row) in rows.into_iter().enumerate() {
            let row = row.as_ref();
            match dim {
                None => dim = Some(row.len()),
                Some(d) if d != row.len() => {
                    return Err(Error::Input(format!(
                        "point {i} has dimension {}, expected {d}",
                        row.len()
                    )))
                }
                _ => {}
            }
            coords.extend_from_slice(row);
        }
        let dim = dim.ok_or_else(|| Error::Input("point collection is empty".into()))?;
        Self::new(dim, coords)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Copies the points at `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> Self {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            coords.extend_from_slice(self.point(i));
        }
        Self {
            dim: self.dim,
            coords,
        }
    }

    /// Applies `f` to every coordinate. Panics if the result is not finite.
    pub fn map_coords(&self, mut f: impl FnMut(f64) -> f64) -> Self {
        let coords: Vec<f64> = self.coords.iter().map(|&c| f(c)).collect();
        assert!(coords.iter().all(|c| c.is_finite()));
        Self {
            dim: self.dim,
            coords,
        }
    }
}

/// A time-ordered sequence of points with an identifier and a category label.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    id: String,
    category: String,
    points: Points,
}

impl Trajectory {
    pub fn new(id: impl Into<String>, category: impl Into<String>, points: Points) -> Result<Self> {
        let id = id.into();
        if points.is_empty() {
            return Err(Error::Input(format!("trajectory {id} has no points")));
        }
        Ok(Self {
            id,
            category: category.into(),
            points,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn category(&self) -> &str {
        &self.category
    }

    pub fn points(&self) -> &Points {
        &self.points
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.points.dim()
    }
}

/// A collection of trajectories with unique ids and a shared dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    trajectories: Vec<Trajectory>,
}

impl Dataset {
    pub fn new(trajectories: Vec<Trajectory>) -> Result<Self> {
        let first = trajectories
            .first()
            .ok_or_else(|| Error::Input("dataset is empty".into()))?;
        let dim = first.dim();
        let mut seen = HashSet::with_capacity(trajectories.len());
        for t in &trajectories {
            if t.dim() != dim {
                return Err(Error::Input(format!(
                    "trajectory {} has dimension {}, dataset dimension is {dim}",
                    t.id(),
                    t.dim()
                )));
            }
            if !seen.insert(t.id()) {
                return Err(Error::Input(format!("duplicate trajectory id {}", t.id())));
            }
        }
        Ok(Self { trajectories })
    }

    pub fn trajectories(&self) -> &[Trajectory] {
        &self.trajectories
    }

    pub fn len(&self) -> usize {
        self.trajectories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trajectories.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.trajectories[0].dim()
    }

    pub fn get(&self, i: usize) -> &Trajectory {
        &self.trajectories[i]
    }

    /// Distinct category labels with their counts, in order of first appearance.
    pub fn categories(&self) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = Vec::new();
        for t in &self.trajectories {
            match out.iter_mut().find(|(c, _)| c == t.category()) {
                Some((_, n)) => *n += 1,
                None => out.push((t.category().to_string(), 1)),
            }
        }
        out
    }

    /// Checks the size constraints required for category retrieval evaluation.
    pub fn validate_for_evaluation(&self) -> Result<()> {
        let n = self.len();
        let c = self.categories().len();
        if n < 2 {
            return Err(Error::Config(format!("evaluation needs at least 2 trajectories, got {n}")));
        }
        if c < 2 || c >= n {
            return Err(Error::Config(format!(
                "evaluation needs 2 <= categories < trajectories, got {c} categories for {n} trajectories"
            )));
        }
        Ok(())
    }

    /// New dataset holding the trajectories at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        Self::new(indices.iter().map(|&i| self.trajectories[i].clone()).collect())
    }
}
