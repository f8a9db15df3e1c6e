//! Domain types shared by every stage: points, data sets, hypotheses and the
//! algorithm configuration.

use std::ops::Deref;

use crate::error::{domain, LdmlError, Result};

/// A point (or mean estimate) in `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(domain("vector must have dimension >= 1"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(domain("vector has non-finite coordinate"));
        }
        Ok(Self(coords))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn distance(&self, other: &[f64]) -> f64 {
        crate::linalg::distance(&self.0, other)
    }
}

impl Deref for Vector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for Vector {
    /// Unchecked conversion; callers guarantee finiteness.
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// Ground-truth provenance of a sample. Never read by the algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Component(u32),
    Adversary,
}

impl Label {
    pub fn to_code(self) -> i64 {
        match self {
            Label::Component(c) => c as i64,
            Label::Adversary => -1,
        }
    }

    pub fn from_code(code: i64) -> Option<Self> {
        match code {
            -1 => Some(Label::Adversary),
            c if c >= 0 && c <= u32::MAX as i64 => Some(Label::Component(c as u32)),
            _ => None,
        }
    }
}

/// `n` samples in `d` dimensions stored row-major, with optional labels.
#[derive(Debug, Clone, PartialEq)]
pub struct DataSet {
    dim: usize,
    coords: Vec<f64>,
    labels: Option<Vec<Label>>,
}

impl DataSet {
    pub fn new(dim: usize, coords: Vec<f64>, labels: Option<Vec<Label>>) -> Result<Self> {
        if dim == 0 {
            return Err(domain("data set dimension must be >= 1"));
        }
        if coords.len() % dim != 0 {
            return Err(LdmlError::DimensionMismatch {
                expected: dim,
                got: coords.len() % dim,
            });
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(domain("data set has non-finite coordinate"));
        }
        let n = coords.len() / dim;
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(LdmlError::DimensionMismatch {
                    expected: n,
                    got: l.len(),
                });
            }
        }
        Ok(Self { dim, coords, labels })
    }

    pub fn from_points(points: &[Vector]) -> Result<Self> {
        let dim = points.first().map(|p| p.dim()).ok_or(LdmlError::EmptyInput("points"))?;
        let mut coords = Vec::with_capacity(points.len() * dim);
        for p in points {
            if p.dim() != dim {
                return Err(LdmlError::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            coords.extend_from_slice(p);
        }
        Self::new(dim, coords, None)
    }

    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            coords: Vec::new(),
            labels: None,
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Option<Vec<Label>>) -> Result<Self> {
        if let Some(l) = &labels {
            if l.len() != self.len() {
                return Err(LdmlError::DimensionMismatch {
                    expected: self.len(),
                    got: l.len(),
                });
            }
        }
        self.labels = labels;
        Ok(self)
    }

    /// Copies the rows in `idx` (in that order) into a new data set.
    pub fn subset(&self, idx: &[usize]) -> DataSet {
        let mut coords = Vec::with_capacity(idx.len() * self.dim);
        for &i in idx {
            coords.extend_from_slice(self.point(i));
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| idx.iter().map(|&i| l[i]).collect());
        DataSet {
            dim: self.dim,
            coords,
            labels,
        }
    }

    /// Appends all rows of `other`. Labels are kept only if both sides carry them.
    pub fn append(&mut self, other: &DataSet) -> Result<()> {
        if other.dim != self.dim {
            return Err(LdmlError::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let labels = match (self.labels.take(), &other.labels) {
            (Some(mut a), Some(b)) => {
                a.extend_from_slice(b);
                Some(a)
            }
            (None, Some(b)) if self.coords.is_empty() => Some(b.clone()),
            _ => None,
        };
        self.coords.extend_from_slice(&other.coords);
        self.labels = labels;
        Ok(())
    }

    pub fn mean(&self) -> Result<Vector> {
        if self.is_empty() {
            return Err(LdmlError::EmptyInput("mean of empty data set"));
        }
        Ok(Vector(crate::linalg::mean_rows(&self.coords, self.dim)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hypothesis {
    pub mean: Vector,
    pub alpha_hat: f64,
}

impl Hypothesis {
    pub fn new(mean: Vector, alpha_hat: f64) -> Result<Self> {
        if !(alpha_hat > 0.0 && alpha_hat <= 1.0) {
            return Err(domain(format!("alpha_hat {alpha_hat} outside (0, 1]")));
        }
        Ok(Self { mean, alpha_hat })
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct HypothesisList {
    pub items: Vec<Hypothesis>,
}

impl HypothesisList {
    pub fn new(items: Vec<Hypothesis>) -> Self {
        Self { items }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn means(&self) -> impl Iterator<Item = &Vector> {
        self.items.iter().map(|h| &h.mean)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Hypothesis> {
        self.items.iter()
    }

    pub fn extend(&mut self, other: HypothesisList) {
        self.items.extend(other.items);
    }
}

impl FromIterator<Hypothesis> for HypothesisList {
    fn from_iter<I: IntoIterator<Item = Hypothesis>>(iter: I) -> Self {
        Self {
            items: iter.into_iter().collect(),
        }
    }
}

impl IntoIterator for HypothesisList {
    type Item = Hypothesis;
    type IntoIter = std::vec::IntoIter<Hypothesis>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.into_iter()
    }
}

/// Tunable constants of the meta-algorithm. Defaults are the values from
/// the analysis; benchmark presets override them.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgoConfig {
    pub w_low: f64,
    /// Moment order, even and >= 2.
    pub t: u32,
    pub c_beta: f64,
    pub c_tau_psi: f64,
    pub c_tau_f: f64,
    pub c_gamma: f64,
    pub c_gammaprime_psi: f64,
    pub c_gammaprime_f: f64,
    pub list_filter_frac: f64,
    pub prune_floor_mult: f64,
    pub boost_rounds: usize,
    /// Run the RME refinement on inner-stage survivors.
    pub use_rme: bool,
    pub seed: u64,
}

impl Default for AlgoConfig {
    fn default() -> Self {
        Self {
            w_low: 0.1,
            t: 16,
            c_beta: 10.0,
            c_tau_psi: 40.0,
            c_tau_f: 4.0,
            c_gamma: 4.0,
            c_gammaprime_psi: 160.0,
            c_gammaprime_f: 16.0,
            list_filter_frac: 0.9,
            prune_floor_mult: 100.0,
            boost_rounds: 1,
            use_rme: true,
            seed: 0,
        }
    }
}

impl AlgoConfig {
    pub fn with_w_low(mut self, w_low: f64) -> Self {
        self.w_low = w_low;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.w_low > 0.0 && self.w_low <= 0.5) {
            return Err(domain(format!("w_low {} outside (0, 1/2]", self.w_low)));
        }
        crate::tail::check_t(self.t)?;
        let constants = [
            ("c_beta", self.c_beta),
            ("c_tau_psi", self.c_tau_psi),
            ("c_tau_f", self.c_tau_f),
            ("c_gamma", self.c_gamma),
            ("c_gammaprime_psi", self.c_gammaprime_psi),
            ("c_gammaprime_f", self.c_gammaprime_f),
            ("list_filter_frac", self.list_filter_frac),
            ("prune_floor_mult", self.prune_floor_mult),
        ];
        for (name, v) in constants {
            if !(v > 0.0 && v.is_finite()) {
                return Err(domain(format!("{name} must be positive, got {v}")));
            }
        }
        if self.boost_rounds == 0 {
            return Err(domain("boost_rounds must be >= 1"));
        }
        Ok(())
    }
}

/// Per-run evaluation metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct Metrics {
    pub list_size: usize,
    pub per_cluster_error: Vec<f64>,
    pub worst_error: f64,
    pub runtime_ms: f64,
}
