//! Multifilter list-decodable mean estimator built from one-dimensional
//! projections.
//!
//! Candidate subsets are refined breadth-first. A subset whose empirical
//! covariance looks like that of unit-variance inliers (checked along the
//! power-iteration direction and a few random directions) is emitted. Any
//! other subset is cut along its worst direction into the dense runs of its
//! projection, each widened by a margin of `psi_t(alpha)`; runs too wide to
//! be a single cluster are chopped into overlapping windows.

use std::collections::{HashSet, VecDeque};

use crate::error::{domain, Result};
use crate::learners::{LearnerProfile, ListDecoder};
use crate::linalg;
use crate::rng::Stream;
use crate::tail::psi;
use crate::types::{DataSet, Hypothesis, HypothesisList, Vector};

#[derive(Debug, Clone, PartialEq)]
pub struct KldConfig {
    pub profile: LearnerProfile,
    /// Random projections checked per subset, besides the top eigenvector.
    pub n_directions: usize,
    /// Maximum refinement depth.
    pub max_rounds: usize,
    /// A subset passes when every checked variance is at most this multiple
    /// of `(1 + sqrt(d/m))^2`.
    pub variance_threshold_mult: f64,
    /// Sub-clusters need at least `cluster_conc_threshold * alpha * |S|` points.
    pub cluster_conc_threshold: f64,
    /// Half-width of the window used to measure projected density.
    pub window: f64,
    /// Sub-cluster windows extend `margin_mult * psi_t(alpha)` past the run.
    pub margin_mult: f64,
    pub power_iters: usize,
    /// Cap on the total number of points examined, in multiples of `|S|`.
    pub work_limit: f64,
    /// Optional list budget below the profile's cap; the best-supported
    /// hypotheses are kept.
    pub max_list: Option<usize>,
}

impl Default for KldConfig {
    fn default() -> Self {
        Self {
            profile: LearnerProfile::default(),
            n_directions: 2,
            max_rounds: 10,
            variance_threshold_mult: 1.3,
            max_list: None,
            cluster_conc_threshold: 0.5,
            window: 0.5,
            margin_mult: 1.0,
            power_iters: 25,
            work_limit: 60.0,
        }
    }
}

impl KldConfig {
    pub fn validate(&self) -> Result<()> {
        self.profile.validate()?;
        if self.max_list == Some(0) {
            return Err(domain("max_list must be >= 1"));
        }
        if self.max_rounds == 0 || self.power_iters == 0 {
            return Err(domain("max_rounds and power_iters must be >= 1"));
        }
        for (name, v) in [
            ("variance_threshold_mult", self.variance_threshold_mult),
            ("cluster_conc_threshold", self.cluster_conc_threshold),
            ("window", self.window),
            ("margin_mult", self.margin_mult),
            ("work_limit", self.work_limit),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

impl ListDecoder for KldConfig {
    fn profile(&self) -> &LearnerProfile {
        &self.profile
    }

    fn decode(&self, s: &DataSet, alpha: f64, rng: &mut Stream) -> Result<HypothesisList> {
        kld_estimate(s, alpha, self, rng)
    }
}

struct Node {
    idx: Vec<usize>,
    depth: usize,
}

/// Returns at most `min(list_cap(alpha), |S|, max_list)` hypotheses tagged with
/// `alpha`, ordered by decreasing support. An empty list means no subset
/// ever looked like an inlier cluster.
pub fn kld_estimate(s: &DataSet, alpha: f64, cfg: &KldConfig, rng: &mut Stream) -> Result<HypothesisList> {
    cfg.validate()?;
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(domain(format!("alpha={alpha} outside (0, 1]")));
    }
    let n = s.len();
    if (n as f64) * alpha < 1.0 - 1e-9 {
        return Err(domain(format!("|S|={n} is below 1/alpha={}", 1.0 / alpha)));
    }
    let d = s.dim();
    let coords = s.coords();
    let margin = cfg.margin_mult * psi(cfg.profile.t, alpha)?;
    let min_mass = (cfg.cluster_conc_threshold * alpha * n as f64).max(1.0);
    let dense_thr = min_mass * libm::erf(cfg.window / std::f64::consts::SQRT_2);

    let mut queue = VecDeque::from([Node {
        idx: (0..n).collect(),
        depth: 0,
    }]);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut emitted: Vec<(Vec<f64>, usize)> = Vec::new();
    let mut work = 0.0;
    let budget = cfg.work_limit * n as f64;

    while let Some(node) = queue.pop_front() {
        work += node.idx.len() as f64;
        if work > budget {
            break;
        }
        let m = node.idx.len();
        let mean = linalg::mean_of(coords, d, &node.idx);
        let start = rng.unit_vector(d);
        let top = linalg::top_eigen(coords, d, &node.idx, &mean, &start, cfg.power_iters, 1e-4);
        let (mut worst_var, mut worst_dir) = (top.value, top.vector);
        for _ in 0..cfg.n_directions {
            let v = rng.unit_vector(d);
            let var = linalg::directional_variance(coords, d, &node.idx, &mean, &v);
            if var > worst_var {
                worst_var = var;
                worst_dir = v;
            }
        }
        let thr = cfg.variance_threshold_mult * (1.0 + (d as f64 / m as f64).sqrt()).powi(2);
        if worst_var <= thr {
            emitted.push((mean, m));
            continue;
        }
        if node.depth >= cfg.max_rounds {
            continue;
        }

        let proj = linalg::project(coords, d, &node.idx, &mean, &worst_dir);
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| proj[a].total_cmp(&proj[b]).then(a.cmp(&b)));
        let sorted: Vec<f64> = order.iter().map(|&k| proj[k]).collect();
        let runs = dense_runs(&sorted, cfg.window, dense_thr, 2.0 * margin);
        if runs.is_empty() {
            continue;
        }

        let window_members = |lo: f64, hi: f64| -> Vec<usize> {
            let a = sorted.partition_point(|&p| p < lo);
            let b = sorted.partition_point(|&p| p <= hi);
            let mut members: Vec<usize> = order[a..b].iter().map(|&k| node.idx[k]).collect();
            members.sort_unstable();
            members
        };
        let mut children: Vec<Vec<usize>> = runs
            .iter()
            .map(|&(a, b)| window_members(a - margin, b + margin))
            .filter(|c| c.len() as f64 >= min_mass)
            .collect();
        if children.len() == 1 && children[0].len() == m {
            let (a, b) = (runs[0].0, runs[runs.len() - 1].1);
            if b - a <= 2.0 * margin {
                // concentrated at scale psi_t(alpha) along the worst direction
                emitted.push((mean, m));
                continue;
            }
            children.clear();
            let mut c = a;
            loop {
                let child = window_members(c - margin, c + margin);
                if child.len() as f64 >= min_mass {
                    children.push(child);
                }
                if c >= b {
                    break;
                }
                c = (c + margin).min(b);
            }
        }
        for child in children {
            if child.len() < m && seen.insert(child.clone()) {
                queue.push_back(Node {
                    idx: child,
                    depth: node.depth + 1,
                });
            }
        }
    }

    // stable: equal supports keep discovery order
    emitted.sort_by(|a, b| b.1.cmp(&a.1));
    let cap = cfg
        .profile
        .list_cap(alpha)
        .min(n)
        .min(cfg.max_list.unwrap_or(usize::MAX));
    emitted
        .into_iter()
        .take(cap)
        .map(|(mean, _)| Hypothesis::new(Vector::from(mean), alpha))
        .collect()
}

/// Maximal intervals of dense points in sorted projections. A point is dense
/// when at least `thr` projections fall within `h` of it; dense points closer
/// than `join` end up in the same run.
fn dense_runs(sorted: &[f64], h: f64, thr: f64, join: f64) -> Vec<(f64, f64)> {
    let m = sorted.len();
    let mut runs: Vec<(f64, f64)> = Vec::new();
    let (mut lo, mut hi) = (0usize, 0usize);
    for i in 0..m {
        let p = sorted[i];
        while sorted[lo] < p - h {
            lo += 1;
        }
        while hi < m && sorted[hi] <= p + h {
            hi += 1;
        }
        if (hi - lo) as f64 >= thr {
            match runs.last_mut() {
                Some(run) if p - run.1 <= join => run.1 = p,
                _ => runs.push((p, p)),
            }
        }
    }
    runs
}
