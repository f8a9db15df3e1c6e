//! Robust mean estimation by iterative spectral filtering, for inlier
//! fractions close to one.

use crate::error::{domain, Result};
use crate::learners::{LearnerProfile, RobustMean};
use crate::linalg;
use crate::rng::Stream;
use crate::types::{DataSet, Vector};

#[derive(Debug, Clone, PartialEq)]
pub struct RmeConfig {
    pub profile: LearnerProfile,
    /// Weight of the `eps ln(1/eps)` term in the stopping threshold.
    pub c_threshold: f64,
    /// Multiplier on the sampling term `(1 + sqrt(d/m))^2`.
    pub sampling_slack: f64,
    pub power_iters: usize,
}

impl Default for RmeConfig {
    fn default() -> Self {
        Self {
            profile: LearnerProfile::default(),
            c_threshold: 1.0,
            sampling_slack: 1.1,
            power_iters: 30,
        }
    }
}

impl RobustMean for RmeConfig {
    fn eps_rme(&self) -> f64 {
        self.profile.eps_rme
    }

    fn estimate(&self, s: &DataSet, alpha: f64, rng: &mut Stream) -> Result<Vector> {
        rme_estimate(s, alpha, self, rng)
    }
}

/// Repeatedly removes the points with the largest squared projection on the
/// top covariance direction until the top eigenvalue is consistent with
/// `1 - alpha` contamination. At most `2 (1 - alpha) |S|` points are removed.
pub fn rme_estimate(s: &DataSet, alpha: f64, cfg: &RmeConfig, rng: &mut Stream) -> Result<Vector> {
    let kept = rme_filter(s, alpha, cfg, rng)?;
    Ok(Vector::from(linalg::mean_of(s.coords(), s.dim(), &kept)))
}

/// The filtering loop of [`rme_estimate`]; returns the sorted indices of
/// the points that were kept.
pub fn rme_filter(s: &DataSet, alpha: f64, cfg: &RmeConfig, rng: &mut Stream) -> Result<Vec<usize>> {
    cfg.profile.validate()?;
    if !(alpha <= 1.0 && alpha >= 1.0 - cfg.profile.eps_rme - 1e-12) {
        return Err(domain(format!(
            "alpha={alpha} outside the robust regime [{}, 1]",
            1.0 - cfg.profile.eps_rme
        )));
    }
    if s.is_empty() {
        return Err(crate::error::LdmlError::EmptyInput("rme_estimate"));
    }
    let n = s.len();
    let d = s.dim();
    let coords = s.coords();
    let eps = 1.0 - alpha;
    let mut budget = (2.0 * eps * n as f64 + 1e-9).floor() as usize;
    let mut idx: Vec<usize> = (0..n).collect();
    let contamination = if eps > 0.0 { cfg.c_threshold * eps * (1.0 / eps).ln() } else { 0.0 };
    let per_round = ((eps * n as f64 / 2.0).ceil() as usize).max(1);
    while budget > 0 {
        let m = idx.len();
        let mean = linalg::mean_of(coords, d, &idx);
        let start = rng.unit_vector(d);
        let top = linalg::top_eigen(coords, d, &idx, &mean, &start, cfg.power_iters, 1e-6);
        let thr = cfg.sampling_slack * (1.0 + (d as f64 / m as f64).sqrt()).powi(2) + contamination;
        if top.value <= thr {
            break;
        }
        let proj = linalg::project(coords, d, &idx, &mean, &top.vector);
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| (proj[b] * proj[b]).total_cmp(&(proj[a] * proj[a])).then(a.cmp(&b)));
        let r = per_round.min(budget).min(m.saturating_sub(1));
        if r == 0 {
            break;
        }
        let mut drop = vec![false; m];
        for &k in &order[..r] {
            drop[k] = true;
        }
        idx = idx.into_iter().zip(drop).filter(|(_, x)| !x).map(|(i, _)| i).collect();
        budget -= r;
    }
    Ok(idx)
}
