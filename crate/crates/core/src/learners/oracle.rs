//! Exhaustive dense-ball search, used as a reference recoverer in tests.

use crate::linalg;
use crate::types::{DataSet, Hypothesis, HypothesisList, Vector};

/// Greedily picks the sample-centred ball of `radius` covering the most
/// uncovered points (ties: lowest index) while it covers at least
/// `alpha * |S|` of them, removing covered points between picks. Each pick
/// is reported as the mean of the points it covers. `O(n^2 d)` per pick.
pub fn dense_ball_oracle(s: &DataSet, alpha: f64, radius: f64) -> HypothesisList {
    let n = s.len();
    let need = alpha * n as f64 - 1e-9;
    if !(radius > 0.0) || alpha > 1.0 || n == 0 {
        return HypothesisList::default();
    }
    let alpha_hat = alpha.clamp(f64::MIN_POSITIVE, 1.0);
    let r2 = radius * radius;
    let mut alive = vec![true; n];
    let mut out = Vec::new();
    loop {
        let mut best: Option<(usize, usize)> = None;
        for c in (0..n).filter(|&c| alive[c]) {
            let center = s.point(c);
            let count = (0..n)
                .filter(|&j| alive[j] && sq_dist(center, s.point(j)) <= r2)
                .count();
            if best.is_none_or(|(_, b)| count > b) {
                best = Some((c, count));
            }
        }
        let Some((c, count)) = best else { break };
        if (count as f64) < need {
            break;
        }
        let center = s.point(c).to_vec();
        let covered: Vec<usize> = (0..n)
            .filter(|&j| alive[j] && sq_dist(&center, s.point(j)) <= r2)
            .collect();
        for &j in &covered {
            alive[j] = false;
        }
        let mean = linalg::mean_of(s.coords(), s.dim(), &covered);
        out.push(Hypothesis {
            mean: Vector::from(mean),
            alpha_hat,
        });
    }
    HypothesisList::new(out)
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}
