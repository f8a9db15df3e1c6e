use crate::error::{LdmlError, Result};
use crate::types::{HypothesisList, Metrics, Vector};

/// Per-cluster recovery error `min_{mu_hat in L} ||mu_i - mu_hat||` and its
/// maximum over clusters. `runtime_ms` is left at zero for the caller.
pub fn worst_error(true_means: &[Vector], list: &HypothesisList) -> Result<Metrics> {
    if list.is_empty() {
        return Err(LdmlError::EmptyList);
    }
    let mut per_cluster_error = Vec::with_capacity(true_means.len());
    for mu in true_means {
        let mut best = f64::INFINITY;
        for h in list.iter() {
            if h.mean.dim() != mu.dim() {
                return Err(LdmlError::DimensionMismatch {
                    expected: mu.dim(),
                    got: h.mean.dim(),
                });
            }
            best = best.min(mu.distance(&h.mean));
        }
        per_cluster_error.push(best);
    }
    let worst_error = per_cluster_error.iter().copied().fold(0.0, f64::max);
    Ok(Metrics {
        list_size: list.len(),
        per_cluster_error,
        worst_error,
        runtime_ms: 0.0,
    })
}
