//! Inner stage: list-decoding over a grid of candidate inlier fractions,
//! hypothesis pruning, and robust refinement of the survivors.

use crate::datagen::floor_tol;
use crate::error::{domain, LdmlError, Result};
use crate::learners::{boost, LearnerProfile, Learners, RobustMean};
use crate::linalg;
use crate::par;
use crate::rng::Stream;
use crate::tail::psi;
use crate::types::{AlgoConfig, DataSet, Hypothesis, HypothesisList, Vector};

/// Slab half-width `c_beta psi_t(a) + f(a)` used when pruning hypotheses.
pub fn beta(alpha: f64, cfg: &AlgoConfig, profile: &LearnerProfile) -> Result<f64> {
    Ok(cfg.c_beta * psi(cfg.t, alpha)? + profile.f(alpha))
}

/// Refinement radius `c_tau_psi psi_t(a) + c_tau_f f(a)`.
pub fn tau(alpha: f64, cfg: &AlgoConfig, profile: &LearnerProfile) -> Result<f64> {
    Ok(cfg.c_tau_psi * psi(cfg.t, alpha)? + cfg.c_tau_f * profile.f(alpha))
}

/// `alpha_low` after the `min(1/100, .)` clamp.
pub fn clamp_alpha_low(alpha_low: f64) -> f64 {
    alpha_low.min(0.01)
}

/// `{a, 2a, ..., floor(1/(3a)) a}` for the clamped `a`.
pub fn alpha_grid(alpha_low: f64) -> Result<Vec<f64>> {
    if !(alpha_low > 0.0) {
        return Err(domain(format!("alpha_low={alpha_low} must be positive")));
    }
    let a = clamp_alpha_low(alpha_low);
    let count = floor_tol(1.0 / (3.0 * a));
    Ok((1..=count).map(|j| j as f64 * a).collect())
}

/// Survivors of [`list_filter`] together with their retained sample sets.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterState {
    pub surviving: HypothesisList,
    /// Sorted sample indices `T_i`, aligned with `surviving`.
    pub support_sets: Vec<Vec<usize>>,
    /// Number of times the sweep was restarted after dropping a survivor.
    pub restarts: usize,
}

/// Prunes `m` to a small list of well-supported, well-separated hypotheses.
pub fn list_filter(
    s: &DataSet,
    m: &HypothesisList,
    cfg: &AlgoConfig,
    profile: &LearnerProfile,
) -> Result<HypothesisList> {
    Ok(list_filter_state(s, m, cfg, profile)?.surviving)
}

/// [`list_filter`] exposing the support sets.
///
/// Hypotheses are visited by decreasing `alpha_hat` (ties keep input order).
/// A candidate within `4 beta` of a survivor is skipped; otherwise its
/// support is the intersection of slabs of half-width `beta` along the
/// directions to all survivors, and it is dropped if that holds fewer than
/// `list_filter_frac * alpha_hat * n` points. Accepting a candidate narrows
/// every earlier survivor's support; if one falls below its threshold it is
/// dropped and the sweep starts over.
pub fn list_filter_state(
    s: &DataSet,
    m: &HypothesisList,
    cfg: &AlgoConfig,
    profile: &LearnerProfile,
) -> Result<FilterState> {
    let n = s.len();
    let d = s.dim();
    for h in m.iter() {
        if h.mean.dim() != d {
            return Err(LdmlError::DimensionMismatch {
                expected: d,
                got: h.mean.dim(),
            });
        }
    }
    let mut order: Vec<usize> = (0..m.len()).collect();
    order.sort_by(|&a, &b| m.items[b].alpha_hat.total_cmp(&m.items[a].alpha_hat).then(a.cmp(&b)));
    let betas = m
        .iter()
        .map(|h| beta(h.alpha_hat, cfg, profile))
        .collect::<Result<Vec<f64>>>()?;
    let need = |i: usize| cfg.list_filter_frac * m.items[i].alpha_hat * n as f64;
    let coords = s.coords();
    let mut alive = vec![true; m.len()];
    let mut restarts = 0;
    'sweep: loop {
        let mut survivors: Vec<usize> = Vec::new();
        let mut supports: Vec<Vec<usize>> = Vec::new();
        for &i in &order {
            if !alive[i] {
                continue;
            }
            let mu_i = &m.items[i].mean;
            let b_i = betas[i];
            if survivors.iter().any(|&j| mu_i.distance(&m.items[j].mean) <= 4.0 * b_i) {
                continue;
            }
            let mut t_i: Vec<usize> = (0..n).collect();
            for &j in &survivors {
                let v = linalg::unit_direction(mu_i, &m.items[j].mean).expect("separated by 4 beta");
                t_i = slab(coords, d, t_i, mu_i, &v, b_i);
            }
            if (t_i.len() as f64) < need(i) {
                alive[i] = false;
                continue;
            }
            for (pos, &j) in survivors.iter().enumerate() {
                let mu_j = &m.items[j].mean;
                let v = linalg::unit_direction(mu_i, mu_j).expect("separated by 4 beta");
                let kept = slab(coords, d, std::mem::take(&mut supports[pos]), mu_j, &v, b_i);
                if (kept.len() as f64) < need(j) {
                    alive[j] = false;
                    restarts += 1;
                    if restarts > m.len() {
                        return Err(LdmlError::Infeasible("list filter failed to settle".into()));
                    }
                    continue 'sweep;
                }
                supports[pos] = kept;
            }
            survivors.push(i);
            supports.push(t_i);
        }
        let surviving = survivors.iter().map(|&i| m.items[i].clone()).collect();
        return Ok(FilterState {
            surviving,
            support_sets: supports,
            restarts,
        });
    }
}

/// Members of `idx` with `|<x - center, v>| <= half_width`.
fn slab(coords: &[f64], d: usize, idx: Vec<usize>, center: &[f64], v: &[f64], half_width: f64) -> Vec<usize> {
    let offset = linalg::dot(center, v);
    idx.into_iter()
        .filter(|&i| (linalg::dot(&coords[i * d..(i + 1) * d], v) - offset).abs() <= half_width)
        .collect()
}

/// Smallest `a` in `[lo, 1]` with `g(a) <= target`, to 1e-9, or `None`.
/// `g` is non-increasing on the range this is called with.
fn smallest_alpha(profile: &LearnerProfile, lo: f64, target: f64) -> Option<f64> {
    if lo > 1.0 || profile.g(1.0) > target {
        return None;
    }
    if profile.g(lo) <= target {
        return Some(lo);
    }
    let (mut a, mut b) = (lo, 1.0);
    while b - a > 1e-9 {
        let mid = 0.5 * (a + b);
        if profile.g(mid) <= target {
            b = mid;
        } else {
            a = mid;
        }
    }
    Some(b)
}

/// Moves `mu_hat` to successively more robust estimates as long as each
/// stays within `3/2` of the current radius; total movement is below `3 tau`.
pub fn improve_with_rme(
    s: &DataSet,
    mu_hat: &Vector,
    tau: f64,
    rme: &dyn RobustMean,
    profile: &LearnerProfile,
    w_low: f64,
    rng: &mut Stream,
) -> Result<Vector> {
    if !(tau > 0.0) {
        return Err(domain(format!("tau={tau} must be positive")));
    }
    let mut radius = tau;
    let Some(mut a) = smallest_alpha(profile, 1.0 - rme.eps_rme(), radius / 2.0) else {
        return Ok(mu_hat.clone());
    };
    let mut current = mu_hat.clone();
    let mut round = 0;
    let mut candidate = rme.estimate(s, a, &mut rng.fork(&format!("rme-{round}")))?;
    while current.distance(&candidate) <= 1.5 * radius {
        current = candidate;
        radius = profile.g(a);
        let Some(next) = smallest_alpha(profile, a + w_low * w_low, radius / 2.0) else {
            break;
        };
        a = next;
        round += 1;
        candidate = rme.estimate(s, a, &mut rng.fork(&format!("rme-{round}")))?;
    }
    Ok(current)
}

/// Runs the list decoder for every grid fraction, prunes the union and,
/// when enabled, refines each survivor.
pub fn inner_stage(
    s: &DataSet,
    alpha_low: f64,
    learners: Learners<'_>,
    cfg: &AlgoConfig,
    rng: &mut Stream,
) -> Result<HypothesisList> {
    if s.is_empty() {
        return Err(LdmlError::EmptyInput("inner_stage"));
    }
    let profile = learners.profile();
    let grid = alpha_grid(alpha_low)?;
    let base = rng.clone();
    let lists = par::map(&grid, |j, &a| -> Result<HypothesisList> {
        if (s.len() as f64) * a < 1.0 - 1e-9 {
            return Ok(HypothesisList::default());
        }
        let mut r = base.fork(&format!("grid-{j}"));
        let out = boost(learners.ld, cfg.boost_rounds, s, a, &mut r)?;
        Ok(out
            .into_iter()
            .map(|h| Hypothesis {
                mean: h.mean,
                alpha_hat: a,
            })
            .collect())
    });
    let mut m = HypothesisList::default();
    for l in lists {
        m.extend(l?);
    }
    let survivors = list_filter(s, &m, cfg, profile)?;
    if !cfg.use_rme {
        return Ok(survivors);
    }
    let refined = par::map(&survivors.items, |i, h| -> Result<Hypothesis> {
        let t = tau(h.alpha_hat, cfg, profile)?;
        let mut r = base.fork(&format!("improve-{i}"));
        let mean = improve_with_rme(s, &h.mean, t, learners.rme, profile, cfg.w_low, &mut r)?;
        Ok(Hypothesis {
            mean,
            alpha_hat: h.alpha_hat,
        })
    });
    refined.into_iter().collect()
}
