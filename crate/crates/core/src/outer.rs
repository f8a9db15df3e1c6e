//! Outer stage: carve the sample into a few candidate sets, each holding
//! (most of) one inlier component plus a bounded amount of everything else.

use crate::error::{domain, LdmlError, Result};
use crate::learners::{boost, LearnerProfile, ListDecoder};
use crate::linalg;
use crate::rng::Stream;
use crate::tail::psi;
use crate::types::{AlgoConfig, DataSet, HypothesisList};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OuterConfig {
    /// `c_gamma psi_t(w_low^4)`.
    pub gamma: f64,
    /// `c_gp_psi psi_t(w_low/4) + c_gp_f f(w_low/4)`.
    pub gamma_prime: f64,
    /// Shells with at most this many inner points are discarded.
    pub floor: f64,
}

impl OuterConfig {
    pub fn new(cfg: &AlgoConfig, profile: &LearnerProfile, n: usize) -> Result<Self> {
        let w = cfg.w_low;
        let gamma = cfg.c_gamma * psi(cfg.t, w.powi(4))?;
        let gamma_prime = cfg.c_gammaprime_psi * psi(cfg.t, w / 4.0)? + cfg.c_gammaprime_f * profile.f(w / 4.0);
        let out = Self {
            gamma,
            gamma_prime,
            floor: cfg.prune_floor_mult * w.powi(4) * n as f64,
        };
        if !(out.gamma > 0.0 && out.gamma_prime > 0.0) {
            return Err(domain("gamma and gamma_prime must be positive"));
        }
        Ok(out)
    }

    pub fn inner_radius(&self) -> f64 {
        self.gamma + self.gamma_prime
    }
}

/// Where a candidate set came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    /// The outer shell `S^(2)` of hypothesis `i`.
    Shell(usize),
    /// Everything left once no shell qualified.
    Residual,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    /// Sorted indices into the input sample.
    pub indices: Vec<usize>,
    pub origin: Origin,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CandidateSetCollection {
    pub sets: Vec<CandidateSet>,
    /// The list-decoding output the shells were built around.
    pub hypotheses: HypothesisList,
}

impl CandidateSetCollection {
    pub fn total_size(&self) -> usize {
        self.sets.iter().map(|s| s.indices.len()).sum()
    }
}

/// For every point `x` and hypothesis `i`, the largest `|<x - mu_i, v_ij>|`
/// over `j != i` (0 when there is a single hypothesis). Both shells of `i`
/// are sublevel sets of this quantity, and it never changes during the
/// outer loop because the directions are fixed up front.
pub struct SlabDistances {
    m: usize,
    values: Vec<f64>,
}

impl SlabDistances {
    pub fn new(s: &DataSet, means: &[&[f64]]) -> Self {
        let m = means.len();
        let n = s.len();
        let sq: Vec<f64> = means.iter().map(|mu| linalg::dot(mu, mu)).collect();
        // gram[a][b] = <mu_a, mu_b>, dist[a][b] = |mu_a - mu_b|
        let mut gram = vec![0.0; m * m];
        for a in 0..m {
            for b in 0..m {
                gram[a * m + b] = linalg::dot(means[a], means[b]);
            }
        }
        let dist: Vec<f64> = (0..m * m)
            .map(|ab| {
                let (a, b) = (ab / m, ab % m);
                (sq[a] + sq[b] - 2.0 * gram[ab]).max(0.0).sqrt()
            })
            .collect();
        let mut values = vec![0.0; n * m];
        let mut proj = vec![0.0; m];
        for (x, row) in s.points().enumerate() {
            for (a, mu) in means.iter().enumerate() {
                proj[a] = linalg::dot(row, mu);
            }
            for i in 0..m {
                let mut worst: f64 = 0.0;
                for j in 0..m {
                    if j == i {
                        continue;
                    }
                    // <x - mu_i, mu_i - mu_j> / |mu_i - mu_j|
                    let num = proj[i] - proj[j] - sq[i] + gram[i * m + j];
                    worst = worst.max((num / dist[i * m + j]).abs());
                }
                values[x * m + i] = worst;
            }
        }
        Self { m, values }
    }

    pub fn get(&self, point: usize, hyp: usize) -> f64 {
        self.values[point * self.m + hyp]
    }
}

/// `(S^(1)_i, S^(2)_i)` restricted to the points flagged in `alive`.
pub fn shells(i: usize, dist: &SlabDistances, alive: &[bool], oc: &OuterConfig) -> (Vec<usize>, Vec<usize>) {
    let r1 = oc.inner_radius();
    let r2 = 3.0 * r1;
    let mut s1 = Vec::new();
    let mut s2 = Vec::new();
    for (x, _) in alive.iter().enumerate().filter(|(_, a)| **a) {
        let v = dist.get(x, i);
        if v <= r2 {
            s2.push(x);
            if v <= r1 {
                s1.push(x);
            }
        }
    }
    (s1, s2)
}

/// Drops hypotheses that coincide with an earlier one, so every pair
/// defines a direction.
fn dedup(list: HypothesisList) -> HypothesisList {
    let mut out: Vec<crate::types::Hypothesis> = Vec::new();
    for h in list {
        if out.iter().all(|o| o.mean.distance(&h.mean) > 1e-12) {
            out.push(h);
        }
    }
    HypothesisList::new(out)
}

/// Runs the list decoder at `alpha = w_low` and repeatedly peels off the
/// largest shell whose outer ring at most doubles it.
pub fn outer_stage(
    s: &DataSet,
    ld: &dyn ListDecoder,
    cfg: &AlgoConfig,
    rng: &mut Stream,
) -> Result<CandidateSetCollection> {
    let n = s.len();
    if (n as f64) * cfg.w_low < 1.0 - 1e-9 {
        return Err(LdmlError::Infeasible(format!("outer stage needs |S| >= 1/w_low, got {n}")));
    }
    let oc = OuterConfig::new(cfg, ld.profile(), n)?;
    let hyps = dedup(boost(ld, cfg.boost_rounds, s, cfg.w_low, &mut rng.fork("sld"))?);
    run_outer(s, hyps, &oc)
}

/// The shell-peeling loop on a given hypothesis list.
pub fn run_outer(s: &DataSet, hyps: HypothesisList, oc: &OuterConfig) -> Result<CandidateSetCollection> {
    let n = s.len();
    if hyps.is_empty() {
        return Ok(CandidateSetCollection {
            sets: vec![CandidateSet {
                indices: (0..n).collect(),
                origin: Origin::Residual,
            }],
            hypotheses: hyps,
        });
    }
    let means: Vec<&[f64]> = hyps.means().map(|v| v.as_slice()).collect();
    let dist = SlabDistances::new(s, &means);
    let mut alive = vec![true; n];
    let mut live: Vec<usize> = (0..hyps.len()).collect();
    let mut sets = Vec::new();
    while !live.is_empty() {
        let shells_now: Vec<(usize, Vec<usize>, Vec<usize>)> = live
            .iter()
            .map(|&i| {
                let (s1, s2) = shells(i, &dist, &alive, oc);
                (i, s1, s2)
            })
            .filter(|(_, s1, _)| s1.len() as f64 > oc.floor)
            .collect();
        live = shells_now.iter().map(|(i, _, _)| *i).collect();
        if live.is_empty() {
            break;
        }
        let pick = shells_now
            .iter()
            .filter(|(_, s1, s2)| s2.len() <= 2 * s1.len())
            .fold(None::<&(usize, Vec<usize>, Vec<usize>)>, |best, cand| match best {
                Some(b) if b.1.len() >= cand.1.len() => Some(b),
                _ => Some(cand),
            });
        match pick {
            Some((i, s1, s2)) => {
                sets.push(CandidateSet {
                    indices: s2.clone(),
                    origin: Origin::Shell(*i),
                });
                for &x in s1 {
                    alive[x] = false;
                }
                let i = *i;
                live.retain(|&j| j != i);
            }
            None => {
                let rest: Vec<usize> = (0..n).filter(|&x| alive[x]).collect();
                if !rest.is_empty() {
                    sets.push(CandidateSet {
                        indices: rest,
                        origin: Origin::Residual,
                    });
                }
                break;
            }
        }
    }
    Ok(CandidateSetCollection { sets, hypotheses: hyps })
}
