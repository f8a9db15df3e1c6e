//! The full mixture-learning algorithm and the single-call list-decoding
//! baseline it is compared against.

use web_time::Instant;

use crate::error::{domain, LdmlError, Result};
use crate::inner::inner_stage;
use crate::learners::{boost, Learners};
use crate::outer::{outer_stage, CandidateSetCollection};
use crate::par;
use crate::rng::Stream;
use crate::types::{AlgoConfig, DataSet, HypothesisList};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct StageTiming {
    pub outer_ms: f64,
    pub inner_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineResult {
    pub list: HypothesisList,
    /// Index into `candidates.sets` of the set each hypothesis came from.
    pub provenance: Vec<usize>,
    pub candidates: CandidateSetCollection,
    pub timing: StageTiming,
}

fn check_inputs(s: &DataSet, learners: &Learners<'_>, cfg: &AlgoConfig) -> Result<()> {
    cfg.validate()?;
    learners.profile().validate()?;
    if learners.profile().t != cfg.t {
        return Err(domain(format!(
            "learner profile t={} differs from config t={}",
            learners.profile().t,
            cfg.t
        )));
    }
    if (s.len() as f64) * cfg.w_low < 2.0 - 1e-9 {
        return Err(LdmlError::Infeasible(format!(
            "need at least 2/w_low samples, got {}",
            s.len()
        )));
    }
    Ok(())
}

/// Outer stage, then the inner stage on every candidate set `T` with
/// `alpha_low = w_low n / |T|` (capped at 1); the lists are concatenated in
/// candidate-set order.
pub fn full_algorithm(
    s: &DataSet,
    learners: Learners<'_>,
    cfg: &AlgoConfig,
    rng: &mut Stream,
) -> Result<PipelineResult> {
    check_inputs(s, &learners, cfg)?;
    let n = s.len() as f64;
    let t0 = Instant::now();
    let candidates = outer_stage(s, learners.ld, cfg, &mut rng.fork("outer"))?;
    let outer_ms = t0.elapsed().as_secs_f64() * 1e3;

    let t1 = Instant::now();
    let base = rng.clone();
    let lists = par::map(&candidates.sets, |k, set| -> Result<HypothesisList> {
        let sub = s.subset(&set.indices);
        let alpha_low = (cfg.w_low * n / set.indices.len() as f64).min(1.0);
        inner_stage(&sub, alpha_low, learners, cfg, &mut base.fork(&format!("inner-{k}")))
    });
    let mut list = HypothesisList::default();
    let mut provenance = Vec::new();
    for (k, l) in lists.into_iter().enumerate() {
        let l = l?;
        provenance.extend(std::iter::repeat_n(k, l.len()));
        list.extend(l);
    }
    let inner_ms = t1.elapsed().as_secs_f64() * 1e3;
    Ok(PipelineResult {
        list,
        provenance,
        candidates,
        timing: StageTiming { outer_ms, inner_ms },
    })
}

/// One list-decoding call at `alpha = w_low` on the whole sample.
pub fn vanilla_ldme(
    s: &DataSet,
    learners: Learners<'_>,
    cfg: &AlgoConfig,
    rng: &mut Stream,
) -> Result<HypothesisList> {
    cfg.validate()?;
    boost(learners.ld, cfg.boost_rounds, s, cfg.w_low, &mut rng.fork("vanilla"))
}
