//! Base learners: a list-decodable mean estimator, a robust mean estimator
//! for the small-contamination regime, success-probability boosting and a
//! brute-force dense-ball oracle used as a test reference.

mod kld;
mod oracle;
mod rme;

pub use kld::{kld_estimate, KldConfig};
pub use oracle::dense_ball_oracle;
pub use rme::{rme_estimate, rme_filter, RmeConfig};

use crate::error::{domain, LdmlError, Result};
use crate::rng::Stream;
use crate::tail::{check_t, psi_unchecked};
use crate::types::{DataSet, HypothesisList, Vector};

/// Error curves and limits a pair of base learners promises to meet.
#[derive(Debug, Clone, PartialEq)]
pub struct LearnerProfile {
    pub t: u32,
    /// `f(a) = c_f * psi_t(a)`: list-decoding error at inlier fraction `a`.
    pub c_f: f64,
    /// `g(a) = c_g (1 - a) sqrt(ln(1 / (1 - a)))`: robust estimation error.
    pub c_g: f64,
    /// Robust estimation is available for `a >= 1 - eps_rme`.
    pub eps_rme: f64,
    /// List size bound `ceil(c_list / a^list_cap_exponent)`.
    pub c_list: f64,
    pub list_cap_exponent: f64,
}

impl Default for LearnerProfile {
    fn default() -> Self {
        Self {
            t: 16,
            c_f: 3.0,
            c_g: 4.0,
            eps_rme: 0.05,
            c_list: 2.0,
            list_cap_exponent: 1.0,
        }
    }
}

impl LearnerProfile {
    pub fn validate(&self) -> Result<()> {
        check_t(self.t)?;
        for (name, v) in [("c_f", self.c_f), ("c_g", self.c_g), ("c_list", self.c_list), ("list_cap_exponent", self.list_cap_exponent)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(domain(format!("{name} must be positive, got {v}")));
            }
        }
        if !(0.01..0.5).contains(&self.eps_rme) {
            return Err(domain(format!("eps_rme={} outside [0.01, 0.5)", self.eps_rme)));
        }
        Ok(())
    }

    pub fn f(&self, alpha: f64) -> f64 {
        self.c_f * psi_unchecked(self.t, alpha)
    }

    pub fn g(&self, alpha: f64) -> f64 {
        if alpha >= 1.0 {
            return 0.0;
        }
        let e = 1.0 - alpha;
        self.c_g * e * (1.0 / e).ln().sqrt()
    }

    /// Hard cap on the list length at inlier fraction `alpha`.
    pub fn list_cap(&self, alpha: f64) -> usize {
        (self.c_list / alpha.powf(self.list_cap_exponent) - 1e-9).ceil().max(1.0) as usize
    }

    /// Checks that `f` is non-increasing with `f(x/2) <= C f(x)` on
    /// `x = 2^-1..2^-10`, and that `g` is non-increasing with
    /// `g(x - (1-x)^2) <= C g(x)` on `[0.99, 1]`, the only range where `g`
    /// is ever consulted.
    pub fn check_regularity(&self, c: f64) -> Result<()> {
        for k in 1..=10 {
            let x = 0.5f64.powi(k);
            if self.f(x / 2.0) > c * self.f(x) + 1e-12 {
                return Err(domain(format!("f(x/2) > {c} f(x) at x={x}")));
            }
            if self.f(x / 2.0) + 1e-12 < self.f(x) {
                return Err(domain(format!("f increasing at x={x}")));
            }
        }
        let mut grid: Vec<f64> = (0..100).map(|i| 0.99 + 0.0001 * i as f64).collect();
        grid.extend((7..=30).map(|k| 1.0 - 0.5f64.powi(k)));
        for &x in &grid {
            let y = x - (1.0 - x).powi(2);
            if self.g(y) > c * self.g(x) + 1e-12 {
                return Err(domain(format!("g(x - (1-x)^2) > {c} g(x) at x={x}")));
            }
            if self.g(y) + 1e-12 < self.g(x) {
                return Err(domain(format!("g increasing at x={x}")));
            }
        }
        Ok(())
    }
}

/// A list-decodable mean estimator: given a set in which an `alpha` fraction
/// are inliers, returns a short list with one accurate mean (with
/// probability at least 1/2).
pub trait ListDecoder: Sync {
    fn profile(&self) -> &LearnerProfile;
    fn decode(&self, s: &DataSet, alpha: f64, rng: &mut Stream) -> Result<HypothesisList>;
}

/// A robust mean estimator for inlier fractions `alpha >= 1 - eps_rme`.
pub trait RobustMean: Sync {
    fn eps_rme(&self) -> f64;
    fn estimate(&self, s: &DataSet, alpha: f64, rng: &mut Stream) -> Result<Vector>;
}

/// The pair of base learners the meta-algorithm is built from.
#[derive(Clone, Copy)]
pub struct Learners<'a> {
    pub ld: &'a dyn ListDecoder,
    pub rme: &'a dyn RobustMean,
}

impl<'a> Learners<'a> {
    pub fn new(ld: &'a dyn ListDecoder, rme: &'a dyn RobustMean) -> Self {
        Self { ld, rme }
    }

    pub fn profile(&self) -> &LearnerProfile {
        self.ld.profile()
    }
}

/// Splits `s` uniformly at random into `r` parts (sizes differing by at most
/// one), decodes each and concatenates the lists. `r = 1` is a plain run.
pub fn boost<L: ListDecoder + ?Sized>(
    learner: &L,
    r: usize,
    s: &DataSet,
    alpha: f64,
    rng: &mut Stream,
) -> Result<HypothesisList> {
    if r == 0 {
        return Err(domain("boost rounds must be >= 1"));
    }
    if r == 1 {
        return learner.decode(s, alpha, rng);
    }
    if s.len() < r {
        return Err(LdmlError::Infeasible(format!("cannot split {} points into {r} parts", s.len())));
    }
    let mut idx: Vec<usize> = (0..s.len()).collect();
    rng.fork("boost-split").shuffle(&mut idx);
    let mut out = HypothesisList::default();
    for (part, chunk) in partition_sizes(s.len(), r).into_iter().scan(0, |start, len| {
        let range = *start..*start + len;
        *start += len;
        Some(range)
    }).enumerate() {
        let mut members = idx[chunk].to_vec();
        members.sort_unstable();
        let sub = s.subset(&members);
        let mut sub_rng = rng.fork(&format!("boost-{part}"));
        out.extend(learner.decode(&sub, alpha, &mut sub_rng)?);
    }
    Ok(out)
}

/// Sizes of `r` near-equal parts of `n` items.
pub fn partition_sizes(n: usize, r: usize) -> Vec<usize> {
    (0..r).map(|i| n / r + usize::from(i < n % r)).collect()
}

/// Boosted wrapper usable wherever a [`ListDecoder`] is expected.
#[derive(Debug, Clone)]
pub struct Boosted<L> {
    pub inner: L,
    pub rounds: usize,
}

impl<L: ListDecoder> ListDecoder for Boosted<L> {
    fn profile(&self) -> &LearnerProfile {
        self.inner.profile()
    }

    fn decode(&self, s: &DataSet, alpha: f64, rng: &mut Stream) -> Result<HypothesisList> {
        boost(&self.inner, self.rounds, s, alpha, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_profile_is_regular() {
        let p = LearnerProfile::default();
        p.validate().unwrap();
        p.check_regularity(4.0).unwrap();
        for t in [2, 4, 8] {
            let q = LearnerProfile { t, ..p.clone() };
            q.check_regularity(4.0).unwrap();
        }
    }

    #[test]
    fn g_endpoints() {
        let p = LearnerProfile::default();
        assert_eq!(p.g(1.0), 0.0);
        let expect = 4.0 * 0.05 * 20f64.ln().sqrt();
        assert!((p.g(0.95) - expect).abs() < 1e-12);
    }

    #[test]
    fn list_cap_arithmetic() {
        let p = LearnerProfile::default();
        assert_eq!(p.list_cap(0.1), 20);
        assert_eq!(p.list_cap(0.3), 7);
        assert_eq!(p.list_cap(1.0), 2);
    }

    #[test]
    fn partition_sizes_differ_by_at_most_one() {
        for n in 1..40 {
            for r in 1..=n.min(7) {
                let s = partition_sizes(n, r);
                assert_eq!(s.iter().sum::<usize>(), n);
                let (lo, hi) = (s.iter().min().unwrap(), s.iter().max().unwrap());
                assert!(hi - lo <= 1);
            }
        }
    }
}
