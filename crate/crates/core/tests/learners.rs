mod common;

use common::*;
use ldml::datagen::{AdversaryModel, ComponentKind, CorruptionSpec, InlierModel, RemovalRule, corrupt_for_mean_estimation};
use ldml::learners::*;
use ldml::linalg;
use ldml::rng::rng_stream;
use ldml::types::{DataSet, Label, Vector};

fn nearest(list: &ldml::HypothesisList, target: &[f64]) -> f64 {
    list.means().map(|m| m.distance(target)).fold(f64::INFINITY, f64::min)
}

#[test]
fn kld_clean_gaussian_alpha_one() {
    let kld = KldConfig::default();
    let ok = successes(100, |seed| {
        let mut r = rng_stream(seed, "kld-clean");
        let s = gaussian(500, &[0.0; 5], &mut r);
        let out = kld_estimate(&s, 1.0, &kld, &mut r).unwrap();
        nearest(&out, &[0.0; 5]) <= 3.0 * (5.0f64 / 500.0).sqrt()
    });
    assert!(ok >= 95, "{ok}/100");
}

#[test]
fn kld_clean_alpha_one_matches_sample_mean() {
    let mut r = rng_stream(9, "kld-mean");
    let s = gaussian(2000, &[1.0, -2.0, 0.5], &mut r);
    let out = kld_estimate(&s, 1.0, &KldConfig::default(), &mut r).unwrap();
    let mean = s.mean().unwrap();
    assert!(nearest(&out, &mean) <= 1e-9);
}

#[test]
fn kld_two_symmetric_components() {
    let kld = KldConfig::default();
    let f = kld.profile.f(0.5);
    let ok = successes(100, |seed| {
        let mut r = rng_stream(seed, "kld-two");
        let plus = e1(10, 10.0);
        let minus = e1(10, -10.0);
        let s = concat(&[gaussian(500, &plus, &mut r), gaussian(500, &minus, &mut r)]);
        let out = kld_estimate(&s, 0.5, &kld, &mut r).unwrap();
        nearest(&out, &plus) <= f && nearest(&out, &minus) <= f
    });
    assert!(ok >= 90, "{ok}/100");
}

#[test]
fn kld_respects_cap_and_budget() {
    let mut r = rng_stream(1, "kld-cap");
    let parts: Vec<DataSet> = (0..12).map(|i| gaussian(100, &e1(5, 30.0 * i as f64), &mut r)).collect();
    let s = concat(&parts);
    let kld = KldConfig::default();
    let out = kld_estimate(&s, 0.05, &kld, &mut r).unwrap();
    assert!(out.len() <= kld.profile.list_cap(0.05));
    assert!(out.iter().all(|h| h.alpha_hat == 0.05));
    let capped = KldConfig {
        max_list: Some(3),
        ..kld
    };
    assert!(kld_estimate(&s, 0.05, &capped, &mut r).unwrap().len() <= 3);
}

#[test]
fn rme_clean_data_is_the_sample_mean() {
    let mut r = rng_stream(2, "rme-clean");
    let s = gaussian(3000, &[0.5; 8], &mut r);
    let m = rme_estimate(&s, 1.0, &RmeConfig::default(), &mut r).unwrap();
    assert!(m.distance(&s.mean().unwrap()) <= 1e-9);
}

#[test]
fn rme_point_mass_contamination() {
    let rme = RmeConfig::default();
    let d = 20;
    let ok = successes(100, |seed| {
        let mut r = rng_stream(seed, "rme-mass");
        let s = concat(&[gaussian(4750, &vec![0.0; d], &mut r), mass(250, &e1(d, 100.0), Label::Adversary)]);
        let raw = linalg::norm(&s.mean().unwrap());
        assert!((raw - 5.0).abs() < 0.5);
        linalg::norm(&rme_estimate(&s, 0.95, &rme, &mut r).unwrap()) <= 0.5
    });
    assert!(ok >= 90, "{ok}/100");
}

#[test]
fn rme_removal_budget() {
    let rme = RmeConfig::default();
    for seed in 0..20 {
        let mut r = rng_stream(seed, "rme-budget");
        let s = concat(&[gaussian(950, &[0.0; 5], &mut r), gaussian(50, &[8.0; 5], &mut r)]);
        for alpha in [0.95, 0.97, 1.0] {
            let kept = rme_filter(&s, alpha, &rme, &mut r).unwrap();
            let removed = s.len() - kept.len();
            assert!(removed as f64 <= 2.0 * (1.0 - alpha) * s.len() as f64 + 1e-9);
        }
    }
}

#[test]
fn boost_single_round_is_a_plain_run() {
    let kld = KldConfig::default();
    let s = gaussian(400, &[0.0; 3], &mut rng_stream(0, "b"));
    let a = boost(&kld, 1, &s, 0.5, &mut rng_stream(7, "x")).unwrap();
    let b = kld_estimate(&s, 0.5, &kld, &mut rng_stream(7, "x")).unwrap();
    assert_eq!(a, b);
}

/// A deliberately unreliable decoder: succeeds on roughly half the calls.
struct CoinFlip(LearnerProfile);

impl ListDecoder for CoinFlip {
    fn profile(&self) -> &LearnerProfile {
        &self.0
    }

    fn decode(&self, s: &DataSet, alpha: f64, rng: &mut ldml::rng::Stream) -> ldml::Result<ldml::HypothesisList> {
        let pick = if rng.uniform() < 0.5 { s.mean()? } else { Vector::zeros(s.dim()) };
        Ok(ldml::HypothesisList::new(vec![ldml::Hypothesis::new(pick, alpha)?]))
    }
}

#[test]
fn boosting_raises_success_frequency() {
    let learner = CoinFlip(LearnerProfile::default());
    let truth = e1(4, 5.0);
    let run = |rounds: usize| {
        successes(100, |seed| {
            let mut r = rng_stream(seed, "boost");
            let s = gaussian(900, &truth, &mut r);
            let out = boost(&learner, rounds, &s, 0.5, &mut r).unwrap();
            assert!(out.len() <= rounds);
            nearest(&out, &truth) <= 0.5
        })
    };
    let single = run(1);
    let boosted = run(3);
    assert!(single >= 35, "single {single}");
    assert!(boosted >= 85, "boosted {boosted}");
}

#[test]
fn oracle_finds_two_masses() {
    let s = concat(&[mass(50, &[0.0, 0.0], Label::Component(0)), mass(50, &[10.0, 0.0], Label::Component(1))]);
    let out = dense_ball_oracle(&s, 0.4, 1.0);
    assert_eq!(out.len(), 2);
    assert!(dense_ball_oracle(&s, 1.5, 1.0).is_empty());
}

#[test]
fn kld_contract_on_corrupted_inputs() {
    // Desk version of the list-decoding contract at one alpha; the full
    // 100-seed sweep runs in the acceptance suite.
    let kld = KldConfig::default();
    let d = 10;
    let alpha = 0.3;
    let ok = successes(20, |seed| {
        let mut r = rng_stream(seed, "contract");
        let centers: Vec<Vector> = (0..7)
            .map(|_| Vector::from(r.unit_vector(d).iter().map(|x| x * 30.0).collect::<Vec<_>>()))
            .collect();
        let spec = CorruptionSpec {
            alpha,
            w_low: 0.1,
            n: 4000,
            adversary: AdversaryModel::Clusters { centers, scale: 1.0 },
            removal: RemovalRule::WorstAlongDirection(Vector::from(r.unit_vector(d))),
        };
        let base = InlierModel {
            mean: Vector::zeros(d),
            kind: ComponentKind::GaussianIdentity,
        };
        let s = corrupt_for_mean_estimation(&spec, &base, &mut r).unwrap();
        let out = kld_estimate(&s, alpha, &kld, &mut r).unwrap();
        assert!(out.len() <= kld.profile.list_cap(alpha));
        nearest(&out, &vec![0.0; d]) <= kld.profile.f(alpha)
    });
    assert!(ok >= 10, "{ok}/20");
}
