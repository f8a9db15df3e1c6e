mod common;

use common::*;
use ldml::learners::{boost, KldConfig, Learners, RmeConfig};
use ldml::linalg;
use ldml::pipeline::{full_algorithm, vanilla_ldme};
use ldml::rng::rng_stream;
use ldml::types::AlgoConfig;

#[test]
fn single_clean_cluster() {
    let kld = KldConfig::default();
    let rme = RmeConfig::default();
    let learners = Learners::new(&kld, &rme);
    let cfg = AlgoConfig::default();
    let ok = successes(100, |seed| {
        let mut r = rng_stream(seed, "pipe-one");
        let s = gaussian(5000, &[0.0; 10], &mut r);
        let out = full_algorithm(&s, learners, &cfg, &mut r).unwrap();
        out.list.len() == 1 && linalg::norm(&out.list.items[0].mean) <= 0.3
    });
    assert!(ok >= 90, "{ok}/100");
}

#[test]
fn two_far_clusters() {
    let kld = KldConfig::default();
    let rme = RmeConfig::default();
    let learners = Learners::new(&kld, &rme);
    let cfg = AlgoConfig::default();
    let d = 10;
    let far = e1(d, 5000.0);
    let ok = successes(100, |seed| {
        let mut r = rng_stream(seed, "pipe-two");
        let a = gaussian(2500, &vec![0.0; d], &mut r);
        let b = gaussian(2500, &far, &mut r);
        let (ma, mb) = (a.mean().unwrap(), b.mean().unwrap());
        let s = concat(&[a, b]);
        let out = full_algorithm(&s, learners, &cfg, &mut r).unwrap();
        let slack = 0.2;
        let near = |m: &[f64]| out.list.means().map(|h| h.distance(m)).fold(f64::INFINITY, f64::min);
        out.list.len() == 2 && near(&ma) <= kld.profile.f(0.5) + slack && near(&mb) <= kld.profile.f(0.5) + slack
    });
    assert!(ok >= 85, "{ok}/100");
}

#[test]
fn provenance_matches_concatenation() {
    let kld = KldConfig::default();
    let rme = RmeConfig::default();
    let learners = Learners::new(&kld, &rme);
    let cfg = AlgoConfig {
        c_beta: 0.4,
        c_gamma: 0.4,
        c_gammaprime_psi: 0.4,
        c_gammaprime_f: 0.4,
        use_rme: false,
        ..AlgoConfig::default()
    };
    let mut r = rng_stream(4, "prov");
    let s = concat(&[gaussian(700, &[0.0; 5], &mut r), gaussian(300, &e1(5, 60.0), &mut r)]);
    let out = full_algorithm(&s, learners, &cfg, &mut r).unwrap();
    assert_eq!(out.provenance.len(), out.list.len());
    assert!(out.provenance.windows(2).all(|w| w[0] <= w[1]));
    assert!(out.provenance.iter().all(|&k| k < out.candidates.sets.len()));
}

#[test]
fn full_algorithm_is_deterministic() {
    let kld = KldConfig::default();
    let rme = RmeConfig::default();
    let learners = Learners::new(&kld, &rme);
    let cfg = AlgoConfig::default();
    let s = concat(&[
        gaussian(600, &[0.0; 6], &mut rng_stream(1, "a")),
        gaussian(400, &e1(6, 40.0), &mut rng_stream(1, "b")),
    ]);
    let a = full_algorithm(&s, learners, &cfg, &mut rng_stream(9, "run")).unwrap();
    let b = full_algorithm(&s, learners, &cfg, &mut rng_stream(9, "run")).unwrap();
    assert_eq!(a.list, b.list);
    assert_eq!(a.candidates, b.candidates);
}

#[test]
fn too_few_samples_is_an_error() {
    let kld = KldConfig::default();
    let rme = RmeConfig::default();
    let s = gaussian(15, &[0.0; 2], &mut rng_stream(0, "few"));
    let cfg = AlgoConfig::default();
    assert!(full_algorithm(&s, Learners::new(&kld, &rme), &cfg, &mut rng_stream(0, "x")).is_err());
}

#[test]
fn vanilla_is_one_capped_decoder_call() {
    let kld = KldConfig::default();
    let rme = RmeConfig::default();
    let learners = Learners::new(&kld, &rme);
    let cfg = AlgoConfig::default();
    let mut r = rng_stream(2, "van");
    let parts: Vec<_> = (0..25).map(|i| gaussian(100, &e1(4, 25.0 * i as f64), &mut r)).collect();
    let s = concat(&parts);
    let v = vanilla_ldme(&s, learners, &cfg, &mut rng_stream(3, "v")).unwrap();
    assert!(v.len() <= kld.profile.list_cap(cfg.w_low));
    let direct = boost(&kld, 1, &s, cfg.w_low, &mut rng_stream(3, "v").fork("vanilla")).unwrap();
    assert_eq!(v, direct);
}
