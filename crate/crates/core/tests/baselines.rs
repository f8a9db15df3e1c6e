mod common;

use common::*;
use ldml::baselines::robust_kmeans;
use ldml::linalg;
use ldml::rng::rng_stream;
use ldml::types::Label;

#[test]
fn median_of_means_resists_far_outliers() {
    let d = 10;
    for seed in 0..10 {
        let mut r = rng_stream(seed, "mom");
        let s = concat(&[gaussian(1800, &vec![0.0; d], &mut r), mass(200, &e1(d, 100.0), Label::Adversary)]);
        assert!((linalg::norm(&s.mean().unwrap()) - 10.0).abs() < 0.5);
        // most blocks must be outlier-free for the median to be clean
        let c = robust_kmeans(&s, 1, 1000, 1, 20, &mut r).unwrap();
        assert!(linalg::norm(&c[0]) <= 1.0, "seed {seed}: {}", linalg::norm(&c[0]));
    }
}
