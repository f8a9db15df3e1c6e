mod common;

use common::*;
use ldml::format::{read_dataset, write_dataset};
use ldml::inner::{beta, improve_with_rme, list_filter_state};
use ldml::learners::{kld_estimate, rme_filter, KldConfig, LearnerProfile, RmeConfig, RobustMean};
use ldml::linalg;
use ldml::metrics::worst_error;
use ldml::outer::{shells, OuterConfig, SlabDistances};
use ldml::rng::{rng_stream, Stream};
use ldml::tail::{psi, relative_weight};
use ldml::types::{AlgoConfig, DataSet, Hypothesis, HypothesisList, Label, Vector};
use proptest::prelude::*;

fn even_t() -> impl Strategy<Value = u32> {
    (1u32..=10).prop_map(|k| 2 * k)
}

fn points(n: usize, d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-20.0f64..20.0, n * d)
}

/// A random data set: a few clumps plus uniform scatter.
fn clumpy(seed: u64, d: usize) -> DataSet {
    let mut r = rng_stream(seed, "clumpy");
    let k = 1 + r.index(4);
    let mut parts = Vec::new();
    for _ in 0..k {
        let c: Vec<f64> = (0..d).map(|_| r.uniform_range(-30.0, 30.0)).collect();
        parts.push(gaussian(50 + r.index(150), &c, &mut r));
    }
    let scatter: Vec<f64> = (0..40 * d).map(|_| r.uniform_range(-40.0, 40.0)).collect();
    parts.push(DataSet::new(d, scatter, Some(vec![Label::Adversary; 40])).unwrap());
    concat(&parts)
}

fn random_hypotheses(seed: u64, s: &DataSet, count: usize) -> HypothesisList {
    let mut r = rng_stream(seed, "hyps");
    (0..count)
        .map(|_| {
            let base = s.point(r.index(s.len()));
            let mean: Vec<f64> = base.iter().map(|x| x + r.normal()).collect();
            let alpha = (1 + r.index(33)) as f64 / 100.0;
            Hypothesis::new(Vector::from(mean), alpha).unwrap()
        })
        .collect()
}

/// Returns a random point within `radius` of the origin on every call.
struct Wander(f64);

impl RobustMean for Wander {
    fn eps_rme(&self) -> f64 {
        0.05
    }

    fn estimate(&self, s: &DataSet, _: f64, rng: &mut Stream) -> ldml::Result<Vector> {
        let u = rng.unit_vector(s.dim());
        let len = self.0 * rng.uniform();
        Ok(Vector::from(u.iter().map(|x| x * len).collect::<Vec<_>>()))
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_non_increasing(t in even_t(), a in 1e-6f64..1.0, b in 1e-6f64..1.0) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(psi(t, lo).unwrap() >= psi(t, hi).unwrap() - 1e-12);
    }

    #[test]
    fn relative_weight_in_unit_interval_and_monotone(
        w_low in 0.001f64..0.2,
        extra in 0.0f64..0.3,
        eps in 0.0f64..0.4,
        bump in 0.001f64..0.05,
    ) {
        let w = w_low + extra;
        let r = relative_weight(w, eps, w_low).unwrap();
        prop_assert!(r > 0.0 && r < 1.0);
        if w + bump + eps <= 1.0 {
            prop_assert!(relative_weight(w + bump, eps, w_low).unwrap() > r);
        }
        if w + eps + bump <= 1.0 {
            prop_assert!(relative_weight(w, eps + bump, w_low).unwrap() < r);
        }
    }

    #[test]
    fn worst_error_ignores_order_and_never_grows(
        truth in points(3, 2),
        list in points(5, 2),
        extra in points(2, 2),
        rot in 0usize..5,
    ) {
        let means: Vec<Vector> = truth.chunks(2).map(|c| vector(c)).collect();
        let to_list = |v: &[f64]| -> HypothesisList {
            v.chunks(2).map(|c| Hypothesis::new(vector(c), 0.5).unwrap()).collect()
        };
        let base = to_list(&list);
        let mut rotated = base.items.clone();
        rotated.rotate_left(rot);
        let a = worst_error(&means, &base).unwrap();
        let b = worst_error(&means, &HypothesisList::new(rotated)).unwrap();
        prop_assert_eq!(a.worst_error, b.worst_error);
        let mut longer = base.clone();
        longer.extend(to_list(&extra));
        prop_assert!(worst_error(&means, &longer).unwrap().worst_error <= a.worst_error);
        prop_assert_eq!(a.worst_error, a.per_cluster_error.iter().copied().fold(0.0, f64::max));
    }

    #[test]
    fn list_filter_invariants(seed in 0u64..10_000, count in 0usize..25, c_beta in 0.05f64..1.0) {
        let s = clumpy(seed, 3);
        let m = random_hypotheses(seed, &s, count);
        let cfg = AlgoConfig { c_beta, ..AlgoConfig::default() };
        let profile = LearnerProfile { c_f: 0.2, ..LearnerProfile::default() };
        let state = list_filter_state(&s, &m, &cfg, &profile).unwrap();
        let n = s.len() as f64;
        let hs = &state.surviving.items;
        for (i, h) in hs.iter().enumerate() {
            prop_assert!(state.support_sets[i].len() as f64 >= 0.9 * h.alpha_hat * n);
            for j in 0..i {
                let b = beta(h.alpha_hat, &cfg, &profile).unwrap();
                prop_assert!(h.mean.distance(&hs[j].mean) > 4.0 * b);
                let overlap = state.support_sets[i].iter().filter(|x| state.support_sets[j].binary_search(x).is_ok()).count();
                prop_assert_eq!(overlap, 0);
            }
        }
    }

    #[test]
    fn improve_moves_at_most_three_tau(seed in 0u64..10_000, tau in 0.2f64..20.0, wander in 0.0f64..50.0) {
        let s = gaussian(30, &[0.0; 3], &mut rng_stream(seed, "pts"));
        let start = Vector::zeros(3);
        let out = improve_with_rme(&s, &start, tau, &Wander(wander), &LearnerProfile::default(), 0.1, &mut rng_stream(seed, "w")).unwrap();
        prop_assert!(linalg::norm(&out) <= 3.0 * tau + 1e-9);
    }

    #[test]
    fn inner_shell_inside_outer_shell(seed in 0u64..10_000, count in 1usize..8, radius in 0.1f64..10.0) {
        let s = clumpy(seed, 4);
        let m = random_hypotheses(seed, &s, count);
        let means: Vec<&[f64]> = m.means().map(|v| v.as_slice()).collect();
        let dist = SlabDistances::new(&s, &means);
        let oc = OuterConfig { gamma: radius / 2.0, gamma_prime: radius / 2.0, floor: 0.0 };
        let alive: Vec<bool> = (0..s.len()).map(|i| (i + seed as usize) % 5 != 0).collect();
        for i in 0..m.len() {
            let (s1, s2) = shells(i, &dist, &alive, &oc);
            prop_assert!(s1.iter().all(|x| s2.binary_search(x).is_ok()));
        }
    }

    #[test]
    fn kld_output_is_capped_and_inside_the_data(seed in 0u64..10_000, alpha in 0.05f64..1.0) {
        let s = clumpy(seed, 3);
        let cfg = KldConfig::default();
        let out = kld_estimate(&s, alpha, &cfg, &mut rng_stream(seed, "kld")).unwrap();
        prop_assert!(out.len() <= cfg.profile.list_cap(alpha).min(s.len()));
        let mut r = rng_stream(seed, "dirs");
        for h in out.iter() {
            prop_assert_eq!(h.alpha_hat, alpha);
            for _ in 0..8 {
                // a point of the convex hull projects inside the data's range
                let v = r.unit_vector(3);
                let p = linalg::dot(&h.mean, &v);
                let (lo, hi) = s.points().map(|x| linalg::dot(x, &v)).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)));
                prop_assert!(p >= lo - 1e-9 && p <= hi + 1e-9);
            }
        }
    }

    #[test]
    fn rme_removes_at_most_twice_the_contamination(seed in 0u64..10_000, alpha in 0.95f64..=1.0) {
        let s = clumpy(seed, 3);
        let kept = rme_filter(&s, alpha, &RmeConfig::default(), &mut rng_stream(seed, "rme")).unwrap();
        prop_assert!((s.len() - kept.len()) as f64 <= 2.0 * (1.0 - alpha) * s.len() as f64 + 1e-9);
    }

    #[test]
    fn ldml_v1_round_trip(
        n in 1usize..20,
        d in 1usize..5,
        labelled in any::<bool>(),
        raw in prop::collection::vec(prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO, 100),
    ) {
        let coords: Vec<f64> = (0..n * d).map(|i| raw[i % raw.len()]).collect();
        let labels = labelled.then(|| (0..n).map(|i| if i % 3 == 0 { Label::Adversary } else { Label::Component(i as u32) }).collect());
        let ds = DataSet::new(d, coords, labels).unwrap();
        let mut buf = Vec::new();
        write_dataset(&ds, &mut buf).unwrap();
        let back = read_dataset(buf.as_slice()).unwrap();
        let bits = |x: &DataSet| x.coords().iter().map(|c| c.to_bits()).collect::<Vec<_>>();
        prop_assert_eq!(bits(&back), bits(&ds));
        prop_assert_eq!(back.labels(), ds.labels());
    }
}
