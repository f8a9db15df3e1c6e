mod common;

use common::*;
use ldml::baselines::kmeans;
use ldml::datagen::*;
use ldml::linalg;
use ldml::rng::rng_stream;
use ldml::tail::psi;
use ldml::types::{Label, Vector};

const SEVEN_WEIGHTS: [f64; 7] = [0.3, 0.2, 0.16, 0.1, 0.06, 0.04, 0.02];

#[test]
fn seven_component_means_are_separated() {
    let mut r = rng_stream(3, "means");
    let means = random_separated_means(7, 100, 40.0, &mut r).unwrap();
    for i in 0..7 {
        for j in 0..i {
            assert!(means[i].distance(&means[j]) >= 40.0);
        }
    }
}

#[test]
fn gaussian_sample_mean_concentrates() {
    let d = 4;
    let spec = gaussian_spec(vec![Vector::zeros(d)], &[1.0], 0.0);
    let s = sample_mixture(&spec, 100_000, &mut rng_stream(1, "mix")).unwrap();
    let mean = s.mean().unwrap();
    assert!(linalg::norm(&mean) <= 0.02 * (d as f64).sqrt());
}

#[test]
fn attack_appends_and_keeps_inliers() {
    let mut r = rng_stream(5, "attack");
    let means = random_separated_means(3, 10, 40.0, &mut r).unwrap();
    let spec = gaussian_spec(means, &[0.4, 0.3, 0.1], 0.2);
    let inliers = sample_mixture(&spec, 4000, &mut r).unwrap();
    for kind in [
        AttackKind::AdversarialClusters,
        AttackKind::AdversarialLine,
        AttackKind::GaussianAdversary,
        AttackKind::UniformPlusCluster,
    ] {
        let out = apply_attack(&inliers, &spec, &AttackSpec::of_kind(kind), 0.2, &mut r).unwrap();
        let n_total = out.len();
        let adv = indices_of(&out, Label::Adversary).len();
        assert_eq!(adv, ceil_tol(0.2 * n_total as f64), "{}", kind.name());
        assert_eq!(&out.coords()[..inliers.coords().len()], inliers.coords());
        assert_eq!(&out.labels().unwrap()[..inliers.len()], inliers.labels().unwrap());
    }
}

#[test]
fn adversarial_clusters_sit_near_the_smallest_cluster() {
    let mut r = rng_stream(11, "seven");
    let means = random_separated_means(7, 100, 40.0, &mut r).unwrap();
    let spec = gaussian_spec(means, &SEVEN_WEIGHTS, 0.12);
    let s = generate(&spec, &AttackSpec::of_kind(AttackKind::AdversarialClusters), 10_000, &mut r).unwrap();
    let adv = s.subset(&indices_of(&s, Label::Adversary));
    assert_eq!(adv.len(), 1200);
    let mu_s = &spec.means[spec.smallest_component()];
    let centers = kmeans(&adv, 3, 3, 50, &mut r).unwrap();
    for c in centers {
        // |v_c + v_j| <= 20, plus the sampling error of a group mean
        assert!(c.distance(mu_s) <= 20.0 + 1.5, "group at {}", c.distance(mu_s));
    }
}

#[test]
fn adversarial_line_groups_are_collinear() {
    let d = 100;
    let mut r = rng_stream(2, "line");
    let means = random_separated_means(2, d, 40.0, &mut r).unwrap();
    let spec = gaussian_spec(means, &[0.6, 0.2], 0.2);
    // 200 points in the attacked cluster give groups of 400
    let mut inliers = sample_mixture(&gaussian_spec(vec![spec.means[0].clone()], &[1.0], 0.0), 800, &mut r).unwrap();
    let small = sample_mixture(&gaussian_spec(vec![spec.means[1].clone()], &[1.0], 0.0), 200, &mut r).unwrap();
    let small = small.with_labels(Some(vec![Label::Component(1); 200])).unwrap();
    inliers.append(&small).unwrap();
    let attack = AttackSpec::of_kind(AttackKind::AdversarialLine);
    let s = apply_attack_budget(&inliers, &spec, &attack, 1200, &mut r).unwrap();
    let adv = s.subset(&indices_of(&s, Label::Adversary));
    let mu_s = spec.means[1].as_slice();
    let mut groups: Vec<Vec<f64>> = (0..3)
        .map(|g| {
            let idx: Vec<usize> = (g * 400..(g + 1) * 400).collect();
            linalg::sub(&linalg::mean_of(adv.coords(), d, &idx), mu_s)
        })
        .collect();
    groups.sort_by(|a, b| linalg::norm(a).total_cmp(&linalg::norm(b)));
    let dir: Vec<f64> = groups[2].iter().map(|x| x / linalg::norm(&groups[2])).collect();
    for (j, g) in groups.iter().enumerate() {
        let along = linalg::dot(g, &dir);
        let resid: Vec<f64> = g.iter().zip(&dir).map(|(x, v)| x - along * v).collect();
        assert!((along - 10.0 * (j + 1) as f64).abs() <= 1.0, "group {j} at {along}");
        // sqrt(d / n_group) = 0.5
        assert!(linalg::norm(&resid) <= 0.5 + 0.25, "residual {}", linalg::norm(&resid));
    }
}

#[test]
fn directional_concentration_of_gaussian_clusters() {
    let d = 10;
    let s = gaussian(10_000, &vec![0.0; d], &mut rng_stream(4, "conc"));
    let mut r = rng_stream(4, "dirs");
    for alpha in [0.1, 0.01] {
        let radius = 10.0 * psi(16, alpha).unwrap();
        for _ in 0..100 {
            let v = r.unit_vector(d);
            let far = s.points().filter(|x| linalg::dot(x, &v).abs() > radius).count();
            assert!(far as f64 <= 2.0 * alpha * s.len() as f64);
        }
    }
}

#[test]
fn student_t_rescaled_variance() {
    let spec = MixtureSpec::normalized(vec![Vector::zeros(2)], &[1.0], 0.0, ComponentKind::StudentT { df: 5.0 }).unwrap();
    let s = sample_mixture(&spec, 100_000, &mut rng_stream(8, "t")).unwrap();
    for c in 0..2 {
        let var = s.points().map(|x| x[c] * x[c]).sum::<f64>() / s.len() as f64;
        assert!((var - 1.0).abs() <= 0.05, "variance {var}");
    }
}

#[test]
fn corruption_removes_then_pads() {
    let spec = CorruptionSpec {
        alpha: 0.3,
        w_low: 0.1,
        n: 100,
        adversary: AdversaryModel::PointMasses(vec![e1(3, 50.0)]),
        removal: RemovalRule::Random,
    };
    let base = InlierModel {
        mean: Vector::zeros(3),
        kind: ComponentKind::GaussianIdentity,
    };
    let s = corrupt_for_mean_estimation(&spec, &base, &mut rng_stream(0, "c")).unwrap();
    assert_eq!(s.len(), 100);
    assert_eq!(indices_of(&s, Label::Component(0)).len(), 30);
}
