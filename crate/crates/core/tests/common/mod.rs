//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use ldml::datagen::{ComponentKind, MixtureSpec};
use ldml::rng::Stream;
use ldml::types::{DataSet, Label, Vector};

pub fn vector(c: &[f64]) -> Vector {
    Vector::new(c.to_vec()).unwrap()
}

pub fn e1(d: usize, scale: f64) -> Vector {
    let mut v = vec![0.0; d];
    v[0] = scale;
    Vector::from(v)
}

/// `n` draws of `N(mean, I)`, labelled component 0.
pub fn gaussian(n: usize, mean: &[f64], rng: &mut Stream) -> DataSet {
    let d = mean.len();
    let mut coords = Vec::with_capacity(n * d);
    for _ in 0..n {
        coords.extend(mean.iter().map(|m| m + rng.normal()));
    }
    DataSet::new(d, coords, Some(vec![Label::Component(0); n])).unwrap()
}

/// `n` copies of `point`, labelled `label`.
pub fn mass(n: usize, point: &[f64], label: Label) -> DataSet {
    DataSet::new(point.len(), point.repeat(n), Some(vec![label; n])).unwrap()
}

pub fn concat(parts: &[DataSet]) -> DataSet {
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        out.append(p).unwrap();
    }
    out
}

pub fn gaussian_spec(means: Vec<Vector>, weights: &[f64], eps: f64) -> MixtureSpec {
    MixtureSpec::normalized(means, weights, eps, ComponentKind::GaussianIdentity).unwrap()
}

/// Indices of points carrying `label`.
pub fn indices_of(s: &DataSet, label: Label) -> Vec<usize> {
    s.labels()
        .unwrap()
        .iter()
        .enumerate()
        .filter(|(_, l)| **l == label)
        .map(|(i, _)| i)
        .collect()
}

/// Number of seeds in `0..seeds` for which `ok` holds.
pub fn successes(seeds: u64, mut ok: impl FnMut(u64) -> bool) -> u64 {
    (0..seeds).filter(|&s| ok(s)).count() as u64
}
