//! Browser demo: draw a two-dimensional attacked mixture and compare the
//! lists produced by the full algorithm and by the baselines.
//!
//! [`Scene`] is plain Rust and is what the tests exercise; the
//! `wasm_bindgen` wrappers only convert arguments and errors.

use ldml::baselines::kmeans;
use ldml::datagen::{generate, random_separated_means, AttackKind, AttackSpec, ComponentKind, MixtureSpec};
use ldml::learners::{KldConfig, Learners, RmeConfig};
use ldml::metrics::worst_error;
use ldml::pipeline::{full_algorithm, vanilla_ldme};
use ldml::rng::rng_stream;
use ldml::{AlgoConfig, DataSet, HypothesisList, Label, LdmlError};
use wasm_bindgen::prelude::*;

const WEIGHTS: [f64; 3] = [0.4, 0.3, 0.1];

/// Constants tuned for small, well-separated planar scenes.
fn demo_config(w_low: f64) -> (AlgoConfig, KldConfig) {
    let cfg = AlgoConfig {
        c_beta: 0.4,
        c_tau_psi: 0.4,
        c_tau_f: 0.4,
        c_gamma: 0.4,
        c_gammaprime_psi: 0.4,
        c_gammaprime_f: 0.4,
        use_rme: false,
        ..AlgoConfig::default().with_w_low(w_low)
    };
    let mut kld = KldConfig::default();
    kld.profile.c_f = 0.2;
    (cfg, kld)
}

/// A sampled mixture plus adversarial points in the plane.
#[wasm_bindgen]
pub struct Scene {
    mixture: MixtureSpec,
    data: DataSet,
}

/// Hypotheses from one run and their scores against the true means.
#[wasm_bindgen]
pub struct Outcome {
    means: Vec<f64>,
    worst_error: f64,
    list_size: usize,
}

#[wasm_bindgen]
impl Outcome {
    /// Hypothesis means as `x0, y0, x1, y1, ...`.
    pub fn means(&self) -> Vec<f64> {
        self.means.clone()
    }

    pub fn worst_error(&self) -> f64 {
        self.worst_error
    }

    pub fn list_size(&self) -> usize {
        self.list_size
    }
}

impl Scene {
    pub fn new(seed: u64, attack: &str, eps: f64, n: usize) -> ldml::Result<Self> {
        let kind = AttackKind::parse(attack).ok_or_else(|| LdmlError::Domain(format!("unknown attack `{attack}`")))?;
        let mut rng = rng_stream(seed, "demo");
        let means = random_separated_means(3, 2, 40.0, &mut rng)?;
        let mixture = MixtureSpec::normalized(means, &WEIGHTS, eps, ComponentKind::GaussianIdentity)?;
        let data = generate(&mixture, &AttackSpec::of_kind(kind), n, &mut rng)?;
        Ok(Self { mixture, data })
    }

    /// Runs `ours`, `vanilla_ldme` or `kmeans` (with `k = 3`).
    pub fn solve(&self, algorithm: &str, w_low: f64, seed: u64) -> ldml::Result<Outcome> {
        let (cfg, kld) = demo_config(w_low);
        let rme = RmeConfig::default();
        let learners = Learners::new(&kld, &rme);
        let mut rng = rng_stream(seed, "demo-run");
        let list = match algorithm {
            "ours" => full_algorithm(&self.data, learners, &cfg, &mut rng)?.list,
            "vanilla_ldme" => vanilla_ldme(&self.data, learners, &cfg, &mut rng)?,
            "kmeans" => {
                let centers = kmeans(&self.data, 3, 3, 100, &mut rng)?;
                HypothesisList::new(
                    centers
                        .into_iter()
                        .map(|c| ldml::Hypothesis::new(c, 1.0 / 3.0))
                        .collect::<ldml::Result<_>>()?,
                )
            }
            other => return Err(LdmlError::Domain(format!("unknown algorithm `{other}`"))),
        };
        let (worst_error, list_size) = match worst_error(&self.mixture.means, &list) {
            Ok(m) => (m.worst_error, m.list_size),
            Err(LdmlError::EmptyList) => (f64::INFINITY, 0),
            Err(e) => return Err(e),
        };
        Ok(Outcome {
            means: list.means().flat_map(|m| m.as_slice().to_vec()).collect(),
            worst_error,
            list_size,
        })
    }
}

#[wasm_bindgen]
impl Scene {
    /// Samples a scene; `attack` is one of `adversarial_clusters`,
    /// `adversarial_line`, `gaussian_adversary`, `uniform_plus_cluster`.
    #[wasm_bindgen(constructor)]
    pub fn generate(seed: u32, attack: &str, eps: f64, n: u32) -> Result<Scene, JsError> {
        Scene::new(u64::from(seed), attack, eps, n as usize).map_err(|e| JsError::new(&e.to_string()))
    }

    /// Point coordinates as `x0, y0, x1, y1, ...`.
    pub fn points(&self) -> Vec<f64> {
        self.data.coords().to_vec()
    }

    /// Component index per point, `-1` for adversarial points.
    pub fn labels(&self) -> Vec<i32> {
        self.data
            .labels()
            .map(|l| {
                l.iter()
                    .map(|x| match x {
                        Label::Component(c) => *c as i32,
                        Label::Adversary => -1,
                    })
                    .collect()
            })
            .unwrap_or_default()
    }

    /// True component means as `x0, y0, x1, y1, ...`.
    pub fn true_means(&self) -> Vec<f64> {
        self.mixture.means.iter().flat_map(|m| m.as_slice().to_vec()).collect()
    }

    pub fn run(&self, algorithm: &str, w_low: f64, seed: u32) -> Result<Outcome, JsError> {
        self.solve(algorithm, w_low, u64::from(seed)).map_err(|e| JsError::new(&e.to_string()))
    }
}
