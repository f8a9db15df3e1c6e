//! Experiment specifications and the seed-sweep runner.

use std::fmt;
use std::time::Instant;

use ldml::baselines::{dbscan_cached, kmeans, robust_kmeans, PairwiseDistances};
use ldml::datagen::{generate, random_separated_means, AttackKind, AttackSpec, ComponentKind, MixtureSpec, Target};
use ldml::learners::{KldConfig, Learners, RmeConfig};
use ldml::metrics::worst_error;
use ldml::pipeline::{full_algorithm, vanilla_ldme};
use ldml::rng::{rng_stream, Stream};
use ldml::{AlgoConfig, DataSet, Hypothesis, HypothesisList, LdmlError, Vector};
use rayon::prelude::*;

use crate::config::{RawConfig, Reader};
use crate::error::{BenchError, Result};
use crate::report::{ExperimentReport, Row};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Ours,
    VanillaLdme,
    KMeans,
    RobustKMeans,
    Dbscan,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Ours,
        Algorithm::VanillaLdme,
        Algorithm::KMeans,
        Algorithm::RobustKMeans,
        Algorithm::Dbscan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ours => "ours",
            Algorithm::VanillaLdme => "vanilla_ldme",
            Algorithm::KMeans => "kmeans",
            Algorithm::RobustKMeans => "robust_kmeans",
            Algorithm::Dbscan => "dbscan",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == s)
    }
}

/// One hyper-parameter setting of one algorithm.
#[derive(Debug, Clone, PartialEq)]
pub enum Params {
    Ours { w_low: f64 },
    VanillaLdme { w_low: f64, max_list: Option<usize> },
    KMeans { k: usize },
    RobustKMeans { k: usize, n_blocks: usize },
    Dbscan { eps_nbr: f64, min_pts: usize },
}

impl Params {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            Params::Ours { .. } => Algorithm::Ours,
            Params::VanillaLdme { .. } => Algorithm::VanillaLdme,
            Params::KMeans { .. } => Algorithm::KMeans,
            Params::RobustKMeans { .. } => Algorithm::RobustKMeans,
            Params::Dbscan { .. } => Algorithm::Dbscan,
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Params::Ours { w_low } => write!(f, "w_low={w_low}"),
            Params::VanillaLdme { w_low, max_list } => match max_list {
                Some(l) => write!(f, "w_low={w_low} max_list={l}"),
                None => write!(f, "w_low={w_low} max_list=none"),
            },
            Params::KMeans { k } => write!(f, "k={k}"),
            Params::RobustKMeans { k, n_blocks } => write!(f, "k={k} n_blocks={n_blocks}"),
            Params::Dbscan { eps_nbr, min_pts } => write!(f, "eps_nbr={eps_nbr} min_pts={min_pts}"),
        }
    }
}

/// How the inlier mixture is drawn for each dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub k: usize,
    pub d: usize,
    /// Relative inlier weights; rescaled to sum to `1 - eps`.
    pub weights: Vec<f64>,
    pub eps: f64,
    /// Minimum pairwise distance of the random means.
    pub separation: f64,
    pub component: ComponentKind,
}

impl Scenario {
    pub fn mixture(&self, rng: &mut Stream) -> Result<MixtureSpec> {
        let means = random_separated_means(self.k, self.d, self.separation, rng)?;
        Ok(MixtureSpec::normalized(means, &self.weights, self.eps, self.component)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricMode {
    /// Errors over runs whose list has at most this many entries.
    FixListSize(usize),
    /// Smallest list size whose median error is at most this threshold.
    FixError(f64),
}

impl fmt::Display for MetricMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricMode::FixListSize(l) => write!(f, "list_size:{l}"),
            MetricMode::FixError(e) => write!(f, "error:{e}"),
        }
    }
}

impl std::str::FromStr for MetricMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bad = || format!("metric mode `{s}` is not list_size:<L> or error:<x>");
        match s.split_once(':') {
            Some(("list_size", l)) => l.trim().parse().map(MetricMode::FixListSize).map_err(|_| bad()),
            Some(("error", e)) => match e.trim().parse::<f64>() {
                Ok(x) if x >= 0.0 => Ok(MetricMode::FixError(x)),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetMode {
    /// A fresh dataset for every seed, shared by all algorithms.
    PerSeed,
    /// One dataset per attack model drawn from `data_seed`; seeds vary the
    /// algorithms only.
    Fixed { data_seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub name: String,
    pub scenario: Scenario,
    pub attacks: Vec<AttackSpec>,
    pub n: usize,
    /// Every hyper-parameter setting to run, grouped by algorithm.
    pub grid: Vec<Params>,
    pub seeds: u64,
    pub seed_base: u64,
    pub datasets: DatasetMode,
    pub metric_mode: MetricMode,
    /// Constants shared by `ours` and `vanilla_ldme`; `w_low` comes from the grid.
    pub algo: AlgoConfig,
    pub kld: KldConfig,
    pub rme: RmeConfig,
    pub kmeans_n_init: usize,
    pub kmeans_max_iter: usize,
    /// Record wall-clock runtimes; off by default so CSVs are byte-stable.
    pub timing: bool,
}

fn parse_component(s: &str) -> Result<ComponentKind> {
    if s == "gaussian" {
        return Ok(ComponentKind::GaussianIdentity);
    }
    if let Some(df) = s.strip_prefix("student_t:") {
        if let Ok(df) = df.parse() {
            return Ok(ComponentKind::StudentT { df });
        }
    }
    Err(BenchError::Config(format!("component `{s}` is not gaussian or student_t:<df>")))
}

fn read_attack(r: &mut Reader<'_>, kind: AttackKind) -> Result<AttackSpec> {
    let base = AttackSpec::of_kind(kind);
    let target = match r.str_or("attack.target", "smallest").as_str() {
        "smallest" => Target::SmallestCluster,
        i => Target::Index(
            i.parse()
                .map_err(|_| BenchError::Config(format!("attack.target `{i}` is not `smallest` or an index")))?,
        ),
    };
    let spec = AttackSpec {
        kind,
        offset_norm: r.f64_or("attack.offset_norm", base.offset_norm)?,
        n_fake: r.usize_or("attack.n_fake", base.n_fake)?,
        scale_along_line: r.f64_or("attack.scale_along_line", base.scale_along_line)?,
        target,
        extra_targets: r.usize_list_or("attack.extra_targets", &[])?,
    };
    spec.validate()?;
    Ok(spec)
}

impl ExperimentSpec {
    /// Builds and validates a spec; unknown keys are an error.
    pub fn from_config(raw: &RawConfig) -> Result<Self> {
        let mut r = raw.reader();
        let name = r.str_or("name", "experiment");
        let k: usize = r.required("k")?;
        let d: usize = r.required("d")?;
        let weights = r.f64_list_or("weights", &vec![1.0; k])?;
        let scenario = Scenario {
            k,
            d,
            weights,
            eps: r.f64_or("eps", 0.0)?,
            separation: r.f64_or("separation", 40.0)?,
            component: parse_component(&r.str_or("component", "gaussian"))?,
        };
        let n: usize = r.required("n")?;

        let mut attacks = Vec::new();
        let names = r.items("attacks").map(|(_, v)| v).unwrap_or_else(|| vec!["none".into()]);
        for a in &names {
            let kind = AttackKind::parse(a).ok_or_else(|| BenchError::Config(format!("unknown attack `{a}`")))?;
            attacks.push(kind);
        }
        let attacks = attacks
            .into_iter()
            .map(|kind| read_attack(&mut r, kind))
            .collect::<Result<Vec<_>>>()?;

        let seeds = r.u64_or("seeds", 1)?;
        let seed_base = r.u64_or("seed_base", 0)?;
        let data_seed = r.u64_or("data_seed", 0)?;
        let datasets = match r.str_or("dataset", "per_seed").as_str() {
            "per_seed" => DatasetMode::PerSeed,
            "fixed" => DatasetMode::Fixed { data_seed },
            other => return Err(BenchError::Config(format!("dataset `{other}` is not per_seed or fixed"))),
        };
        let metric_mode = r
            .str_or("metric", "list_size:10")
            .parse::<MetricMode>()
            .map_err(BenchError::Config)?;
        let timing = r.bool_or("timing", false)?;

        let defaults = AlgoConfig::default();
        let t = r.u64_or("t", u64::from(defaults.t))? as u32;
        let algo = AlgoConfig {
            w_low: defaults.w_low,
            t,
            c_beta: r.f64_or("c_beta", defaults.c_beta)?,
            c_tau_psi: r.f64_or("c_tau_psi", defaults.c_tau_psi)?,
            c_tau_f: r.f64_or("c_tau_f", defaults.c_tau_f)?,
            c_gamma: r.f64_or("c_gamma", defaults.c_gamma)?,
            c_gammaprime_psi: r.f64_or("c_gammaprime_psi", defaults.c_gammaprime_psi)?,
            c_gammaprime_f: r.f64_or("c_gammaprime_f", defaults.c_gammaprime_f)?,
            list_filter_frac: r.f64_or("list_filter_frac", defaults.list_filter_frac)?,
            prune_floor_mult: r.f64_or("prune_floor_mult", defaults.prune_floor_mult)?,
            boost_rounds: r.usize_or("boost_rounds", defaults.boost_rounds)?,
            use_rme: r.bool_or("use_rme", defaults.use_rme)?,
            seed: 0,
        };

        let mut kld = KldConfig::default();
        let p = &mut kld.profile;
        p.t = t;
        p.c_f = r.f64_or("learner.c_f", p.c_f)?;
        p.c_g = r.f64_or("learner.c_g", p.c_g)?;
        p.eps_rme = r.f64_or("learner.eps_rme", p.eps_rme)?;
        p.c_list = r.f64_or("learner.c_list", p.c_list)?;
        p.list_cap_exponent = r.f64_or("learner.list_cap_exponent", p.list_cap_exponent)?;
        kld.n_directions = r.usize_or("kld.n_directions", kld.n_directions)?;
        kld.max_rounds = r.usize_or("kld.max_rounds", kld.max_rounds)?;
        kld.variance_threshold_mult = r.f64_or("kld.variance_threshold_mult", kld.variance_threshold_mult)?;
        kld.cluster_conc_threshold = r.f64_or("kld.cluster_conc_threshold", kld.cluster_conc_threshold)?;
        kld.window = r.f64_or("kld.window", kld.window)?;
        kld.margin_mult = r.f64_or("kld.margin_mult", kld.margin_mult)?;
        kld.power_iters = r.usize_or("kld.power_iters", kld.power_iters)?;
        kld.work_limit = r.f64_or("kld.work_limit", kld.work_limit)?;
        let mut rme = RmeConfig {
            profile: kld.profile.clone(),
            ..RmeConfig::default()
        };
        rme.c_threshold = r.f64_or("rme.c_threshold", rme.c_threshold)?;
        rme.sampling_slack = r.f64_or("rme.sampling_slack", rme.sampling_slack)?;
        rme.power_iters = r.usize_or("rme.power_iters", rme.power_iters)?;

        let algorithms = r
            .items("algorithms")
            .map(|(_, v)| v)
            .unwrap_or_else(|| vec!["ours".into(), "vanilla_ldme".into()]);
        let mut enabled = Vec::new();
        for a in &algorithms {
            let alg = Algorithm::parse(a).ok_or_else(|| BenchError::Config(format!("unknown algorithm `{a}`")))?;
            if enabled.contains(&alg) {
                return Err(BenchError::Config(format!("algorithm `{a}` listed twice")));
            }
            enabled.push(alg);
        }
        enabled.sort();

        let w_lows = r.f64_list_or("w_low", &[defaults.w_low])?;
        let mut grid = Vec::new();
        for &alg in &enabled {
            let before = grid.len();
            match alg {
                Algorithm::Ours => grid.extend(w_lows.iter().map(|&w_low| Params::Ours { w_low })),
                Algorithm::VanillaLdme => {
                    let lists = match r.items("vanilla_ldme.max_list") {
                        None => vec![None],
                        Some((_, items)) => items
                            .iter()
                            .map(|s| match s.as_str() {
                                "none" => Ok(None),
                                v => v.parse().map(Some).map_err(|_| {
                                    BenchError::Config(format!("vanilla_ldme.max_list `{v}` is not none or an integer"))
                                }),
                            })
                            .collect::<Result<Vec<_>>>()?,
                    };
                    for &w_low in &w_lows {
                        grid.extend(lists.iter().map(|&max_list| Params::VanillaLdme { w_low, max_list }));
                    }
                }
                Algorithm::KMeans => {
                    grid.extend(r.usize_list_or("kmeans.k", &[k])?.into_iter().map(|k| Params::KMeans { k }));
                }
                Algorithm::RobustKMeans => {
                    let ks = r.usize_list_or("robust_kmeans.k", &[k])?;
                    let blocks = r.usize_list_or("robust_kmeans.n_blocks", &[10])?;
                    for &k in &ks {
                        grid.extend(blocks.iter().map(|&n_blocks| Params::RobustKMeans { k, n_blocks }));
                    }
                }
                Algorithm::Dbscan => {
                    let radii = r.f64_list_or("dbscan.eps_nbr", &[1.0])?;
                    let pts = r.usize_list_or("dbscan.min_pts", &[10])?;
                    for &eps_nbr in &radii {
                        grid.extend(pts.iter().map(|&min_pts| Params::Dbscan { eps_nbr, min_pts }));
                    }
                }
            }
            if grid.len() == before {
                return Err(BenchError::Config(format!("empty hyper-parameter grid for `{}`", alg.name())));
            }
        }
        // grids of algorithms that are switched off are ignored
        for alg in Algorithm::ALL {
            if !enabled.contains(&alg) {
                r.skip_prefix(&format!("{}.", alg.name()));
            }
        }
        let kmeans_n_init = r.usize_or("kmeans.n_init", 3)?;
        let kmeans_max_iter = r.usize_or("kmeans.max_iter", 100)?;
        r.finish()?;

        let spec = Self {
            name,
            scenario,
            attacks,
            n,
            grid,
            seeds,
            seed_base,
            datasets,
            metric_mode,
            algo,
            kld,
            rme,
            kmeans_n_init,
            kmeans_max_iter,
            timing,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(BenchError::Config(m));
        let sc = &self.scenario;
        if sc.k == 0 || sc.d == 0 {
            return bad("k and d must be >= 1".into());
        }
        if sc.weights.len() != sc.k {
            return bad(format!("{} weights for k={}", sc.weights.len(), sc.k));
        }
        if !(0.0..1.0).contains(&sc.eps) {
            return bad(format!("eps={} outside [0, 1)", sc.eps));
        }
        if !(sc.separation >= 0.0) {
            return bad("separation must be >= 0".into());
        }
        if self.seeds == 0 {
            return bad("seeds must be >= 1".into());
        }
        if self.n == 0 {
            return bad("n must be >= 1".into());
        }
        if self.attacks.is_empty() || self.grid.is_empty() {
            return bad("need at least one attack and one algorithm".into());
        }
        for a in &self.attacks {
            for &t in a.extra_targets.iter().chain(match a.target {
                Target::Index(i) => Some(i),
                Target::SmallestCluster => None,
            }
            .iter())
            {
                if t >= sc.k {
                    return bad(format!("attack target {t} out of range for k={}", sc.k));
                }
            }
        }
        for p in &self.grid {
            match *p {
                Params::Ours { w_low } | Params::VanillaLdme { w_low, .. } => {
                    self.algo.clone().with_w_low(w_low).validate()?;
                    if matches!(p, Params::VanillaLdme { max_list: Some(0), .. }) {
                        return bad("vanilla_ldme.max_list must be >= 1".into());
                    }
                }
                Params::KMeans { k } | Params::RobustKMeans { k, .. } if k == 0 => return bad("k must be >= 1".into()),
                Params::RobustKMeans { n_blocks: 0, .. } => return bad("n_blocks must be >= 1".into()),
                Params::Dbscan { eps_nbr, min_pts } if !(eps_nbr > 0.0) || min_pts == 0 => {
                    return bad("dbscan needs eps_nbr > 0 and min_pts >= 1".into());
                }
                _ => {}
            }
        }
        self.kld.profile.validate()?;
        Ok(())
    }

    /// Total number of report rows.
    pub fn row_count(&self) -> usize {
        self.attacks.len() * self.grid.len() * self.seeds as usize
    }
}

/// A generated dataset together with the mixture it was drawn from.
#[derive(Debug, Clone)]
pub struct Instance {
    pub mixture: MixtureSpec,
    pub data: DataSet,
}

/// Draws the dataset for `(attack, seed)`: the mixture means, the inlier
/// sample and the attack all come from one stream.
pub fn make_instance(spec: &ExperimentSpec, attack: &AttackSpec, seed: u64) -> Result<Instance> {
    let mut rng = rng_stream(seed, &format!("data/{}", attack.kind.name()));
    let mixture = spec.scenario.mixture(&mut rng)?;
    let data = generate(&mixture, attack, spec.n, &mut rng)?;
    Ok(Instance { mixture, data })
}

/// Cluster centres as a list; each gets `alpha_hat = 1 / #centres`.
fn centers_to_list(centers: Vec<Vector>) -> Result<HypothesisList> {
    let a = 1.0 / centers.len().max(1) as f64;
    let items = centers
        .into_iter()
        .map(|c| Hypothesis::new(c, a))
        .collect::<ldml::Result<Vec<_>>>()?;
    Ok(HypothesisList::new(items))
}

/// The list an algorithm outputs for one setting.
pub fn run_algorithm(spec: &ExperimentSpec, params: &Params, data: &DataSet, rng: &mut Stream) -> Result<HypothesisList> {
    match *params {
        Params::Ours { w_low } => {
            let cfg = spec.algo.clone().with_w_low(w_low);
            let learners = Learners::new(&spec.kld, &spec.rme);
            Ok(full_algorithm(data, learners, &cfg, rng)?.list)
        }
        Params::VanillaLdme { w_low, max_list } => {
            let cfg = spec.algo.clone().with_w_low(w_low);
            let kld = KldConfig {
                max_list,
                ..spec.kld.clone()
            };
            Ok(vanilla_ldme(data, Learners::new(&kld, &spec.rme), &cfg, rng)?)
        }
        Params::KMeans { k } => centers_to_list(kmeans(data, k, spec.kmeans_n_init, spec.kmeans_max_iter, rng)?),
        Params::RobustKMeans { k, n_blocks } => centers_to_list(robust_kmeans(
            data,
            k,
            n_blocks,
            spec.kmeans_n_init,
            spec.kmeans_max_iter,
            rng,
        )?),
        Params::Dbscan { eps_nbr, min_pts } => {
            let dists = PairwiseDistances::new(data);
            centers_to_list(dbscan_cached(data, &dists, eps_nbr, min_pts)?.means)
        }
    }
}

/// Runs one setting and turns its list into a report row. An empty list
/// scores an infinite error.
fn measure(
    spec: &ExperimentSpec,
    attack: &AttackSpec,
    params: &Params,
    seed: u64,
    inst: &Instance,
    run: impl FnOnce(&mut Stream) -> Result<HypothesisList>,
) -> Result<Row> {
    let mut rng = rng_stream(seed, &format!("run/{}", attack.kind.name())).fork(params.algorithm().name());
    let t0 = Instant::now();
    let list = run(&mut rng)?;
    let runtime_ms = if spec.timing { t0.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
    let (list_size, worst, per_cluster) = match worst_error(&inst.mixture.means, &list) {
        Ok(m) => (m.list_size, m.worst_error, m.per_cluster_error),
        Err(LdmlError::EmptyList) => (0, f64::INFINITY, vec![f64::INFINITY; inst.mixture.k()]),
        Err(e) => return Err(e.into()),
    };
    Ok(Row {
        algorithm: params.algorithm().name().to_string(),
        params: format!("attack={} {params}", attack.kind.name()),
        seed,
        list_size,
        worst_error: worst,
        per_cluster_errors: per_cluster,
        runtime_ms,
    })
}

/// Every row of one `(attack, seed)` cell. DBSCAN settings share one
/// distance cache.
fn run_cell(spec: &ExperimentSpec, attack: &AttackSpec, seed: u64, inst: &Instance) -> Result<Vec<(usize, Row)>> {
    let jobs: Vec<usize> = (0..spec.grid.len())
        .filter(|&i| !matches!(spec.grid[i], Params::Dbscan { .. }))
        .collect();
    let mut out: Vec<(usize, Row)> = jobs
        .par_iter()
        .map(|&i| {
            let p = &spec.grid[i];
            measure(spec, attack, p, seed, inst, |rng| run_algorithm(spec, p, &inst.data, rng)).map(|r| (i, r))
        })
        .collect::<Result<_>>()?;
    let db: Vec<usize> = (0..spec.grid.len())
        .filter(|&i| matches!(spec.grid[i], Params::Dbscan { .. }))
        .collect();
    if !db.is_empty() {
        let dists = PairwiseDistances::new(&inst.data);
        for i in db {
            let p = &spec.grid[i];
            let Params::Dbscan { eps_nbr, min_pts } = *p else { unreachable!() };
            let row = measure(spec, attack, p, seed, inst, |_| {
                centers_to_list(dbscan_cached(&inst.data, &dists, eps_nbr, min_pts)?.means)
            })?;
            out.push((i, row));
        }
    }
    Ok(out)
}

/// Runs every `(attack, setting, seed)` triple on a pool of `threads`
/// workers. Rows come back sorted by algorithm, attack, grid position and
/// seed regardless of scheduling.
pub fn run_experiment(spec: &ExperimentSpec, threads: usize) -> Result<ExperimentReport> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| BenchError::Internal(format!("worker pool: {e}")))?;
    let seeds: Vec<u64> = (spec.seed_base..spec.seed_base + spec.seeds).collect();
    let cells: Vec<(usize, u64)> = (0..spec.attacks.len())
        .flat_map(|a| seeds.iter().map(move |&s| (a, s)))
        .collect();
    let rows = pool.install(|| -> Result<Vec<(usize, usize, u64, Row)>> {
        let fixed: Vec<Option<Instance>> = match spec.datasets {
            DatasetMode::PerSeed => vec![None; spec.attacks.len()],
            DatasetMode::Fixed { data_seed } => spec
                .attacks
                .par_iter()
                .map(|a| make_instance(spec, a, data_seed).map(Some))
                .collect::<Result<_>>()?,
        };
        let per_cell = cells
            .par_iter()
            .map(|&(a, seed)| {
                let attack = &spec.attacks[a];
                let owned;
                let inst = match &fixed[a] {
                    Some(inst) => inst,
                    None => {
                        owned = make_instance(spec, attack, seed)?;
                        &owned
                    }
                };
                Ok(run_cell(spec, attack, seed, inst)?
                    .into_iter()
                    .map(|(i, row)| (a, i, seed, row))
                    .collect::<Vec<_>>())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(per_cell.into_iter().flatten().collect())
    })?;
    let mut rows = rows;
    rows.sort_by_key(|&(a, i, seed, _)| (spec.grid[i].algorithm(), a, i, seed));
    let rows: Vec<Row> = rows.into_iter().map(|(_, _, _, r)| r).collect();
    if rows.len() != spec.row_count() {
        return Err(BenchError::Internal(format!(
            "expected {} rows, produced {}",
            spec.row_count(),
            rows.len()
        )));
    }
    Ok(ExperimentReport::new(rows))
}

/// Worker count: `LDML_THREADS` if set, else `requested`, else the number of
/// available cores.
pub fn worker_count(requested: Option<usize>) -> Result<usize> {
    if let Ok(v) = std::env::var("LDML_THREADS") {
        return match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(BenchError::Config(format!("LDML_THREADS=`{v}` is not a positive integer"))),
        };
    }
    Ok(requested.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())))
}
