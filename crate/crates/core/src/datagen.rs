//! Synthetic mixtures, adversarial attack distributions and the
//! mean-estimation corruption model used to exercise the base learners.

use crate::error::{domain, LdmlError, Result};
use crate::linalg;
use crate::rng::Stream;
use crate::types::{DataSet, Label, Vector};

/// `ceil(x)` that ignores floating-point residue such as `0.12 * 10000`.
pub fn ceil_tol(x: f64) -> usize {
    (x - 1e-9).ceil().max(0.0) as usize
}

/// `floor(x)` that ignores floating-point residue such as `0.04 * 500`.
pub fn floor_tol(x: f64) -> usize {
    (x + 1e-9).floor().max(0.0) as usize
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ComponentKind {
    GaussianIdentity,
    /// Per-coordinate Student-t rescaled to unit variance; `df > 2`.
    StudentT { df: f64 },
}

impl ComponentKind {
    fn validate(&self) -> Result<()> {
        match *self {
            ComponentKind::GaussianIdentity => Ok(()),
            ComponentKind::StudentT { df } if df > 2.0 && df.is_finite() => Ok(()),
            ComponentKind::StudentT { df } => Err(domain(format!("student-t df={df} must exceed 2"))),
        }
    }

    /// One unit-variance noise coordinate.
    pub fn draw(&self, rng: &mut Stream) -> f64 {
        match *self {
            ComponentKind::GaussianIdentity => rng.normal(),
            ComponentKind::StudentT { df } => rng.student_t(df) / (df / (df - 2.0)).sqrt(),
        }
    }

    fn fill(&self, rng: &mut Stream, out: &mut [f64]) {
        for c in out.iter_mut() {
            *c = self.draw(rng);
        }
    }
}

/// Inlier mixture `sum_i w_i D(mu_i)` plus an outlier budget `eps`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureSpec {
    pub means: Vec<Vector>,
    pub weights: Vec<f64>,
    pub eps: f64,
    pub component: ComponentKind,
}

impl MixtureSpec {
    /// Validates that `sum(weights) + eps = 1` within 1e-9.
    pub fn new(means: Vec<Vector>, weights: Vec<f64>, eps: f64, component: ComponentKind) -> Result<Self> {
        let spec = Self {
            means,
            weights,
            eps,
            component,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Rescales `raw_weights` so that they sum to `1 - eps` exactly.
    pub fn normalized(
        means: Vec<Vector>,
        raw_weights: &[f64],
        eps: f64,
        component: ComponentKind,
    ) -> Result<Self> {
        if !(0.0..1.0).contains(&eps) {
            return Err(domain(format!("eps={eps} outside [0, 1)")));
        }
        let total: f64 = raw_weights.iter().sum();
        if !(total > 0.0) {
            return Err(domain("weights must have positive sum"));
        }
        let weights = raw_weights.iter().map(|w| w / total * (1.0 - eps)).collect();
        Self::new(means, weights, eps, component)
    }

    pub fn validate(&self) -> Result<()> {
        if self.means.is_empty() {
            return Err(LdmlError::EmptyInput("mixture needs at least one component"));
        }
        if self.means.len() != self.weights.len() {
            return Err(LdmlError::DimensionMismatch {
                expected: self.means.len(),
                got: self.weights.len(),
            });
        }
        let d = self.means[0].dim();
        for m in &self.means {
            if m.dim() != d {
                return Err(LdmlError::DimensionMismatch {
                    expected: d,
                    got: m.dim(),
                });
            }
        }
        if self.weights.iter().any(|w| !(*w > 0.0)) {
            return Err(domain("component weights must be positive"));
        }
        if !(0.0..1.0).contains(&self.eps) {
            return Err(domain(format!("eps={} outside [0, 1)", self.eps)));
        }
        let total: f64 = self.weights.iter().sum::<f64>() + self.eps;
        if (total - 1.0).abs() > 1e-9 {
            return Err(domain(format!("weights + eps = {total}, expected 1")));
        }
        self.component.validate()
    }

    pub fn k(&self) -> usize {
        self.means.len()
    }

    pub fn dim(&self) -> usize {
        self.means[0].dim()
    }

    pub fn min_weight(&self) -> f64 {
        self.weights.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Smallest pairwise distance between component means (`inf` for k = 1).
    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.means.len() {
            for j in i + 1..self.means.len() {
                best = best.min(self.means[i].distance(&self.means[j]));
            }
        }
        best
    }

    /// Index of the lightest component; ties go to the lowest index.
    pub fn smallest_component(&self) -> usize {
        let mut best = 0;
        for (i, w) in self.weights.iter().enumerate() {
            if *w < self.weights[best] {
                best = i;
            }
        }
        best
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttackKind {
    None,
    AdversarialClusters,
    AdversarialLine,
    GaussianAdversary,
    UniformPlusCluster,
}

impl AttackKind {
    pub fn name(&self) -> &'static str {
        match self {
            AttackKind::None => "none",
            AttackKind::AdversarialClusters => "adversarial_clusters",
            AttackKind::AdversarialLine => "adversarial_line",
            AttackKind::GaussianAdversary => "gaussian_adversary",
            AttackKind::UniformPlusCluster => "uniform_plus_cluster",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "none" => AttackKind::None,
            "adversarial_clusters" => AttackKind::AdversarialClusters,
            "adversarial_line" => AttackKind::AdversarialLine,
            "gaussian_adversary" => AttackKind::GaussianAdversary,
            "uniform_plus_cluster" => AttackKind::UniformPlusCluster,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    SmallestCluster,
    Index(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttackSpec {
    pub kind: AttackKind,
    /// Norm of the offset vectors `v_c`, `v_j`.
    pub offset_norm: f64,
    pub n_fake: usize,
    /// Variance multiplier along the line direction (adversarial line).
    pub scale_along_line: f64,
    pub target: Target,
    /// Additional clusters attacked by `UniformPlusCluster`.
    pub extra_targets: Vec<usize>,
}

impl Default for AttackSpec {
    fn default() -> Self {
        Self {
            kind: AttackKind::None,
            offset_norm: 10.0,
            n_fake: 3,
            scale_along_line: 5.0,
            target: Target::SmallestCluster,
            extra_targets: Vec::new(),
        }
    }
}

impl AttackSpec {
    pub fn of_kind(kind: AttackKind) -> Self {
        Self {
            kind,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.offset_norm > 0.0 && self.offset_norm.is_finite()) {
            return Err(domain("offset_norm must be positive"));
        }
        if self.n_fake == 0 {
            return Err(domain("n_fake must be >= 1"));
        }
        if !(self.scale_along_line > 0.0) {
            return Err(domain("scale_along_line must be positive"));
        }
        Ok(())
    }
}

/// `k` means drawn uniformly in a cube, pairwise at least `min_sep` apart.
/// The cube starts at a side giving typical pairwise distances near
/// `1.25 * min_sep` and is enlarged a bounded number of times.
pub fn random_separated_means(k: usize, d: usize, min_sep: f64, rng: &mut Stream) -> Result<Vec<Vector>> {
    if k == 0 || d == 0 {
        return Err(domain("k and d must be >= 1"));
    }
    if !(min_sep > 0.0 && min_sep.is_finite()) {
        return Err(LdmlError::Infeasible(format!("min_sep={min_sep}")));
    }
    let mut side = (1.25 * min_sep * (6.0 / d as f64).sqrt()).max(min_sep * (k as f64 - 1.0).max(1.0) / (d as f64).sqrt());
    for _ in 0..12 {
        for _restart in 0..20 {
            let mut means: Vec<Vec<f64>> = Vec::with_capacity(k);
            let mut ok = true;
            for _ in 0..k {
                let mut placed = false;
                for _try in 0..500 {
                    let cand: Vec<f64> = (0..d).map(|_| rng.uniform_range(-side / 2.0, side / 2.0)).collect();
                    if means.iter().all(|m| linalg::distance(m, &cand) >= min_sep) {
                        means.push(cand);
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(means.into_iter().map(Vector::from).collect());
            }
        }
        side *= 1.5;
    }
    Err(LdmlError::Infeasible(format!(
        "could not place {k} means with separation {min_sep} in d={d}"
    )))
}

/// Draws `n` inlier points; component sizes are multinomial with
/// probabilities `w_i / sum_j w_j`.
pub fn sample_mixture(spec: &MixtureSpec, n: usize, rng: &mut Stream) -> Result<DataSet> {
    spec.validate()?;
    if n == 0 {
        return Err(LdmlError::EmptyInput("sample_mixture needs n >= 1"));
    }
    let d = spec.dim();
    let total: f64 = spec.weights.iter().sum();
    let mut cdf = Vec::with_capacity(spec.k());
    let mut acc = 0.0;
    for w in &spec.weights {
        acc += w / total;
        cdf.push(acc);
    }
    let mut coords = vec![0.0; n * d];
    let mut labels = Vec::with_capacity(n);
    for row in coords.chunks_exact_mut(d) {
        let u = rng.uniform();
        let c = cdf.iter().position(|&p| u < p).unwrap_or(spec.k() - 1);
        spec.component.fill(rng, row);
        for (x, m) in row.iter_mut().zip(spec.means[c].iter()) {
            *x += m;
        }
        labels.push(Label::Component(c as u32));
    }
    DataSet::new(d, coords, Some(labels))
}

/// Splits `budget` points across `groups` fake clusters of nominal size
/// `target` each: an over-budget request is split equally (remainder to the
/// last group); an under-budget request gives the leftover to the last group.
fn allocate_groups(budget: usize, groups: usize, target: usize) -> Vec<usize> {
    if groups * target >= budget {
        let base = budget / groups;
        let mut out = vec![base; groups];
        out[groups - 1] += budget - base * groups;
        out
    } else {
        let mut out = vec![target; groups];
        out[groups - 1] += budget - target * groups;
        out
    }
}

/// Scales `sizes` to sum to `budget` with largest-remainder rounding.
fn scale_to_budget(sizes: &[usize], budget: usize) -> Vec<usize> {
    let total: usize = sizes.iter().sum();
    if total == 0 {
        let mut out = vec![0; sizes.len()];
        if let Some(last) = out.last_mut() {
            *last = budget;
        }
        return out;
    }
    let exact: Vec<f64> = sizes.iter().map(|&s| s as f64 * budget as f64 / total as f64).collect();
    let mut out: Vec<usize> = exact.iter().map(|x| x.floor() as usize).collect();
    let mut rest = budget - out.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by(|&a, &b| {
        let fa = exact[a] - exact[a].floor();
        let fb = exact[b] - exact[b].floor();
        fb.total_cmp(&fa).then(a.cmp(&b))
    });
    for i in order {
        if rest == 0 {
            break;
        }
        out[i] += 1;
        rest -= 1;
    }
    out
}

fn resolve_target(spec: &MixtureSpec, target: Target) -> Result<usize> {
    match target {
        Target::SmallestCluster => Ok(spec.smallest_component()),
        Target::Index(i) if i < spec.k() => Ok(i),
        Target::Index(i) => Err(domain(format!("attack target {i} out of range (k={})", spec.k()))),
    }
}

fn component_count(inliers: &DataSet, c: usize) -> usize {
    inliers
        .labels()
        .map(|l| l.iter().filter(|x| **x == Label::Component(c as u32)).count())
        .unwrap_or(0)
}

/// Number of adversarial points so that they make up `ceil(eps * N)` of the
/// final `N = n_inliers + n_adv` points (smallest such `N`).
pub fn adversary_budget(n_inliers: usize, eps: f64) -> Result<usize> {
    if !(0.0..1.0).contains(&eps) {
        return Err(domain(format!("eps={eps} outside [0, 1)")));
    }
    let mut n_total = n_inliers;
    loop {
        let adv = ceil_tol(eps * n_total as f64);
        if n_total - adv == n_inliers {
            return Ok(adv);
        }
        n_total += 1;
    }
}

/// Appends adversarial points (labelled [`Label::Adversary`]) to `inliers` so
/// that they form a `ceil(eps * n_total)` share of the result.
pub fn apply_attack(
    inliers: &DataSet,
    spec: &MixtureSpec,
    attack: &AttackSpec,
    eps: f64,
    rng: &mut Stream,
) -> Result<DataSet> {
    let budget = adversary_budget(inliers.len(), eps)?;
    apply_attack_budget(inliers, spec, attack, budget, rng)
}

/// [`apply_attack`] with an explicit number of adversarial points.
pub fn apply_attack_budget(
    inliers: &DataSet,
    spec: &MixtureSpec,
    attack: &AttackSpec,
    budget: usize,
    rng: &mut Stream,
) -> Result<DataSet> {
    attack.validate()?;
    if inliers.labels().is_none() {
        return Err(domain("apply_attack needs labelled inliers"));
    }
    if inliers.dim() != spec.dim() {
        return Err(LdmlError::DimensionMismatch {
            expected: spec.dim(),
            got: inliers.dim(),
        });
    }
    if budget == 0 {
        return Ok(inliers.clone());
    }
    let d = spec.dim();
    let kind = spec.component;
    let mut adv: Vec<f64> = Vec::with_capacity(budget * d);
    match attack.kind {
        AttackKind::None => {
            return Err(domain("attack kind `none` cannot place a positive outlier budget"));
        }
        AttackKind::AdversarialClusters => {
            let s = resolve_target(spec, attack.target)?;
            let mu = &spec.means[s];
            let vc: Vec<f64> = rng.unit_vector(d).iter().map(|x| x * attack.offset_norm).collect();
            let sizes = allocate_groups(budget, attack.n_fake, 2 * component_count(inliers, s));
            for size in sizes {
                let vj: Vec<f64> = rng.unit_vector(d).iter().map(|x| x * attack.offset_norm).collect();
                let center: Vec<f64> = (0..d).map(|i| mu[i] + vc[i] + vj[i]).collect();
                push_cluster(&mut adv, &center, size, kind, rng);
            }
        }
        AttackKind::AdversarialLine => {
            let s = resolve_target(spec, attack.target)?;
            let mu = &spec.means[s];
            let dir = rng.unit_vector(d);
            let sizes = allocate_groups(budget, attack.n_fake, 2 * component_count(inliers, s));
            let stretch = attack.scale_along_line.sqrt() - 1.0;
            for (j, size) in sizes.into_iter().enumerate() {
                let step = (j + 1) as f64 * attack.offset_norm;
                let center: Vec<f64> = (0..d).map(|i| mu[i] + step * dir[i]).collect();
                let mut z = vec![0.0; d];
                for _ in 0..size {
                    kind.fill(rng, &mut z);
                    let along = linalg::dot(&z, &dir);
                    adv.extend((0..d).map(|i| center[i] + z[i] + stretch * along * dir[i]));
                }
            }
        }
        AttackKind::GaussianAdversary => {
            let mean = linalg::mean_rows(inliers.coords(), d);
            let cov = covariance(inliers.coords(), d, &mean);
            let chol = cholesky(&cov, d);
            let mut z = vec![0.0; d];
            for _ in 0..budget {
                for c in z.iter_mut() {
                    *c = rng.normal();
                }
                for i in 0..d {
                    let row = &chol[i * d..i * d + i + 1];
                    adv.push(mean[i] + linalg::dot(row, &z[..=i]));
                }
            }
        }
        AttackKind::UniformPlusCluster => {
            let mut targets = vec![resolve_target(spec, attack.target)?];
            for &t in &attack.extra_targets {
                targets.push(resolve_target(spec, Target::Index(t))?);
            }
            // nominal sizes: fake = 2|C|, noise = (|C| + fake) / 9
            let mut nominal = Vec::new();
            for &c in &targets {
                let size = component_count(inliers, c);
                let fake = 2 * size;
                nominal.push(fake);
                nominal.push((size + fake).div_ceil(9));
            }
            let total: usize = nominal.iter().sum();
            let sizes = if total >= budget {
                scale_to_budget(&nominal, budget)
            } else {
                let mut s = nominal.clone();
                *s.last_mut().expect("at least one target") += budget - total;
                s
            };
            for (ti, &c) in targets.iter().enumerate() {
                let mu = &spec.means[c];
                let vc: Vec<f64> = rng.unit_vector(d).iter().map(|x| x * attack.offset_norm).collect();
                let center: Vec<f64> = (0..d).map(|i| mu[i] + vc[i]).collect();
                let start = adv.len();
                push_cluster(&mut adv, &center, sizes[2 * ti], kind, rng);
                // bounding box of the attacked cluster and its fake neighbour
                let mut lo = vec![f64::INFINITY; d];
                let mut hi = vec![f64::NEG_INFINITY; d];
                let labels = inliers.labels().expect("checked above");
                let cluster_rows = inliers
                    .points()
                    .zip(labels)
                    .filter(|(_, l)| **l == Label::Component(c as u32))
                    .map(|(p, _)| p);
                for row in cluster_rows.chain(adv[start..].chunks_exact(d)) {
                    for i in 0..d {
                        lo[i] = lo[i].min(row[i]);
                        hi[i] = hi[i].max(row[i]);
                    }
                }
                if !lo[0].is_finite() {
                    lo = center.iter().map(|x| x - 3.0).collect();
                    hi = center.iter().map(|x| x + 3.0).collect();
                }
                for _ in 0..sizes[2 * ti + 1] {
                    adv.extend((0..d).map(|i| rng.uniform_range(lo[i], hi[i])));
                }
            }
        }
    }
    debug_assert_eq!(adv.len(), budget * d);
    let adversary = DataSet::new(d, adv, Some(vec![Label::Adversary; budget]))?;
    let mut out = inliers.clone();
    out.append(&adversary)?;
    Ok(out)
}

fn push_cluster(out: &mut Vec<f64>, center: &[f64], size: usize, kind: ComponentKind, rng: &mut Stream) {
    for _ in 0..size {
        out.extend(center.iter().map(|m| m + kind.draw(rng)));
    }
}

fn covariance(coords: &[f64], d: usize, mean: &[f64]) -> Vec<f64> {
    let n = coords.len() / d;
    let mut cov = vec![0.0; d * d];
    let mut c = vec![0.0; d];
    for row in coords.chunks_exact(d) {
        for i in 0..d {
            c[i] = row[i] - mean[i];
        }
        for i in 0..d {
            let ci = c[i];
            for j in 0..=i {
                cov[i * d + j] += ci * c[j];
            }
        }
    }
    let denom = (n.max(2) - 1) as f64;
    for i in 0..d {
        for j in 0..=i {
            let v = cov[i * d + j] / denom;
            cov[i * d + j] = v;
            cov[j * d + i] = v;
        }
    }
    cov
}

/// Lower-triangular Cholesky factor (row-major); tiny negative pivots from
/// rank deficiency are clamped to zero.
fn cholesky(a: &[f64], d: usize) -> Vec<f64> {
    let mut l = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i * d + k] * l[j * d + k]).sum();
            if i == j {
                l[i * d + i] = (a[i * d + i] - s).max(0.0).sqrt();
            } else if l[j * d + j] > 1e-12 {
                l[i * d + j] = (a[i * d + j] - s) / l[j * d + j];
            }
        }
    }
    l
}

/// Inlier mixture of `n_total` points followed by the attack, with exactly
/// `ceil(eps * n_total)` adversarial points.
pub fn generate(spec: &MixtureSpec, attack: &AttackSpec, n_total: usize, rng: &mut Stream) -> Result<DataSet> {
    let budget = if attack.kind == AttackKind::None {
        0
    } else {
        ceil_tol(spec.eps * n_total as f64)
    };
    if budget >= n_total {
        return Err(domain("eps leaves no room for inliers"));
    }
    let inliers = sample_mixture(spec, n_total - budget, &mut rng.fork("inliers"))?;
    apply_attack_budget(&inliers, spec, attack, budget, &mut rng.fork("attack"))
}

/// Rule for the samples the adversary deletes from the inlier draw.
#[derive(Debug, Clone, PartialEq)]
pub enum RemovalRule {
    /// Delete the inliers with the largest `<x - mu, v>`.
    WorstAlongDirection(Vector),
    Random,
}

/// Where the adversary's added points come from.
#[derive(Debug, Clone, PartialEq)]
pub enum AdversaryModel {
    /// Equal-mass point masses, assigned round-robin.
    PointMasses(Vec<Vector>),
    /// Gaussian blobs `N(center, scale^2 I)`, assigned round-robin.
    Clusters { centers: Vec<Vector>, scale: f64 },
    /// Explicit points, cycled.
    Cloud(DataSet),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorruptionSpec {
    pub alpha: f64,
    pub w_low: f64,
    pub n: usize,
    pub adversary: AdversaryModel,
    pub removal: RemovalRule,
}

/// The inlier distribution handed to the corruption model.
#[derive(Debug, Clone, PartialEq)]
pub struct InlierModel {
    pub mean: Vector,
    pub kind: ComponentKind,
}

/// Draws `ceil(alpha n)` inliers, lets the adversary delete
/// `floor(w_low^2 n_1)` of them, then fills up to `n` points with adversarial
/// ones. Surviving inliers are labelled component 0.
pub fn corrupt_for_mean_estimation(spec: &CorruptionSpec, base: &InlierModel, rng: &mut Stream) -> Result<DataSet> {
    if !(spec.alpha > 0.0 && spec.alpha <= 1.0) {
        return Err(domain(format!("alpha={} outside (0, 1]", spec.alpha)));
    }
    if !(spec.w_low > 0.0) {
        return Err(domain("w_low must be positive"));
    }
    if spec.alpha * (spec.n as f64) < 1.0 - 1e-9 {
        return Err(domain("alpha * n must be >= 1"));
    }
    base.kind.validate()?;
    let d = base.mean.dim();
    let n1 = ceil_tol(spec.alpha * spec.n as f64).min(spec.n);
    let mut inl = vec![0.0; n1 * d];
    for row in inl.chunks_exact_mut(d) {
        base.kind.fill(rng, row);
        for (x, m) in row.iter_mut().zip(base.mean.iter()) {
            *x += m;
        }
    }
    let removed = floor_tol(spec.w_low * spec.w_low * n1 as f64);
    let mut keep: Vec<usize> = (0..n1).collect();
    if removed > 0 {
        match &spec.removal {
            RemovalRule::WorstAlongDirection(v) => {
                if v.dim() != d {
                    return Err(LdmlError::DimensionMismatch {
                        expected: d,
                        got: v.dim(),
                    });
                }
                let scores = linalg::project(&inl, d, &keep, &base.mean, v);
                keep.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
                keep.drain(..removed);
                keep.sort_unstable();
            }
            RemovalRule::Random => {
                rng.shuffle(&mut keep);
                keep.truncate(n1 - removed);
                keep.sort_unstable();
            }
        }
    }
    let n_adv = spec.n - keep.len();
    let mut coords = Vec::with_capacity(spec.n * d);
    for &i in &keep {
        coords.extend_from_slice(&inl[i * d..(i + 1) * d]);
    }
    match &spec.adversary {
        AdversaryModel::PointMasses(centers) => {
            if centers.is_empty() && n_adv > 0 {
                return Err(domain("no adversary point masses given"));
            }
            for j in 0..n_adv {
                coords.extend_from_slice(&centers[j % centers.len()]);
            }
        }
        AdversaryModel::Clusters { centers, scale } => {
            if centers.is_empty() && n_adv > 0 {
                return Err(domain("no adversary clusters given"));
            }
            for j in 0..n_adv {
                let c = &centers[j % centers.len()];
                coords.extend(c.iter().map(|m| m + scale * rng.normal()));
            }
        }
        AdversaryModel::Cloud(cloud) => {
            if cloud.is_empty() && n_adv > 0 {
                return Err(domain("empty adversary cloud"));
            }
            for j in 0..n_adv {
                coords.extend_from_slice(cloud.point(j % cloud.len()));
            }
        }
    }
    let mut labels = vec![Label::Component(0); keep.len()];
    labels.extend(std::iter::repeat_n(Label::Adversary, n_adv));
    DataSet::new(d, coords, Some(labels))
}
