//! Clustering baselines: k-means, median-of-means robust k-means and DBSCAN.

use crate::error::{domain, LdmlError, Result};
use crate::linalg;
use crate::rng::Stream;
use crate::types::{DataSet, Vector};

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// k-means++ seeding.
fn seed_centroids(s: &DataSet, k: usize, rng: &mut Stream) -> Vec<Vec<f64>> {
    let n = s.len();
    let mut chosen = vec![false; n];
    let first = rng.index(n);
    chosen[first] = true;
    let mut centroids = vec![s.point(first).to_vec()];
    let mut d2: Vec<f64> = s.points().map(|p| sq_dist(p, &centroids[0])).collect();
    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let pick = if total > 0.0 {
            let mut u = rng.uniform() * total;
            let mut pick = n - 1;
            for (i, w) in d2.iter().enumerate() {
                if u < *w {
                    pick = i;
                    break;
                }
                u -= w;
            }
            pick
        } else {
            // all points coincide with a centroid: take any unused one
            let unused: Vec<usize> = (0..n).filter(|&i| !chosen[i]).collect();
            unused[rng.index(unused.len())]
        };
        chosen[pick] = true;
        let c = s.point(pick).to_vec();
        for (i, p) in s.points().enumerate() {
            d2[i] = d2[i].min(sq_dist(p, &c));
        }
        centroids.push(c);
    }
    centroids
}

fn assign(s: &DataSet, centroids: &[Vec<f64>]) -> (Vec<usize>, f64) {
    let mut wcss = 0.0;
    let labels = s
        .points()
        .map(|p| {
            let (best, dist) = centroids
                .iter()
                .enumerate()
                .map(|(c, mu)| (c, sq_dist(p, mu)))
                .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
            wcss += dist;
            best
        })
        .collect();
    (labels, wcss)
}

/// Centroid update used by the Lloyd loop.
enum Update<'a> {
    Mean,
    MedianOfMeans { blocks: usize, rng: &'a mut Stream },
}

fn lloyd(s: &DataSet, k: usize, max_iter: usize, mut update: Update<'_>, rng: &mut Stream) -> (Vec<Vec<f64>>, f64) {
    let d = s.dim();
    let mut centroids = seed_centroids(s, k, rng);
    let (mut labels, mut wcss) = assign(s, &centroids);
    for _ in 0..max_iter {
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (i, &c) in labels.iter().enumerate() {
            members[c].push(i);
        }
        for (c, idx) in members.iter().enumerate() {
            if idx.is_empty() {
                continue;
            }
            centroids[c] = match &mut update {
                Update::Mean => linalg::mean_of(s.coords(), d, idx),
                Update::MedianOfMeans { blocks, rng } => median_of_means(s, idx, *blocks, rng),
            };
        }
        let (next, next_wcss) = assign(s, &centroids);
        let stable = next == labels;
        labels = next;
        wcss = next_wcss;
        if stable {
            break;
        }
    }
    (centroids, wcss)
}

/// Coordinate-wise median of the means of `blocks` random blocks of `idx`.
fn median_of_means(s: &DataSet, idx: &[usize], blocks: usize, rng: &mut Stream) -> Vec<f64> {
    let d = s.dim();
    let b = blocks.min(idx.len()).max(1);
    if b == 1 {
        return linalg::mean_of(s.coords(), d, idx);
    }
    let mut perm = idx.to_vec();
    rng.shuffle(&mut perm);
    let sizes = crate::learners::partition_sizes(perm.len(), b);
    let mut means = Vec::with_capacity(b);
    let mut start = 0;
    for len in sizes {
        means.push(linalg::mean_of(s.coords(), d, &perm[start..start + len]));
        start += len;
    }
    (0..d)
        .map(|j| linalg::median(&means.iter().map(|m| m[j]).collect::<Vec<f64>>()))
        .collect()
}

fn check_k(s: &DataSet, k: usize) -> Result<()> {
    if k == 0 {
        return Err(domain("k must be >= 1"));
    }
    if k > s.len() {
        return Err(LdmlError::Infeasible(format!("k={k} exceeds |S|={}", s.len())));
    }
    Ok(())
}

/// Lloyd's algorithm from k-means++ seeds; the best of `n_init` restarts by
/// within-cluster sum of squares.
pub fn kmeans(s: &DataSet, k: usize, n_init: usize, max_iter: usize, rng: &mut Stream) -> Result<Vec<Vector>> {
    check_k(s, k)?;
    let mut best: Option<(Vec<Vec<f64>>, f64)> = None;
    for run in 0..n_init.max(1) {
        let mut r = rng.fork(&format!("init-{run}"));
        let (c, w) = lloyd(s, k, max_iter, Update::Mean, &mut r);
        if best.as_ref().is_none_or(|b| w < b.1) {
            best = Some((c, w));
        }
    }
    Ok(best.expect("n_init >= 1").0.into_iter().map(Vector::from).collect())
}

/// k-means whose centroid step is a coordinate-wise median of block means
/// over `n_blocks` random blocks of each cluster.
pub fn robust_kmeans(
    s: &DataSet,
    k: usize,
    n_blocks: usize,
    n_init: usize,
    max_iter: usize,
    rng: &mut Stream,
) -> Result<Vec<Vector>> {
    check_k(s, k)?;
    if n_blocks == 0 {
        return Err(domain("n_blocks must be >= 1"));
    }
    let mut best: Option<(Vec<Vec<f64>>, f64)> = None;
    for run in 0..n_init.max(1) {
        let mut r = rng.fork(&format!("init-{run}"));
        let mut blocks_rng = rng.fork(&format!("blocks-{run}"));
        let update = Update::MedianOfMeans {
            blocks: n_blocks,
            rng: &mut blocks_rng,
        };
        let (c, w) = lloyd(s, k, max_iter, update, &mut r);
        if best.as_ref().is_none_or(|b| w < b.1) {
            best = Some((c, w));
        }
    }
    Ok(best.expect("n_init >= 1").0.into_iter().map(Vector::from).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DbscanResult {
    /// Cluster id per point; `None` marks noise.
    pub labels: Vec<Option<usize>>,
    /// Mean of each cluster, in cluster-id order.
    pub means: Vec<Vector>,
}

/// Pairwise distances kept in single precision, reusable across many
/// neighbourhood radii.
pub struct PairwiseDistances {
    n: usize,
    condensed: Vec<f32>,
}

impl PairwiseDistances {
    pub fn new(s: &DataSet) -> Self {
        let n = s.len();
        let mut condensed = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            let p = s.point(i);
            for j in i + 1..n {
                condensed.push(sq_dist(p, s.point(j)).sqrt() as f32);
            }
        }
        Self { n, condensed }
    }

    fn get(&self, i: usize, j: usize) -> f32 {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.condensed[a * (2 * self.n - a - 1) / 2 + (b - a - 1)]
    }
}

/// Density-based clustering with neighbourhoods `||x - y|| <= eps_nbr`
/// (a point counts as its own neighbour).
pub fn dbscan(s: &DataSet, eps_nbr: f64, min_pts: usize) -> Result<DbscanResult> {
    let e2 = eps_nbr * eps_nbr;
    dbscan_by(s, eps_nbr, min_pts, |i, j| sq_dist(s.point(i), s.point(j)) <= e2)
}

/// [`dbscan`] using precomputed distances.
pub fn dbscan_cached(s: &DataSet, dists: &PairwiseDistances, eps_nbr: f64, min_pts: usize) -> Result<DbscanResult> {
    let e = eps_nbr as f32;
    dbscan_by(s, eps_nbr, min_pts, |i, j| i == j || dists.get(i, j) <= e)
}

fn dbscan_by(s: &DataSet, eps_nbr: f64, min_pts: usize, near: impl Fn(usize, usize) -> bool) -> Result<DbscanResult> {
    if !(eps_nbr > 0.0) || min_pts == 0 {
        return Err(domain("dbscan needs eps_nbr > 0 and min_pts >= 1"));
    }
    let n = s.len();
    let neighbours = |i: usize| -> Vec<usize> { (0..n).filter(|&j| near(i, j)).collect() };
    let mut labels: Vec<Option<usize>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut clusters = 0;
    for p in 0..n {
        if visited[p] {
            continue;
        }
        visited[p] = true;
        let nb = neighbours(p);
        if nb.len() < min_pts {
            continue;
        }
        let c = clusters;
        clusters += 1;
        labels[p] = Some(c);
        let mut frontier = nb;
        while let Some(q) = frontier.pop() {
            if labels[q].is_none() {
                labels[q] = Some(c);
            }
            if visited[q] {
                continue;
            }
            visited[q] = true;
            let nq = neighbours(q);
            if nq.len() >= min_pts {
                frontier.extend(nq.into_iter().filter(|&r| !visited[r] || labels[r].is_none()));
            }
        }
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); clusters];
    for (i, l) in labels.iter().enumerate() {
        if let Some(c) = l {
            members[*c].push(i);
        }
    }
    let means = members
        .iter()
        .map(|idx| Vector::from(linalg::mean_of(s.coords(), s.dim(), idx)))
        .collect();
    Ok(DbscanResult { labels, means })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_stream;

    fn masses() -> DataSet {
        let mut coords = [0.0, 0.0].repeat(30);
        coords.extend([100.0, 0.0].repeat(30));
        DataSet::new(2, coords, None).unwrap()
    }

    #[test]
    fn kmeans_k_equals_n_returns_the_points() {
        let s = DataSet::new(1, vec![0.0, 1.0, 5.0, 9.0], None).unwrap();
        let mut c: Vec<f64> = kmeans(&s, 4, 2, 50, &mut rng_stream(0, "k")).unwrap().iter().map(|v| v[0]).collect();
        c.sort_by(f64::total_cmp);
        assert_eq!(c, vec![0.0, 1.0, 5.0, 9.0]);
    }

    #[test]
    fn kmeans_two_masses_and_k_one() {
        let s = masses();
        let mut c: Vec<f64> = kmeans(&s, 2, 3, 50, &mut rng_stream(1, "k")).unwrap().iter().map(|v| v[0]).collect();
        c.sort_by(f64::total_cmp);
        assert_eq!(c, vec![0.0, 100.0]);
        let one = kmeans(&s, 1, 1, 50, &mut rng_stream(1, "k")).unwrap();
        assert_eq!(one[0].as_slice(), s.mean().unwrap().as_slice());
        assert!(kmeans(&s, 61, 1, 5, &mut rng_stream(1, "k")).is_err());
    }

    #[test]
    fn robust_kmeans_single_block_matches_kmeans() {
        let s = masses();
        let a = kmeans(&s, 2, 2, 50, &mut rng_stream(2, "k")).unwrap();
        let b = robust_kmeans(&s, 2, 1, 2, 50, &mut rng_stream(2, "k")).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dbscan_cases() {
        let s = masses();
        let r = dbscan(&s, 1.0, 5).unwrap();
        assert_eq!(r.means.len(), 2);
        assert!(r.labels.iter().all(|l| l.is_some()));
        let r = dbscan(&s, 1.0, 61).unwrap();
        assert!(r.means.is_empty());
        let same = DataSet::new(3, [1.0, 2.0, 3.0].repeat(10), None).unwrap();
        assert_eq!(dbscan(&same, 0.5, 10).unwrap().means.len(), 1);
        let dists = PairwiseDistances::new(&s);
        assert_eq!(dbscan_cached(&s, &dists, 1.0, 5).unwrap(), dbscan(&s, 1.0, 5).unwrap());
    }
}
