//! Small dense helpers over row-major `f64` buffers.

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Unit vector along `a - b`, or `None` when the two coincide.
pub fn unit_direction(a: &[f64], b: &[f64]) -> Option<Vec<f64>> {
    let mut v = sub(a, b);
    let n = norm(&v);
    if n <= 1e-12 {
        return None;
    }
    v.iter_mut().for_each(|c| *c /= n);
    Some(v)
}

pub fn mean_rows(coords: &[f64], dim: usize) -> Vec<f64> {
    let mut m = vec![0.0; dim];
    let n = coords.len() / dim;
    for row in coords.chunks_exact(dim) {
        for (acc, x) in m.iter_mut().zip(row) {
            *acc += x;
        }
    }
    m.iter_mut().for_each(|c| *c /= n as f64);
    m
}

/// Mean of the rows listed in `idx`.
pub fn mean_of(coords: &[f64], dim: usize, idx: &[usize]) -> Vec<f64> {
    let mut m = vec![0.0; dim];
    for &i in idx {
        for (acc, x) in m.iter_mut().zip(&coords[i * dim..(i + 1) * dim]) {
            *acc += x;
        }
    }
    m.iter_mut().for_each(|c| *c /= idx.len() as f64);
    m
}

/// `<x_i - center, v>` for every row in `idx`.
pub fn project(coords: &[f64], dim: usize, idx: &[usize], center: &[f64], v: &[f64]) -> Vec<f64> {
    let offset = dot(center, v);
    idx.iter()
        .map(|&i| dot(&coords[i * dim..(i + 1) * dim], v) - offset)
        .collect()
}

/// Second moment of the rows in `idx` around `center` along unit `v`.
pub fn directional_variance(
    coords: &[f64],
    dim: usize,
    idx: &[usize],
    center: &[f64],
    v: &[f64],
) -> f64 {
    let p = project(coords, dim, idx, center, v);
    p.iter().map(|z| z * z).sum::<f64>() / idx.len() as f64
}

/// Result of a power iteration on an empirical covariance.
#[derive(Debug, Clone)]
pub struct TopEigen {
    pub value: f64,
    pub vector: Vec<f64>,
}

/// Leading eigenpair of the covariance of rows `idx` around `center`,
/// computed matrix-free: each step costs two passes over the subset.
/// Stops when the Rayleigh quotient changes by less than `tol` (relative).
pub fn top_eigen(
    coords: &[f64],
    dim: usize,
    idx: &[usize],
    center: &[f64],
    start: &[f64],
    max_iter: usize,
    tol: f64,
) -> TopEigen {
    let m = idx.len().max(1) as f64;
    let mut v = start.to_vec();
    let n0 = norm(&v);
    if n0 <= 1e-300 {
        v = vec![0.0; dim];
        v[0] = 1.0;
    } else {
        v.iter_mut().for_each(|c| *c /= n0);
    }
    let mut value = 0.0;
    let mut w = vec![0.0; dim];
    let mut centered = vec![0.0; dim];
    for it in 0..max_iter.max(1) {
        w.iter_mut().for_each(|c| *c = 0.0);
        for &i in idx {
            let row = &coords[i * dim..(i + 1) * dim];
            for ((c, x), mu) in centered.iter_mut().zip(row).zip(center) {
                *c = x - mu;
            }
            let s = dot(&centered, &v);
            for (acc, c) in w.iter_mut().zip(&centered) {
                *acc += s * c;
            }
        }
        w.iter_mut().for_each(|c| *c /= m);
        let rayleigh = dot(&w, &v);
        let wn = norm(&w);
        if wn <= 1e-300 {
            return TopEigen { value: 0.0, vector: v };
        }
        let converged = it > 0 && (rayleigh - value).abs() <= tol * rayleigh.abs().max(1e-12);
        value = rayleigh;
        w.iter().zip(v.iter_mut()).for_each(|(a, b)| *b = a / wn);
        if converged {
            break;
        }
    }
    TopEigen { value, vector: v }
}

/// Linear-interpolation quantile (Hyndman-Fan type 7) of already sorted data.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty slice");
    let h = (sorted.len() - 1) as f64 * p.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn median(values: &[f64]) -> f64 {
    let mut s = values.to_vec();
    s.sort_by(f64::total_cmp);
    quantile_sorted(&s, 0.5)
}
