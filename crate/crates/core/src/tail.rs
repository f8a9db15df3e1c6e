//! Tail radius of distributions with sub-Gaussian t-th central moments and
//! the relative inlier weight of a component inside a candidate set.

use crate::error::{domain, Result};

pub(crate) fn check_t(t: u32) -> Result<()> {
    if t < 2 || t % 2 != 0 {
        return Err(domain(format!("moment order t={t} must be even and >= 2")));
    }
    Ok(())
}

/// Radius containing all but an `O(alpha)` fraction of the mass along any
/// direction:
///
/// ```text
/// psi_t(a) = sqrt(t) * (1/a)^(1/t)      if t <= 2 ln(1/a)
///          = sqrt(2e ln(1/a))           otherwise
/// ```
///
/// The branch condition uses the natural logarithm.
pub fn psi(t: u32, alpha: f64) -> Result<f64> {
    check_t(t)?;
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(domain(format!("psi: alpha={alpha} outside (0, 1]")));
    }
    Ok(psi_unchecked(t, alpha))
}

pub(crate) fn psi_unchecked(t: u32, alpha: f64) -> f64 {
    let log_inv = (1.0 / alpha).ln();
    let t = t as f64;
    if t <= 2.0 * log_inv {
        t.sqrt() * (1.0 / alpha).powf(1.0 / t)
    } else {
        (2.0 * std::f64::consts::E * log_inv).sqrt()
    }
}

/// `w / (w + eps + w_low^2)`: the effective inlier fraction of a component of
/// weight `w` once it is isolated together with (at most) all outliers.
pub fn relative_weight(w: f64, eps: f64, w_low: f64) -> Result<f64> {
    if !(w_low > 0.0) {
        return Err(domain(format!("w_low={w_low} must be positive")));
    }
    if w < w_low {
        return Err(domain(format!("w={w} below w_low={w_low}")));
    }
    if !(eps >= 0.0) {
        return Err(domain(format!("eps={eps} must be non-negative")));
    }
    if w + eps > 1.0 + 1e-12 {
        return Err(domain(format!("w + eps = {} exceeds 1", w + eps)));
    }
    Ok(w / (w + eps + w_low * w_low))
}
