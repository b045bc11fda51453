//! Observed order of convergence from grid-refinement studies.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Pass band for second-order stencils.
pub const ORDER_BAND: (f64, f64) = (1.7, 2.3);

/// Least-squares slope of `log e` against `log h`.
pub fn fit_order<T: Real>(h: &[T], e: &[T]) -> Result<T> {
    if h.len() != e.len() || h.len() < 2 {
        return Err(Error::Validation("need at least two (h, error) pairs".into()));
    }
    if h.iter().chain(e).any(|v| !(*v > T::zero()) || !v.is_finite()) {
        return Err(Error::Validation(
            "spacings and errors must be positive and finite".into(),
        ));
    }
    let xs: Vec<T> = h.iter().map(|v| v.ln()).collect();
    let ys: Vec<T> = e.iter().map(|v| v.ln()).collect();
    let m = T::from_usize_lossy(xs.len());
    let mx = xs.iter().fold(T::zero(), |s, v| s + *v) / m;
    let my = ys.iter().fold(T::zero(), |s, v| s + *v) / m;
    let (mut sxy, mut sxx) = (T::zero(), T::zero());
    for (x, y) in xs.iter().zip(&ys) {
        sxy = sxy + (*x - mx) * (*y - my);
        sxx = sxx + (*x - mx) * (*x - mx);
    }
    if sxx == T::zero() {
        return Err(Error::Validation("grid spacings must differ".into()));
    }
    Ok(sxy / sxx)
}

pub fn in_band<T: Real>(order: T) -> bool {
    let o = order.to_f64_lossy();
    o >= ORDER_BAND.0 && o <= ORDER_BAND.1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_power_law() {
        let h = [0.1, 0.05, 0.025];
        let e: Vec<f64> = h.iter().map(|x| 3.0 * x * x).collect();
        assert!((fit_order(&h, &e).unwrap() - 2.0).abs() < 1e-12);
        assert!(in_band(2.0) && !in_band(1.5));
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(fit_order(&[0.1], &[1.0]).is_err());
        assert!(fit_order(&[0.1, 0.1], &[1.0, 2.0]).is_err());
        assert!(fit_order(&[0.1, 0.05], &[0.0, 1.0]).is_err());
    }
}
