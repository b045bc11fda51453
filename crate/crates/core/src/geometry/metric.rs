use super::chart::{ImmersionChart, Jet};
use crate::error::{Error, Result};
use crate::linalg::{dot, Mat};
use crate::scalar::Real;

/// Induced metric `g_αβ = ∂_α x · ∂_β x` and its inverse at every sample.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricField<T> {
    pub metric: Vec<Mat<T>>,
    pub inverse: Vec<Mat<T>>,
}

impl<T: Real> MetricField<T> {
    pub fn det(&self, idx: usize) -> T {
        self.metric[idx].det()
    }
}

/// Smallest eigenvalue of a symmetric 1×1 or 2×2 matrix.
pub(crate) fn min_eigen<T: Real>(g: &Mat<T>) -> T {
    if g.rows() == 1 {
        return g[(0, 0)];
    }
    let tr = g[(0, 0)] + g[(1, 1)];
    let det = g.det();
    let disc = (tr * tr - T::lit(4.0) * det).max(T::zero()).sqrt();
    (tr - disc) * T::lit(0.5)
}

pub fn induced_metric<T: Real>(chart: &ImmersionChart<T>, jet: &Jet<T>) -> Result<MetricField<T>> {
    let k = chart.k();
    let mut metric = Vec::with_capacity(chart.len());
    let mut inverse = Vec::with_capacity(chart.len());
    let floor = T::lit(1e-8);
    for idx in 0..chart.len() {
        let g = Mat::from_fn(k, k, |a, b| dot(jet.first(idx, a), jet.first(idx, b)));
        let smin = min_eigen(&g).max(T::zero()).sqrt();
        if smin <= floor {
            return Err(Error::DegenerateImmersion {
                index: idx,
                reason: format!("smallest singular value {smin:e}"),
            });
        }
        let inv = g.inverse().ok_or(Error::DegenerateImmersion {
            index: idx,
            reason: "singular metric".into(),
        })?;
        metric.push(g);
        inverse.push(inv);
    }
    Ok(MetricField { metric, inverse })
}
