use crate::error::{Error, Result};
use crate::geometry::{tubular_metric, ImmersionChart, ShapeData};
use crate::scalar::Real;

/// Normal-derivative conjugation `ρ^{1/4} ∂_ȧ ρ^{−1/4} − ∂_ȧ` at `q = 0`,
/// measured by central differences of the tubular factor and compared with
/// `−½ t_ȧ` (signed trace).
#[derive(Clone, Debug, PartialEq)]
pub struct SaTransformReport<T> {
    pub delta: T,
    /// `measured[idx·codim + ȧ]`
    pub measured: Vec<T>,
    pub expected: Vec<T>,
    pub max_error: T,
}

pub fn sa_transform_check<T: Real>(
    chart: &ImmersionChart<T>,
    shape: &ShapeData<T>,
    delta: T,
) -> Result<SaTransformReport<T>> {
    if !(delta > T::zero()) {
        return Err(Error::Validation("offset step must be positive".into()));
    }
    let codim = shape.codim();
    let mut measured = vec![T::zero(); chart.len() * codim];
    let mut expected = vec![T::zero(); chart.len() * codim];
    let quarter = T::lit(0.25);
    let half = T::lit(0.5);
    for a in 0..codim {
        let mut q = vec![T::zero(); codim];
        q[a] = delta;
        let plus = tubular_metric(chart, shape, &q)?;
        q[a] = -delta;
        let minus = tubular_metric(chart, shape, &q)?;
        for idx in 0..chart.len() {
            let d = (plus[idx].rho_exact - minus[idx].rho_exact) / (delta + delta);
            measured[idx * codim + a] = -quarter * d;
            expected[idx * codim + a] = -half * shape.signed_mean_trace(idx, a);
        }
    }
    let max_error = measured
        .iter()
        .zip(&expected)
        .map(|(m, e)| (*m - *e).abs())
        .fold(T::zero(), T::max);
    Ok(SaTransformReport {
        delta,
        measured,
        expected,
        max_error,
    })
}
