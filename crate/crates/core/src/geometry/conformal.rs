use super::chart::{ImmersionChart, JetMode};
use super::metric::MetricField;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Conformal factor of a surface chart, `g_αβ ≈ ρ δ_αβ`, with complex
/// coordinate `z = s¹ + i s²`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalData<T> {
    pub rho: Vec<T>,
    /// `max (|g11 − g22| + 2|g12|) / ρ`.
    pub residual: T,
    pub tolerance: T,
}

impl<T: Real> ConformalData<T> {
    pub fn is_conformal(&self) -> bool {
        self.residual <= self.tolerance
    }

    pub fn require(&self) -> Result<()> {
        if self.is_conformal() {
            Ok(())
        } else {
            Err(Error::NonConformal {
                residual: self.residual.to_f64_lossy(),
                tolerance: self.tolerance.to_f64_lossy(),
            })
        }
    }
}

/// Default tolerance: `1e-6` for analytic jets, `10 h²` for sampled ones.
pub fn default_conformal_tolerance<T: Real>(chart: &ImmersionChart<T>, mode: JetMode) -> T {
    if mode == JetMode::Analytic && chart.analytic_jet().is_some() {
        T::lit(1e-6)
    } else {
        let h = chart.grid().max_spacing();
        T::lit(10.0) * h * h
    }
}

/// In strict mode a residual above tolerance is an error; otherwise it is
/// reported through [`ConformalData::is_conformal`].
pub fn conformal_data<T: Real>(
    chart: &ImmersionChart<T>,
    metric: &MetricField<T>,
    tolerance: T,
    strict: bool,
) -> Result<ConformalData<T>> {
    if chart.k() != 2 {
        return Err(Error::Unsupported("conformal data needs a surface chart".into()));
    }
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let mut rho = Vec::with_capacity(chart.len());
    let mut residual = T::zero();
    for g in &metric.metric {
        let r = (g[(0, 0)] + g[(1, 1)]) * half;
        let d = ((g[(0, 0)] - g[(1, 1)]).abs() + two * g[(0, 1)].abs()) / r;
        residual = residual.max(d);
        rho.push(r);
    }
    let data = ConformalData {
        rho,
        residual,
        tolerance,
    };
    if strict {
        data.require()?;
    }
    Ok(data)
}
