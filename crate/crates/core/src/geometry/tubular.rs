use super::chart::ImmersionChart;
use super::shape::ShapeData;
use crate::error::{Error, Result};
use crate::linalg::{dot, norm, Mat};
use crate::scalar::Real;

/// Validity region of the linear offset frame: `‖q‖·max|κ| < FOCAL_LIMIT`.
pub const FOCAL_LIMIT: f64 = 0.5;

/// Terms of `ρ(q) = c0 + Σ c1_ȧ q^ȧ + Σ c2_ȧḃ q^ȧ q^ḃ + O(q³)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RhoExpansion<T> {
    pub c0: T,
    pub c1: Vec<T>,
    pub c2: Mat<T>,
}

impl<T: Real> RhoExpansion<T> {
    pub fn value(&self, q: &[T]) -> T {
        let mut v = self.c0;
        for (a, qa) in q.iter().enumerate() {
            v = v + self.c1[a] * *qa;
            for (b, qb) in q.iter().enumerate() {
                v = v + self.c2[(a, b)] * *qa * *qb;
            }
        }
        v
    }
}

/// Metric of the offset submanifold `x + q^ȧ e_ȧ` at one sample.
#[derive(Clone, Debug, PartialEq)]
pub struct TubularMetric<T> {
    pub q: Vec<T>,
    /// Columns: `E_α` (tangential, offset) then `E_ȧ = e_ȧ`.
    pub frame: Mat<T>,
    pub g_offset: Mat<T>,
    /// `det g_{S_q} / det g_S`.
    pub rho_exact: T,
    pub expansion: RhoExpansion<T>,
}

impl<T: Real> TubularMetric<T> {
    pub fn rho_expansion(&self) -> T {
        self.expansion.value(&self.q)
    }

    /// Gram matrix of all `n` frame vectors.
    pub fn assembled_metric(&self) -> Mat<T> {
        self.frame.transpose().matmul(&self.frame)
    }
}

pub fn focal_check<T: Real>(shape: &ShapeData<T>, q: &[T]) -> Result<()> {
    let product = norm(q) * shape.max_abs_curvature();
    if !(product < T::lit(FOCAL_LIMIT)) {
        return Err(Error::FocalRadius {
            product: product.to_f64_lossy(),
            limit: FOCAL_LIMIT,
        });
    }
    Ok(())
}

/// Offset frame `E_α = ∂_α x + q^ȧ γ^β_{ȧα} ∂_β x`, `E_ȧ = e_ȧ`, with
/// `γ` the signed Weingarten coefficients, so that `E_α = ∂_α(x + q^ȧ e_ȧ)`
/// up to normal-connection terms.
pub fn tubular_metric<T: Real>(
    chart: &ImmersionChart<T>,
    shape: &ShapeData<T>,
    q: &[T],
) -> Result<Vec<TubularMetric<T>>> {
    let (k, n) = (chart.k(), chart.n());
    let codim = n - k;
    if q.len() != codim {
        return Err(Error::ShapeMismatch(format!(
            "offset has {} components, codimension is {codim}",
            q.len()
        )));
    }
    focal_check(shape, q)?;
    let two = T::lit(2.0);
    let mut out = Vec::with_capacity(chart.len());
    for idx in 0..chart.len() {
        let gam: Vec<Mat<T>> = (0..codim).map(|a| shape.signed_weingarten(idx, a)).collect();
        let mut x = Mat::zeros(k, k);
        for (a, g) in gam.iter().enumerate() {
            x = &x + &g.map(|v| *v * q[a]);
        }
        let mut frame = Mat::zeros(n, n);
        for alpha in 0..k {
            for i in 0..n {
                let mut v = shape.jet.first(idx, alpha)[i];
                for beta in 0..k {
                    v = v + x[(alpha, beta)] * shape.jet.first(idx, beta)[i];
                }
                frame[(i, alpha)] = v;
            }
        }
        for a in 0..codim {
            for i in 0..n {
                frame[(i, k + a)] = shape.normals.normal(idx, a)[i];
            }
        }
        let g_offset = Mat::from_fn(k, k, |a, b| {
            (0..n).fold(T::zero(), |s, i| s + frame[(i, a)] * frame[(i, b)])
        });
        let rho_exact = g_offset.det() / shape.metric.det(idx);
        let c1 = gam.iter().map(|g| two * g.trace()).collect();
        let c2 = Mat::from_fn(codim, codim, |a, b| {
            two * gam[a].trace() * gam[b].trace() - gam[a].matmul(&gam[b]).trace()
        });
        out.push(TubularMetric {
            q: q.to_vec(),
            frame,
            g_offset,
            rho_exact,
            expansion: RhoExpansion { c0: T::one(), c1, c2 },
        });
    }
    Ok(out)
}

/// Largest `|ρ_exact − ρ_expansion|` over the chart.
pub fn expansion_error<T: Real>(metrics: &[TubularMetric<T>]) -> T {
    metrics
        .iter()
        .map(|m| (m.rho_exact - m.rho_expansion()).abs())
        .fold(T::zero(), T::max)
}

/// Cross-check used by tests: offset surface metric from the analytic normal
/// field's derivatives is not available in general, so the tangential block
/// is compared against `dot` products of the offset frame.
pub fn offset_gram<T: Real>(m: &TubularMetric<T>, k: usize) -> Mat<T> {
    Mat::from_fn(k, k, |a, b| {
        let ca: Vec<T> = (0..m.frame.rows()).map(|i| m.frame[(i, a)]).collect();
        let cb: Vec<T> = (0..m.frame.rows()).map(|i| m.frame[(i, b)]).collect();
        dot(&ca, &cb)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::catalog::{Shape, ShapeSpec};
    use crate::geometry::shape::{shape_data, ShapeOptions};

    fn setup(spec: ShapeSpec<f64>, samples: &[usize]) -> (ImmersionChart<f64>, ShapeData<f64>) {
        let c = spec.chart(samples).unwrap();
        let s = shape_data(&c, ShapeOptions::default()).unwrap();
        (c, s)
    }

    #[test]
    fn zero_offset_is_identity() {
        let (c, s) = setup(ShapeSpec::<f64>::new(Shape::Sphere { radius: 1.0 }), &[8, 8]);
        for m in tubular_metric(&c, &s, &[0.0]).unwrap() {
            assert!((m.rho_exact - 1.0).abs() < 1e-14);
            assert_eq!(m.rho_expansion(), 1.0);
        }
    }

    #[test]
    fn sphere_offsets_match_closed_form() {
        // inward normal: offset sphere has radius 1 − q
        let (c, s) = setup(ShapeSpec::<f64>::new(Shape::Sphere { radius: 1.0 }), &[8, 8]);
        for q in [0.1, -0.2] {
            for m in tubular_metric(&c, &s, &[q]).unwrap() {
                assert!((m.rho_exact - (1.0 - q).powi(4)).abs() < 1e-12);
                let d = m.assembled_metric().det();
                assert!((d - m.g_offset.det()).abs() < 1e-12);
                assert_eq!(offset_gram(&m, 2), m.g_offset);
            }
        }
    }

    #[test]
    fn circle_offsets_match_closed_form() {
        let r = 2.0;
        let (c, s) = setup(ShapeSpec::<f64>::new(Shape::Circle { radius: r }), &[16]);
        for q in [0.1, 0.4] {
            for m in tubular_metric(&c, &s, &[q]).unwrap() {
                assert!((m.rho_exact - (1.0 - q / r).powi(2)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn expansion_error_is_cubic_on_sphere() {
        let (c, s) = setup(ShapeSpec::<f64>::new(Shape::Sphere { radius: 1.0 }), &[8, 8]);
        let e: Vec<f64> = [0.1, 0.05, 0.025]
            .iter()
            .map(|q| expansion_error(&tubular_metric(&c, &s, &[*q]).unwrap()))
            .collect();
        let slope = (e[0] / e[2]).ln() / 4f64.ln();
        assert!(slope > 2.7, "{e:?}");
    }

    #[test]
    fn focal_bound_enforced() {
        let (c, s) = setup(ShapeSpec::<f64>::new(Shape::Sphere { radius: 1.0 }), &[8, 8]);
        assert!(matches!(tubular_metric(&c, &s, &[0.6]), Err(Error::FocalRadius { .. })));
        assert!(tubular_metric(&c, &s, &[0.1, 0.1]).is_err());
    }
}
