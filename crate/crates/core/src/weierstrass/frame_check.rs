use crate::clifford::{build_clifford, frame_spinors, spin_exp, spin_lift_field, SpinElement, SpinLiftField};
use crate::error::{Error, Result};
use crate::geometry::{ImmersionChart, ShapeData};
use crate::linalg::{dot, norm, Mat};
use crate::scalar::{Real, C};

/// Residual of `g_αβ ψ̄⁽ⁱ⁾ γ(ds^β) ψ⁽ⁱ⁾ = ∂_α xⁱ` with `ψ⁽ⁱ⁾ = e^{−Ω} Ψ⁽ⁱ⁾`.
#[derive(Clone, Debug)]
pub struct FrameVerification<T> {
    /// `residual[(idx·n + i)·k + α]`.
    pub residual: Vec<T>,
    pub max_residual: T,
    pub gauge: SpinLiftField<T>,
}

impl<T: Real> FrameVerification<T> {
    /// Max residual over `i, α` at each sample.
    pub fn per_sample(&self, n: usize, k: usize) -> Vec<T> {
        self.residual
            .chunks(n * k)
            .map(|c| c.iter().copied().fold(T::zero(), T::max))
            .collect()
    }
}

/// Orthonormal tangent frame by Gram–Schmidt on `∂_α x`, and
/// `J_aα = t_a · ∂_α x`.
fn tangent_frame<T: Real>(d: &[Vec<T>]) -> Option<(Vec<Vec<T>>, Mat<T>)> {
    let k = d.len();
    let mut t: Vec<Vec<T>> = Vec::with_capacity(k);
    for v in d {
        let mut w = v.clone();
        for u in &t {
            let c = dot(&w, u);
            w.iter_mut().zip(u).for_each(|(x, y)| *x = *x - c * *y);
        }
        let l = norm(&w);
        if !(l > T::lit(1e-12)) {
            return None;
        }
        w.iter_mut().for_each(|x| *x = *x / l);
        t.push(w);
    }
    let j = Mat::from_fn(k, k, |a, al| dot(&t[a], &d[al]));
    Some((t, j))
}

/// Per-sample rotations and Jacobians.
type RotationField<T> = (Vec<Mat<T>>, Vec<Mat<T>>);

fn rotation_field<T: Real>(shape: &ShapeData<T>) -> Result<RotationField<T>> {
    let (k, n) = (shape.k(), shape.n());
    let mut rots = Vec::with_capacity(shape.len());
    let mut jacobians = Vec::with_capacity(shape.len());
    for idx in 0..shape.len() {
        let d: Vec<Vec<T>> = (0..k).map(|a| shape.jet.first(idx, a).to_vec()).collect();
        let (t, j) = tangent_frame(&d).ok_or(Error::Frame { index: idx })?;
        let lambda = Mat::from_fn(n, n, |r, c| {
            if c < k {
                t[c][r]
            } else {
                shape.normals.normal(idx, c - k)[r]
            }
        });
        rots.push(lambda);
        jacobians.push(j);
    }
    Ok((rots, jacobians))
}

fn residuals<T: Real>(
    chart: &ImmersionChart<T>,
    shape: &ShapeData<T>,
    omega0: Option<&Mat<T>>,
) -> Result<FrameVerification<T>> {
    let (k, n) = (shape.k(), shape.n());
    if chart.len() != shape.len() || chart.n() != n || chart.k() != k {
        return Err(Error::ShapeMismatch("shape data does not belong to the chart".into()));
    }
    let rep = build_clifford::<T>(n, 1)?;
    let spinors = frame_spinors(&rep)?;
    let (rots, jacobians) = rotation_field(shape)?;
    let gauge = spin_lift_field(&rep, chart.grid(), &rots)?;
    let global = match omega0 {
        Some(w) => spin_exp(&rep, w)?,
        None => SpinElement::identity(rep.spinor_dim()),
    };
    let gammas: Vec<Mat<C<T>>> = (0..k)
        .map(|a| global.matrix.adjoint().matmul(rep.gamma(a)).matmul(&global.matrix))
        .collect();
    let reference = chart.analytic_jet().unwrap_or(&shape.jet);

    let mut residual = Vec::with_capacity(chart.len() * n * k);
    let mut max_residual = T::zero();
    for idx in 0..chart.len() {
        let s = gauge.elements[idx].matrix.matmul(&global.matrix);
        let s_inv = s.adjoint();
        let jinv = jacobians[idx].inverse().ok_or(Error::Frame { index: idx })?;
        let g = &shape.metric.metric[idx];
        // γ(ds^β) = Σ_a (J⁻¹)_βa γ_a
        let gamma_ds: Vec<Mat<C<T>>> = (0..k)
            .map(|b| {
                let mut acc = Mat::zeros(rep.spinor_dim(), rep.spinor_dim());
                for (a, ga) in gammas.iter().enumerate() {
                    acc = &acc + &ga.scale(&C::new(jinv[(b, a)], T::zero()));
                }
                acc
            })
            .collect();
        for (i, (psi0, bar0)) in spinors.iter().enumerate() {
            let psi = psi0.apply(&s_inv);
            let bar = bar0.apply_right(&s);
            let bil: Vec<C<T>> = gamma_ds.iter().map(|m| bar.sandwich(m, &psi)).collect();
            for alpha in 0..k {
                let lhs = (0..k).fold(C::new(T::zero(), T::zero()), |acc, b| acc + bil[b] * g[(alpha, b)]);
                let r = (lhs - C::new(reference.first(idx, alpha)[i], T::zero())).norm();
                max_residual = max_residual.max(r);
                residual.push(r);
            }
        }
    }
    Ok(FrameVerification {
        residual,
        max_residual,
        gauge,
    })
}

/// Checks the tangent-reconstruction identity at every sample. The gauge
/// `e^Ω` lifts the frame `[orthonormalized ∂x, normals]`; the right-hand
/// side uses the chart's analytic derivatives when present, so sampled
/// shape data shows its truncation error.
pub fn verify_weierstrass_frame<T: Real>(
    chart: &ImmersionChart<T>,
    shape: &ShapeData<T>,
) -> Result<FrameVerification<T>> {
    residuals(chart, shape, None)
}

/// Largest change in the residual when `e^Ω → e^Ω e^{Ω₀}` and every `γ`
/// is conjugated by `e^{Ω₀}`.
pub fn double_gauge_defect<T: Real>(chart: &ImmersionChart<T>, shape: &ShapeData<T>, omega0: &Mat<T>) -> Result<T> {
    let a = residuals(chart, shape, None)?;
    let b = residuals(chart, shape, Some(omega0))?;
    Ok(a.residual
        .iter()
        .zip(&b.residual)
        .fold(T::zero(), |m, (x, y)| m.max((*x - *y).abs())))
}
