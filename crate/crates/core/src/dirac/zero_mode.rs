use super::field::SpinorField;
use super::operator::{DiracOperatorSpec, OperatorKind};
use crate::clifford::spin_lift_field;
use crate::error::{Error, Result};
use crate::geometry::{ImmersionChart, ShapeData};
use crate::linalg::{norm, Mat};
use crate::scalar::{Real, C};

/// Zero mode `e^{−Ω} ψ0` of a curve operator, where `e^Ω` lifts the frame
/// `[T/|T|, normals…]` and `ψ0` is any constant spinor.
pub fn curve_zero_mode<T: Real>(
    chart: &ImmersionChart<T>,
    shape: &ShapeData<T>,
    op: &DiracOperatorSpec<T>,
    psi0: &[C<T>],
) -> Result<SpinorField<T>> {
    if op.kind != OperatorKind::Curve {
        return Err(Error::Unsupported(
            "closed-form zero modes exist for curve operators only".into(),
        ));
    }
    let dim = op.spinor_dim();
    if psi0.len() != dim {
        return Err(Error::ShapeMismatch(format!(
            "constant spinor of length {} for dimension {dim}",
            psi0.len()
        )));
    }
    let n = chart.n();
    let rots: Vec<Mat<T>> = (0..chart.len())
        .map(|idx| {
            let t = shape.jet.first(idx, 0);
            let speed = norm(t);
            Mat::from_fn(n, n, |r, col| {
                if col == 0 {
                    t[r] / speed
                } else {
                    shape.normals.normal(idx, col - 1)[r]
                }
            })
        })
        .collect();
    let lift = spin_lift_field(&op.rep, chart.grid(), &rots)?;
    Ok(SpinorField::from_fn(chart.grid(), dim, |idx| {
        let s = lift.elements[idx].matrix.adjoint();
        (0..dim)
            .map(|r| (0..dim).fold(C::new(T::zero(), T::zero()), |acc, c| acc + s[(r, c)] * psi0[c]))
            .collect()
    })
    .with_wrap_signs(lift.wrap_signs))
}
