use super::field::{Residual, SpinorField};
use crate::clifford::{build_clifford, tau_inclusion, CliffordRep};
use crate::error::{Error, Result};
use crate::geometry::{ConformalData, ImmersionChart, ShapeData};
use crate::grid::Grid;
use crate::linalg::Mat;
use crate::scalar::{Real, C};

/// Weight of the mean-curvature potential in the curve operator.
pub const CURVE_POTENTIAL_FACTOR: f64 = 0.5;

/// Magnitude `c` in `p = −c ρ^{1/2} (t_3 + i t_4)` (signed traces) for the
/// surface operator in E⁴.
pub const SURFACE_POTENTIAL_FACTOR: f64 = 0.25;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    Curve,
    SurfaceE4,
    IntrinsicConformal,
}

impl OperatorKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Curve => "curve",
            Self::SurfaceE4 => "surface_E4",
            Self::IntrinsicConformal => "intrinsic_conformal",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Coefficients<T> {
    /// `inv_speed = g^{−1/2}`; `curvature[idx·codim + ȧ]` holds signed traces.
    Curve {
        inv_speed: Vec<T>,
        curvature: Vec<T>,
        codim: usize,
    },
    SurfaceE4 {
        p: Vec<C<T>>,
    },
    IntrinsicConformal {
        rho: Vec<T>,
    },
}

/// Discretized submanifold Dirac operator.
#[derive(Clone, Debug)]
pub struct DiracOperatorSpec<T> {
    pub kind: OperatorKind,
    pub rep: CliffordRep<T>,
    pub grid: Grid<T>,
    pub coefficients: Coefficients<T>,
    pub potential_factor: T,
    /// `γ(ds)` followed by `γ(dq^ȧ)` (curves).
    gammas: Vec<Mat<C<T>>>,
}

impl<T: Real> DiracOperatorSpec<T> {
    pub fn spinor_dim(&self) -> usize {
        match self.kind {
            OperatorKind::SurfaceE4 => 4,
            _ => self.rep.spinor_dim(),
        }
    }

    /// Surface potential `p` (empty for other kinds).
    pub fn potential(&self) -> &[C<T>] {
        match &self.coefficients {
            Coefficients::SurfaceE4 { p } => p,
            _ => &[],
        }
    }

    pub fn gammas(&self) -> &[Mat<C<T>>] {
        &self.gammas
    }
}

/// `D = γ(ds) g^{−1/2} ∂_s + ½ Σ_ȧ t_ȧ γ(dq^ȧ)` with signed traces `t`.
///
/// `γ(ds)` is the image of the one-dimensional generator under the
/// inclusion; `γ(dq^ȧ)` are the remaining ambient generators. In E³ the
/// normal frame must be parallel.
pub fn build_curve_dirac<T: Real>(chart: &ImmersionChart<T>, shape: &ShapeData<T>) -> Result<DiracOperatorSpec<T>> {
    let (k, n) = (chart.k(), chart.n());
    if k != 1 || !(2..=3).contains(&n) {
        return Err(Error::Unsupported(format!(
            "curve operator needs k=1, n in 2..=3, got ({k}, {n})"
        )));
    }
    if n == 3 && !shape.parallel {
        return Err(Error::FrameRequirement(
            "curves in E^3 need a parallel normal frame".into(),
        ));
    }
    let rep = build_clifford::<T>(n, 1)?;
    let rep1 = build_clifford::<T>(1, 1)?;
    let one = C::new(T::one(), T::zero());
    let mut gammas = vec![tau_inclusion(&rep1, &rep, &[(vec![0], one)])?];
    gammas.extend((1..n).map(|i| rep.gamma(i).clone()));
    let codim = n - 1;
    let inv_speed = shape
        .metric
        .metric
        .iter()
        .map(|g| T::one() / g[(0, 0)].sqrt())
        .collect();
    let mut curvature = Vec::with_capacity(chart.len() * codim);
    for idx in 0..chart.len() {
        for a in 0..codim {
            curvature.push(shape.signed_mean_trace(idx, a));
        }
    }
    Ok(DiracOperatorSpec {
        kind: OperatorKind::Curve,
        rep,
        grid: chart.grid().clone(),
        coefficients: Coefficients::Curve {
            inv_speed,
            curvature,
            codim,
        },
        potential_factor: T::lit(CURVE_POTENTIAL_FACTOR),
        gammas,
    })
}

/// `p = −c ρ^{1/2} (t_3 + i t_4)` from signed traces.
pub fn surface_potential<T: Real>(rho: T, t3: T, t4: T) -> C<T> {
    let c = -T::lit(SURFACE_POTENTIAL_FACTOR) * rho.sqrt();
    C::new(c * t3, c * t4)
}

/// Block operator
/// `2·[[0,0,p̄,∂],[0,0,∂̄,−p],[p,∂,0,0],[∂̄,−p̄,0,0]]`,
/// `∂ = (∂_1 − i∂_2)/2`, `∂̄ = (∂_1 + i∂_2)/2`.
///
/// Charts in E³ must be padded to E⁴ (fourth coordinate constant). The
/// normal frame must be positively oriented, as produced by
/// [`crate::geometry::normal_frame`].
pub fn build_surface_dirac_e4<T: Real>(
    chart: &ImmersionChart<T>,
    shape: &ShapeData<T>,
    conformal: &ConformalData<T>,
) -> Result<DiracOperatorSpec<T>> {
    if chart.k() != 2 || chart.n() != 4 {
        return Err(Error::Unsupported(format!(
            "surface operator needs a surface chart in E^4, got ({}, {})",
            chart.k(),
            chart.n()
        )));
    }
    conformal.require()?;
    let p = (0..chart.len())
        .map(|idx| {
            surface_potential(
                conformal.rho[idx],
                shape.signed_mean_trace(idx, 0),
                shape.signed_mean_trace(idx, 1),
            )
        })
        .collect();
    Ok(DiracOperatorSpec {
        kind: OperatorKind::SurfaceE4,
        rep: build_clifford::<T>(4, 1)?,
        grid: chart.grid().clone(),
        coefficients: Coefficients::SurfaceE4 { p },
        potential_factor: T::lit(SURFACE_POTENTIAL_FACTOR),
        gammas: Vec::new(),
    })
}

/// `D_S ψ = ρ^{−1} σ^α ∂_α (ρ^{1/2} ψ)`.
pub fn build_intrinsic_conformal_dirac<T: Real>(
    grid: &Grid<T>,
    conformal: &ConformalData<T>,
) -> Result<DiracOperatorSpec<T>> {
    if grid.dim() != 2 || conformal.rho.len() != grid.len() {
        return Err(Error::ShapeMismatch(
            "conformal factor does not match a surface grid".into(),
        ));
    }
    if let Some(i) = conformal.rho.iter().position(|r| !(*r > T::zero())) {
        return Err(Error::InvalidMetric(format!(
            "conformal factor not positive at sample {i}"
        )));
    }
    let rep = build_clifford::<T>(2, 1)?;
    let gammas = rep.generators().to_vec();
    Ok(DiracOperatorSpec {
        kind: OperatorKind::IntrinsicConformal,
        rep,
        grid: grid.clone(),
        coefficients: Coefficients::IntrinsicConformal {
            rho: conformal.rho.clone(),
        },
        potential_factor: T::zero(),
        gammas,
    })
}

fn mat_vec<T: Real>(m: &Mat<C<T>>, v: &[C<T>]) -> Vec<C<T>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).fold(C::new(T::zero(), T::zero()), |s, c| s + m[(r, c)] * v[c]))
        .collect()
}

/// Applies the operator with central differences. Samples lacking a full
/// stencil (open boundaries) are zero and marked invalid.
pub fn apply_dirac<T: Real>(op: &DiracOperatorSpec<T>, field: &SpinorField<T>) -> Result<Residual<T>> {
    let grid = &op.grid;
    let dim = op.spinor_dim();
    field.check_grid(grid, dim)?;
    let mut out = SpinorField::zeros(grid, dim).with_wrap_signs(field.wrap_signs.clone());
    let mut valid = vec![false; grid.len()];
    let zero = C::new(T::zero(), T::zero());
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let i_unit = C::new(T::zero(), T::one());

    let scaled;
    let source = match &op.coefficients {
        Coefficients::IntrinsicConformal { rho } => {
            let mut s = field.clone();
            for (idx, r) in rho.iter().enumerate() {
                let w = r.sqrt();
                s.get_mut(idx).iter_mut().for_each(|z| *z = *z * w);
            }
            scaled = s;
            &scaled
        }
        _ => field,
    };

    for idx in 0..grid.len() {
        let derivs: Option<Vec<Vec<C<T>>>> = (0..grid.dim()).map(|a| source.central_diff(grid, idx, a)).collect();
        let Some(d) = derivs else { continue };
        valid[idx] = true;
        let psi = field.get(idx);
        let res: Vec<C<T>> = match &op.coefficients {
            Coefficients::Curve {
                inv_speed,
                curvature,
                codim,
            } => {
                let mut r = mat_vec(&op.gammas[0], &d[0]);
                r.iter_mut().for_each(|z| *z = *z * inv_speed[idx]);
                for a in 0..*codim {
                    let t = curvature[idx * codim + a] * op.potential_factor;
                    let g = mat_vec(&op.gammas[1 + a], psi);
                    for (z, w) in r.iter_mut().zip(g) {
                        *z = *z + w * t;
                    }
                }
                r
            }
            Coefficients::SurfaceE4 { p } => {
                let p = p[idx];
                let del = |c: usize| (d[0][c] - i_unit * d[1][c]) * half;
                let delbar = |c: usize| (d[0][c] + i_unit * d[1][c]) * half;
                vec![
                    (p.conj() * psi[2] + del(3)) * two,
                    (delbar(2) - p * psi[3]) * two,
                    (p * psi[0] + del(1)) * two,
                    (delbar(0) - p.conj() * psi[1]) * two,
                ]
            }
            Coefficients::IntrinsicConformal { rho } => {
                let mut r = vec![zero; dim];
                for (a, g) in op.gammas.iter().enumerate() {
                    for (z, w) in r.iter_mut().zip(mat_vec(g, &d[a])) {
                        *z = *z + w;
                    }
                }
                r.iter_mut().for_each(|z| *z = *z / rho[idx]);
                r
            }
        };
        out.get_mut(idx).copy_from_slice(&res);
    }
    Ok(Residual {
        field: out,
        valid,
        cell: grid.cell_measure(),
    })
}
