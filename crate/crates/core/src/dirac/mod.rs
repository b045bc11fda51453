//! Submanifold Dirac operators for curves and conformal surfaces.

pub mod field;
pub mod operator;
pub mod sa;
pub mod zero_mode;

pub use field::{Residual, SpinorField};
pub use operator::{
    apply_dirac, build_curve_dirac, build_intrinsic_conformal_dirac, build_surface_dirac_e4, surface_potential,
    Coefficients, DiracOperatorSpec, OperatorKind, CURVE_POTENTIAL_FACTOR, SURFACE_POTENTIAL_FACTOR,
};
pub use sa::{sa_transform_check, SaTransformReport};
pub use zero_mode::curve_zero_mode;
