//! Clifford algebras, submanifold geometry, Dirac operators on immersed
//! curves and surfaces, and the spinor (Weierstrass) description of surfaces
//! in E⁴.
//!
//! Everything is generic over the scalar; the aliases below fix `f64`.

// NaN must fail validity checks, hence `!(x < limit)`; index loops mirror the formulas
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod clifford;
pub mod convergence;
pub mod dirac;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod linalg;
pub mod scalar;
pub mod weierstrass;

pub use error::{Error, Result};

pub type CliffordRep64 = clifford::CliffordRep<f64>;
pub type CliffordRep32 = clifford::CliffordRep<f32>;
/// Integer entries: every generator is a signed Pauli word, so products stay exact.
pub type CliffordRepI64 = clifford::CliffordRep<i64>;
pub type Grid64 = grid::Grid<f64>;
pub type Chart64 = geometry::ImmersionChart<f64>;
pub type ShapeSpec64 = geometry::ShapeSpec<f64>;
pub type ShapeData64 = geometry::ShapeData<f64>;
pub type SpinorField64 = dirac::SpinorField<f64>;
pub type WeierstrassSpinors64 = weierstrass::WeierstrassSpinors<f64>;
pub type Complex64 = scalar::C<f64>;
