//! Sampled differential geometry of curves and surfaces in E²–E⁴.

pub mod catalog;
pub mod chart;
pub mod conformal;
pub mod frame;
pub mod metric;
pub mod shape;
pub mod tubular;

pub use catalog::{GraphKind, PointJet, Shape, ShapeSpec, SHAPE_NAMES};
pub use chart::{diff1, diff2, ImmersionChart, Jet, JetMode};
pub use conformal::{conformal_data, default_conformal_tolerance, ConformalData};
pub use frame::{normal_frame, FrameOptions, NormalFrame};
pub use metric::{induced_metric, MetricField};
pub use shape::{schrodinger_potential_e3, shape_data, ShapeData, ShapeOptions, WEINGARTEN_SIGN};
pub use tubular::{expansion_error, focal_check, tubular_metric, RhoExpansion, TubularMetric, FOCAL_LIMIT};
