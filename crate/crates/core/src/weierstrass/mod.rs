pub mod frame_check;
pub mod reconstruct;
pub mod spinors;
pub mod surface_frames;

pub use frame_check::{double_gauge_defect, verify_weierstrass_frame, FrameVerification};
pub use reconstruct::{reconstruct_immersion, ReconstructionResult};
pub use spinors::{
    complex_derivatives, regression_exponent, scaling_exponent, spinors_from_immersion_e4, verify_zero_mode,
    ExtractOptions, Gauge, WeierstrassSpinors, NORMALIZATION_EXPONENT,
};
pub use surface_frames::{surface_frames, SurfaceFrames};
