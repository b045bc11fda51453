//! Clifford algebra representations, spinors, inclusions and spin lifts.

pub mod inclusion;
pub mod pauli;
pub mod rep;
pub mod spin;
pub mod spinor;

pub use inclusion::{inclusion_chain, iota_inclusion, tau_generator, tau_inclusion, InclusionStep};
pub use pauli::PauliKit;
pub use rep::{build_clifford, gamma_of_form, CliffordRep};
pub use spin::{
    extract_rotation, lift_rotation, lift_rotation_cached, spin_exp, spin_lift_field, LiftCache, SpinElement,
    SpinLiftField,
};
pub use spinor::{frame_spinors, frame_spinors_with_words, phi_map, phi_map_inverse, CoSpinor, Spinor};
