//! The Brauer algebra `B_r(δ)` and its action on tensor powers of an
//! orthosymplectic superspace.

mod action;
mod diagram;

pub use action::{brauer_kernel_dim, diagram_action, form_for_characteristic, o2_char2_check, FormedSuperspace, O2Check};
pub use diagram::{diagram_count, enumerate_diagrams, BrauerDiagram};
