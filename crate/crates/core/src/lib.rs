//! Entanglement entropy and pseudospin CHSH nonlocality of two-mode
//! N-photon entangled states `N_m [cos g |N-m, m> + e^{i theta} sin g |m, N-m>]`
//! and their superpositions.
//!
//! Every analytic expression in [`closed_forms`] is paired with an exact
//! operator computation ([`fock`], [`pseudospin`]) on finite-support Fock
//! states; [`verify`] runs the two routes against each other.

pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod fock;
pub mod optimizer;
pub mod pseudospin;
pub mod scan;
pub mod states;
pub mod verify;

pub use error::{Error, Result};
pub use fock::{Mode, TwoModeState};
pub use pseudospin::{Axis, BellAngles};
pub use states::{PsiNmParams, SuperpositionSpec};
