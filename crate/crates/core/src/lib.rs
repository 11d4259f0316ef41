//! Two qubits coupled through an ultrastrong quantum Rabi bus.
//!
//! All frequencies and couplings are in units of the cavity frequency
//! (`ω_cav = 1`, `ħ = 1`); times are in units of `1/ω_cav`.

pub mod error;
pub mod lindblad;
pub mod linalg;
pub mod dynamics;
pub mod effective;
pub mod model;
pub mod transmon;
pub mod units;
pub mod util;

pub use error::{Error, Result};
