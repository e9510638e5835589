//! Integral solutions of the hypergeometric q-difference equation for
//! `|q| = 1`, built on the double sine function.
//!
//! The crate covers
//! * the double sine `S2` and the modular q-gamma `Gamma~` ([`doublesine`], [`qgamma`]),
//! * the q-difference operators `L_q` and `L_+` ([`qdiff`]),
//! * the Barnes-type integral `Phi` and the Euler-type integral `Psi`
//!   ([`barnes`], [`euler`]),
//! * classical and `0 < q < 1` oracles (series, Watson and Jackson integrals),
//! * a verification suite that checks the functional equations numerically ([`verify`]).

pub mod barnes;
pub mod doublesine;
pub mod error;
pub mod euler;
pub mod numerics;
pub mod qdiff;
pub mod qgamma;
pub mod qseries;
pub mod verify;

pub use error::{Error, Result};

/// Version of this crate, reported in machine-readable outputs.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub use num_complex::Complex64;
