//! Numerical laboratory for the long-time semiclassics of Lagrangian states.
//!
//! The crate is organized around the two sides of the quantum-to-classical
//! reduction:
//!
//! * [`quantum`] builds Lagrangian states on a periodic grid, Weyl-quantizes
//!   phase-space symbols and propagates states with split-step Fourier
//!   methods;
//! * [`classical`] transports the same symbols along Hamiltonian flows and
//!   integrates them against the principal-symbol density of the state;
//! * [`catmap`] is the discrete-time hyperbolic analog (quantized toral
//!   automorphism) where the quantum and classical sides can be compared
//!   in exact arithmetic;
//! * [`symbols`] holds the phase-space functions shared by all of the above.

pub mod amplitude;
pub mod catmap;
pub mod classical;
pub mod error;
pub mod quadrature;
pub mod quantum;
pub mod symbols;

pub use error::{Error, Result};
pub use num_complex::Complex64;
