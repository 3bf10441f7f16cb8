//! Numerical toolkit for the n-qubit Bell-Klyshko inequality, GHZ-type
//! maximally entangled states and entanglement-depth certification.
//!
//! The crate is organised bottom-up:
//!
//! * [`qstate`] dense state vectors, density matrices, partial traces,
//!   spectra and Born-rule sampling;
//! * [`symstate`] exact algebra of permutation-symmetric states and the
//!   GHZ-derived orthogonal basis;
//! * [`bellop`] the classical Klyshko polynomial, its correlator expansion
//!   and the quantum Bell operator;
//! * [`optimize`] maximisation over measurement settings and states;
//! * [`criteria`] fragility, entanglement distribution, mutual information
//!   and maximally mixed reductions;
//! * [`certify`] entanglement-depth certification from measured values.

pub mod audit;
pub mod bellop;
pub mod certify;
pub mod criteria;
mod error;
pub mod io;
pub mod optimize;
pub mod qstate;
pub mod rng;
pub mod symstate;
pub mod tolerances;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use qstate::{DensityMatrix, Direction, MeasurementBasis, PureState, Sign, StateView};
