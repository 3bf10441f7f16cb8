//! The Klyshko polynomial `F_n`, its correlator expansion and the quantum
//! Bell operator `B_n`.
//!
//! Both objects are defined by the same recursion, adding one qubit at a
//! time with its two settings `(a, a')`:
//!
//! ```text
//! F_k  = (a + a')/2 · F_{k-1}  + (a - a')/2 · F'_{k-1}
//! F'_k = (a' + a)/2 · F'_{k-1} + (a' - a)/2 · F_{k-1}
//! ```
//!
//! starting from `F_0 = F'_0 = 2` (equivalently `F_1(a) = 2a`). For the
//! operator each classical value becomes the Pauli observable `a . sigma` on
//! its qubit, so `B_1 = 2 a . sigma` and `B_2` is the CHSH operator.

mod classical;
mod operator;
mod settings;

pub use classical::{
    expand_correlators, f_classical, f_pair, f_prime, fnm_identity_check, lhv_max, Assignment,
    CorrelatorPoly, LHV_MAX_QUBITS,
};
pub use operator::{
    bell_expectation, bell_operator, bell_operator_by_terms, bell_operator_pair, bound_check,
    local_coefficients, BoundCheck, LocalCoefficients, OPERATOR_MAX_QUBITS,
};
pub use settings::{
    ghz_optimal_settings, random_direction, weighted_ghz_violation, GhzSettings, MeasurementPair, Settings,
    WeightedGhzReport,
};
