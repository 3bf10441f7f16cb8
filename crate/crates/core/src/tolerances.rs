//! Named numerical tolerances shared by every module.

/// Unit-norm check for state vectors and direction vectors.
pub const NORM_TOL: f64 = 1e-12;

/// Hermiticity check for density matrices (max-abs entry of `A - A^†`).
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Hermiticity check accepted by the eigensolver.
pub const EIGEN_HERMITIAN_TOL: f64 = 1e-10;

/// Trace check for density matrices.
pub const TRACE_TOL: f64 = 1e-12;

/// Most negative eigenvalue tolerated in a density matrix.
pub const PSD_TOL: f64 = 1e-10;

/// Relative reconstruction residual allowed for an eigendecomposition.
pub const EIGEN_RESIDUAL_REL: f64 = 1e-8;

/// Slack when comparing probabilities and expectation values to their bounds.
pub const BOUND_SLACK: f64 = 1e-10;

/// Slack for the `B_n^2 <= 2^(n+1)` operator bound.
pub const OPERATOR_BOUND_SLACK: f64 = 1e-8;

/// Margin used when certifying from exactly computed expectation values.
pub const EXACT_CERT_EPS: f64 = 1e-9;

/// Standard errors used as the certification margin for sampled estimates.
pub const ESTIMATE_SIGMAS: f64 = 4.0;

/// Default finite-difference step for gradient estimates.
pub const FD_STEP: f64 = 1e-6;

/// Default backtracking contraction factor.
pub const BACKTRACK_FACTOR: f64 = 0.5;

/// Default iteration cap per optimizer restart.
pub const MAX_ITERATIONS: usize = 500;

/// Allowed decrease per coordinate-ascent update caused by rounding.
pub const ASCENT_SLACK: f64 = 1e-12;

/// Largest register handled by the dense engine.
pub const MAX_QUBITS: usize = 14;
