//! Maximal-entanglement criteria for symmetric n-qubit states.

mod depolarize;
mod distribute;
mod fragility;
mod mm;
mod mutinfo;

pub use depolarize::{
    depolarize, depolarize_integrated, fidelity_decay_slope, master_equation_rhs,
    numeric_fidelity_slope,
};
pub use distribute::{distribute_check, DistributeReport, TrialOutcome};
pub use fragility::{fragility, FragilityReport, DEFAULT_FRAGILITY_TOL};
pub use mm::{known_mm_states, mm_partial_residual, mm_partial_residual_at, MMResidual};
pub use mutinfo::{mutual_information, shannon_entropy, MutualInformation};
