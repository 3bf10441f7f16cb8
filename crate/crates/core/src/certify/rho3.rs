use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_8, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use super::{certify_depth, CertResult};
use crate::bellop::{bell_expectation, MeasurementPair, Settings};
use crate::optimize::{max_violation_settings, OptConfig, OptResult};
use crate::qstate::{DensityMatrix, Direction, PureState};
use crate::tolerances::EXACT_CERT_EPS;
use crate::{Complex64, Result};

/// Value printed for this example in the literature, `2(1 + sqrt 2)`.
pub const RHO3_CLAIMED: f64 = 2.0 * (1.0 + SQRT_2);

/// `(P_S ⊗ P_0 + P_0 ⊗ P_S) / 2` with `P_S` the singlet projector and
/// `P_0` the projector on `|0>` (spin up along z).
pub fn rho3_state() -> Result<DensityMatrix> {
    let z = Complex64::new(0.0, 0.0);
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let singlet = PureState::new(2, vec![z, s, -s, z])?;
    let up = PureState::basis(1, 0)?;
    let left = singlet.tensor(&up)?.to_density();
    let right = up.tensor(&singlet)?.to_density();
    DensityMatrix::mixture(&[(0.5, &left), (0.5, &right)])
}

/// Settings in the xz-plane, angles measured from z:
/// `a = -a' = pi/8`, `b = pi`, `b' = pi/2`, `c = -c' = pi/8`.
pub fn rho3_listed_settings() -> Settings {
    let pair = |a: f64, ap: f64| MeasurementPair::new(Direction::in_xz_from_z(a), Direction::in_xz_from_z(ap));
    Settings::new(vec![
        pair(FRAC_PI_8, -FRAC_PI_8),
        pair(PI, FRAC_PI_2),
        pair(FRAC_PI_8, -FRAC_PI_8),
    ])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rho3Report {
    pub trace: f64,
    pub purity: f64,
    pub value_at_listed_angles: f64,
    pub claimed_value: f64,
    pub quantum_maximum: f64,
    pub optimized: OptResult,
    /// Depth certified from the optimized value.
    pub certification: CertResult,
    /// What the ladder makes of the claimed value.
    pub claimed_certification: CertResult,
    pub notes: Vec<String>,
}

/// The three-qubit mixture `rho3_state` evaluated at the listed angles and
/// at numerically optimal settings.
pub fn example_rho3(cfg: &OptConfig) -> Result<(DensityMatrix, Rho3Report)> {
    let rho = rho3_state()?;
    let value_at_listed_angles = bell_expectation(&rho, &rho3_listed_settings())?;
    let optimized = max_violation_settings(&rho, cfg)?;
    let certification = certify_depth(optimized.best_value, 3, EXACT_CERT_EPS)?;
    let claimed_certification = certify_depth(RHO3_CLAIMED, 3, EXACT_CERT_EPS)?;
    let quantum_maximum = 4.0;
    let mut notes = vec![format!(
        "value at the listed angles is {value_at_listed_angles:.12}, numerical maximum is {:.12}",
        optimized.best_value
    )];
    if RHO3_CLAIMED > quantum_maximum {
        notes.push(format!(
            "claimed value {RHO3_CLAIMED:.12} exceeds the three-qubit quantum maximum {quantum_maximum} and cannot be reproduced"
        ));
    }
    let report = Rho3Report {
        trace: rho.trace(),
        purity: rho.purity(),
        value_at_listed_angles,
        claimed_value: RHO3_CLAIMED,
        quantum_maximum,
        optimized,
        certification,
        claimed_certification,
        notes,
    };
    Ok((rho, report))
}
