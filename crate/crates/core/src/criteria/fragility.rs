use serde::{Deserialize, Serialize};

use crate::qstate::{bloch_vector, PureState};
use crate::Result;

pub const DEFAULT_FRAGILITY_TOL: f64 = 1e-10;

/// Initial sensitivity of a pure state to independent white noise on every
/// qubit: `|sum_j |<sigma_j>|^2 - 3n|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FragilityReport {
    pub n: usize,
    pub bloch_vectors: Vec<[f64; 3]>,
    pub fragility: f64,
    /// Every Bloch vector has norm at most `tol`.
    pub is_maximal: bool,
    pub tol: f64,
}

impl FragilityReport {
    pub fn max_bloch_norm(&self) -> f64 {
        self.bloch_vectors
            .iter()
            .map(|b| (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt())
            .fold(0.0, f64::max)
    }
}

pub fn fragility(psi: &PureState, tol: f64) -> Result<FragilityReport> {
    let n = psi.n();
    let bloch_vectors = (0..n).map(|q| bloch_vector(psi, q)).collect::<Result<Vec<_>>>()?;
    let total: f64 = bloch_vectors.iter().flatten().map(|x| x * x).sum();
    let mut report = FragilityReport {
        n,
        bloch_vectors,
        fragility: (total - 3.0 * n as f64).abs(),
        is_maximal: false,
        tol,
    };
    report.is_maximal = report.max_bloch_norm() <= tol;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::Sign;
    use crate::symstate::SymState;

    #[test]
    fn ghz_is_maximally_fragile() {
        for n in 2..=6 {
            let r = fragility(&PureState::ghz(n, Sign::Plus).unwrap(), DEFAULT_FRAGILITY_TOL).unwrap();
            assert!((r.fragility - 3.0 * n as f64).abs() < 1e-12);
            assert!(r.is_maximal);
        }
    }

    #[test]
    fn product_state_is_not() {
        let r = fragility(&PureState::zeros(4).unwrap(), DEFAULT_FRAGILITY_TOL).unwrap();
        assert!((r.fragility - 8.0).abs() < 1e-12);
        assert!(!r.is_maximal);
        for b in &r.bloch_vectors {
            assert!((b[2] - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn w_state() {
        // |1,3>/sqrt(3): each qubit is |1> with probability 1/3, so <Z> = 1/3.
        let w = SymState::dicke(1, 3).unwrap().embed().unwrap();
        let r = fragility(&w, DEFAULT_FRAGILITY_TOL).unwrap();
        for b in &r.bloch_vectors {
            assert!((b[2] - 1.0 / 3.0).abs() < 1e-14);
            assert!(b[0].abs() < 1e-14 && b[1].abs() < 1e-14);
        }
        assert!((r.fragility - (9.0 - 3.0 / 9.0)).abs() < 1e-12);
        assert!(!r.is_maximal);
    }
}
