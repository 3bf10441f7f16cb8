//! Entanglement-depth certification from Bell-Klyshko values.
//!
//! A state in which `k` qubits are unentangled from the rest reaches at most
//! `bound(k) = 2^((n-k+1)/2)`. A value `E` is therefore consistent with at
//! most `K = max{k : E <= bound(k) + eps}` independent qubits, and at least
//! `n - K` qubits must be entangled.

mod estimate;
mod rho3;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use estimate::{estimate_e, Estimate, TermEstimate, MIN_SHOTS};
pub use rho3::{example_rho3, rho3_listed_settings, rho3_state, Rho3Report, RHO3_CLAIMED};

pub const EXCEEDS_QUANTUM_BOUND: &str = "exceeds quantum bound";

/// `bound(k) = 2^((n-k+1)/2)` for `k = 0..=n`.
pub fn thresholds(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::QubitCount { n, min: 2, max: usize::MAX });
    }
    Ok((0..=n).map(|k| 2f64.powf((n - k + 1) as f64 / 2.0)).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertResult {
    pub n: usize,
    #[serde(rename = "E")]
    pub e: f64,
    pub epsilon: f64,
    pub thresholds: Vec<f64>,
    /// `None` when `E` is above every bound.
    pub max_consistent_independent: Option<usize>,
    pub certified_entangled: Option<usize>,
    pub flags: Vec<String>,
}

pub fn certify_depth(e: f64, n: usize, epsilon: f64) -> Result<CertResult> {
    if !(epsilon >= 0.0) {
        return Err(Error::InvalidParameter(format!("epsilon must be non-negative, got {epsilon}")));
    }
    if !(e >= 0.0) {
        return Err(Error::InvalidParameter(format!("E must be non-negative, got {e}")));
    }
    let thresholds = thresholds(n)?;
    let max_consistent_independent = thresholds.iter().rposition(|&b| e <= b + epsilon);
    let mut flags = Vec::new();
    if max_consistent_independent.is_none() {
        flags.push(EXCEEDS_QUANTUM_BOUND.to_string());
    }
    Ok(CertResult {
        n,
        e,
        epsilon,
        thresholds,
        max_consistent_independent,
        certified_entangled: max_consistent_independent.map(|k| n - k),
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladders() {
        let t = thresholds(3).unwrap();
        let want = [4.0, 2f64.powf(1.5), 2.0, 2f64.sqrt()];
        for (a, b) in t.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(thresholds(2).unwrap().len(), 3);
        for n in 2..12 {
            let t = thresholds(n).unwrap();
            assert_eq!(t[n - 1], 2.0);
            assert!(t.windows(2).all(|w| w[0] > w[1]));
        }
        assert!(thresholds(1).is_err());
    }

    #[test]
    fn depth_examples() {
        assert_eq!(certify_depth(2.5, 3, 1e-9).unwrap().certified_entangled, Some(2));
        assert_eq!(certify_depth(3.0, 3, 1e-9).unwrap().certified_entangled, Some(3));
        assert_eq!(certify_depth(1.0, 5, 1e-9).unwrap().certified_entangled, Some(0));
        let over = certify_depth(4.5, 3, 1e-9).unwrap();
        assert_eq!(over.certified_entangled, None);
        assert_eq!(over.flags, vec![EXCEEDS_QUANTUM_BOUND.to_string()]);
    }

    #[test]
    fn margin_is_applied() {
        assert_eq!(certify_depth(2.0 + 1e-10, 3, 1e-9).unwrap().certified_entangled, Some(1));
        assert_eq!(certify_depth(2.0 + 1e-8, 3, 1e-9).unwrap().certified_entangled, Some(2));
        assert!(certify_depth(2.0, 3, -1.0).is_err());
        assert!(certify_depth(-1.0, 3, 0.0).is_err());
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(certify_depth(2.5, 3, 1e-9).unwrap()).unwrap();
        for key in ["n", "E", "epsilon", "thresholds", "certified_entangled", "flags"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
