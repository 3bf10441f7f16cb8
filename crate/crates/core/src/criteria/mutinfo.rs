use serde::{Deserialize, Serialize};

use crate::qstate::{outcome_distribution, MeasurementBasis, StateView};
use crate::Result;

/// `I = sum_j H(a_j) - H(a_1, ..., a_n)` in bits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MutualInformation {
    pub bits: f64,
    pub marginal_entropies: Vec<f64>,
    pub joint_entropy: f64,
}

/// Shannon entropy in bits with `0 log 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

pub fn mutual_information<'a>(
    state: impl Into<StateView<'a>>,
    basis: &MeasurementBasis,
) -> Result<MutualInformation> {
    let state = state.into();
    let n = state.n();
    let joint = outcome_distribution(state, basis)?;
    let marginal_entropies: Vec<f64> = (0..n)
        .map(|q| {
            let b = 1usize << (n - 1 - q);
            let minus: f64 = joint.iter().enumerate().filter(|(i, _)| i & b != 0).map(|(_, p)| p).sum();
            shannon_entropy(&[1.0 - minus, minus])
        })
        .collect();
    let joint_entropy = shannon_entropy(&joint);
    Ok(MutualInformation {
        bits: marginal_entropies.iter().sum::<f64>() - joint_entropy,
        marginal_entropies,
        joint_entropy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{Direction, PureState, Sign};
    use crate::symstate::SymState;

    #[test]
    fn ghz_carries_n_minus_one_bits() {
        for n in 2..=8 {
            let g = PureState::ghz(n, Sign::Plus).unwrap();
            let mi = mutual_information(&g, &MeasurementBasis::z(n)).unwrap();
            assert!((mi.bits - (n as f64 - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn product_state_carries_none() {
        let psi = PureState::product(&[
            [1.0.into(), 2.0.into()],
            [0.3.into(), (-1.0).into()],
            [1.0.into(), 0.0.into()],
        ])
        .unwrap();
        let basis = MeasurementBasis::new(vec![Direction::X, Direction::Z, Direction::in_xy(0.4)]);
        assert!(mutual_information(&psi, &basis).unwrap().bits.abs() < 1e-12);
    }

    #[test]
    fn triplet_carries_one_bit() {
        let t = SymState::dicke(1, 2).unwrap().embed().unwrap();
        let mi = mutual_information(&t, &MeasurementBasis::z(2)).unwrap();
        assert!((mi.bits - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_conventions() {
        assert_eq!(shannon_entropy(&[1.0, 0.0]), 0.0);
        assert!((shannon_entropy(&[0.25; 4]) - 2.0).abs() < 1e-15);
    }
}
