use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::qstate::{PureState, Sign};
use crate::{Error, Result};

/// `(|b> ± |b̄>) / sqrt(2)`, where `b̄` is the bitwise complement of `b`.
/// Every such state is a GHZ state with the qubits set in `b` flipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BellBasisState {
    pub n: usize,
    /// Bitstring, qubit 0 most significant.
    pub bits: usize,
    pub sign: Sign,
}

impl BellBasisState {
    pub fn complement(&self) -> usize {
        !self.bits & ((1 << self.n) - 1)
    }

    pub fn to_pure(&self) -> Result<PureState> {
        let mut amp = vec![Complex64::new(0.0, 0.0); 1 << self.n];
        amp[self.bits] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        amp[self.complement()] = Complex64::new(self.sign.value() * FRAC_1_SQRT_2, 0.0);
        PureState::new(self.n, amp)
    }

    /// Label such as `|011> - |100>`.
    pub fn label(&self) -> String {
        let s = |b: usize| format!("{:0width$b}", b, width = self.n);
        let op = if self.sign == Sign::Plus { '+' } else { '-' };
        format!("|{}> {} |{}>", s(self.bits), op, s(self.complement()))
    }
}

/// The `2^n` orthonormal GHZ-type states: bitstrings with qubit 0 set to 0,
/// each with both relative signs.
pub fn bell_basis(n: usize) -> Result<Vec<BellBasisState>> {
    if !(2..=crate::tolerances::MAX_QUBITS).contains(&n) {
        return Err(Error::QubitCount { n, min: 2, max: crate::tolerances::MAX_QUBITS });
    }
    Ok((0..1usize << (n - 1))
        .flat_map(|bits| {
            [Sign::Plus, Sign::Minus]
                .into_iter()
                .map(move |sign| BellBasisState { n, bits, sign })
        })
        .collect())
}

/// `max |G - I|` for the Gram matrix of the given states.
pub fn gram_deviation(states: &[PureState]) -> f64 {
    let mut dev: f64 = 0.0;
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((a.inner(b) - Complex64::new(want, 0.0)).norm());
        }
    }
    dev
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_qubit_basis_is_the_bell_states() {
        let b = bell_basis(2).unwrap();
        let labels: Vec<String> = b.iter().map(|s| s.label()).collect();
        assert_eq!(labels, ["|00> + |11>", "|00> - |11>", "|01> + |10>", "|01> - |10>"]);
    }

    #[test]
    fn three_qubit_basis_contains_flipped_pair() {
        let b = bell_basis(3).unwrap();
        assert_eq!(b.len(), 8);
        assert!(b.iter().any(|s| s.label() == "|011> + |100>"));
        assert!(b.iter().any(|s| s.label() == "|011> - |100>"));
    }

    #[test]
    fn gram_is_identity() {
        for n in 2..=6 {
            let states: Vec<_> = bell_basis(n).unwrap().iter().map(|s| s.to_pure().unwrap()).collect();
            assert!(gram_deviation(&states) < 1e-12);
        }
        assert!(bell_basis(1).is_err());
    }
}
