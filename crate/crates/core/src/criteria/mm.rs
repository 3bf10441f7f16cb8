use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::qstate::spectrum;
use crate::symstate::SymVector;
use crate::{Error, Result};

/// Distance of the `m`-qubit reduction of a symmetric state from the
/// maximally mixed symmetric state (`m + 1` equal eigenvalues).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MMResidual {
    pub n: usize,
    pub m: usize,
    pub spectrum: Vec<f64>,
    pub target: Vec<f64>,
    /// `sum_i (lambda_i - target_i)^2` over descending spectra.
    pub residual: f64,
}

/// Residual at `m = floor(n/2)`, the largest reduction that can be
/// maximally mixed; smaller ones follow from it.
pub fn mm_partial_residual(s: &SymVector) -> Result<MMResidual> {
    mm_partial_residual_at(s, s.n / 2)
}

pub fn mm_partial_residual_at(s: &SymVector, m: usize) -> Result<MMResidual> {
    if s.n < 2 {
        return Err(Error::QubitCount { n: s.n, min: 2, max: crate::tolerances::MAX_QUBITS });
    }
    if m == 0 || m > s.n / 2 {
        return Err(Error::InvalidParameter(format!("m = {m} outside 1..={}", s.n / 2)));
    }
    let psi = s.embed()?;
    let keep: Vec<usize> = (0..m).collect();
    let reduced = psi.reduced(&keep)?;
    let spec = spectrum(reduced.matrix())?.eigenvalues;
    let target: Vec<f64> = (0..spec.len())
        .map(|i| if i <= m { 1.0 / (m + 1) as f64 } else { 0.0 })
        .collect();
    let residual = spec.iter().zip(&target).map(|(l, t)| (l - t).powi(2)).sum();
    Ok(MMResidual { n: s.n, m, spectrum: spec, target, residual })
}

/// Symmetric states whose half-register reductions are maximally mixed,
/// labelled `psi_{n,index}`.
pub fn known_mm_states() -> Vec<(String, SymVector)> {
    let s3 = 3f64.sqrt();
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let r = |v: &[f64]| v.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>();
    let mut out = Vec::new();
    for (tag, sg) in [("+", 1.0), ("-", -1.0)] {
        out.push((format!("psi_3,{tag}1"), 3, r(&[1.0, 0.0, 0.0, sg])));
        out.push((format!("psi_3,{tag}2"), 3, r(&[1.0, sg, -1.0, -sg])));
        out.push((format!("psi_4,{tag}1"), 4, r(&[-3.0, sg * s3, 1.0, sg * s3, -3.0])));
        out.push((format!("psi_6,{tag}1"), 6, r(&[0.0, 1.0, 0.0, 0.0, 0.0, sg, 0.0])));
        out.push((
            format!("psi_6,{tag}3"),
            6,
            vec![c(SQRT_2, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, sg * 0.5), c(0.0, 0.0), c(0.0, 0.0), c(SQRT_2, 0.0)],
        ));
    }
    out.push(("psi_4,2".into(), 4, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0 / s3), c(0.0, 0.0), c(1.0, 0.0)]));
    out.push(("psi_6,2".into(), 6, r(&[-3.0, 0.0, 1.0, 0.0, 1.0, 0.0, -3.0])));
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter()
        .map(|(name, n, coeff)| (name, SymVector::new(n, coeff).expect("n + 1 coefficients")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::Sign;
    use crate::symstate::SymState;

    #[test]
    fn listed_states_have_maximally_mixed_halves() {
        let states = known_mm_states();
        assert_eq!(states.len(), 12);
        for (name, s) in &states {
            let r = mm_partial_residual(s).unwrap();
            assert!(r.residual < 1e-10, "{name}: {}", r.residual);
            for m in 1..r.m {
                assert!(mm_partial_residual_at(s, m).unwrap().residual < 1e-10, "{name} at m = {m}");
            }
        }
    }

    #[test]
    fn product_state_fails() {
        let s = SymState::dicke(0, 4).unwrap().to_vector();
        let r = mm_partial_residual(&s).unwrap();
        assert!(r.residual > 0.1);
        assert_eq!(r.target, vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0]);
    }

    #[test]
    fn ghz3_exact_form() {
        let s = SymState::ghz(3, Sign::Plus).unwrap().to_vector();
        assert!(mm_partial_residual(&s).unwrap().residual < 1e-20);
    }

    #[test]
    fn zero_state_is_an_error() {
        let s = SymVector::from_real(3, &[0.0; 4]).unwrap();
        assert!(matches!(mm_partial_residual(&s), Err(Error::ZeroState)));
    }
}
