//! Independent white noise on every qubit,
//! `d rho/dt = sum_j (sum_k sigma_k^(j) rho sigma_k^(j) - 3 rho)`.
//!
//! On one qubit the generator leaves the identity alone and shrinks the
//! Bloch vector at rate 4, so a Pauli string of weight `w` decays as
//! `exp(-4 w t)`. Applying the single-qubit channel
//! `X -> l X + (1 - l) Tr_j(X) ⊗ I/2` with `l = exp(-4t)` to each qubit in
//! turn realizes exactly that decay.

use num_complex::Complex64;

use crate::qstate::{bloch_vector, pauli, CMatrix, DensityMatrix, PureState};
use crate::{Error, Result};

/// Exact solution of the master equation at time `t`.
pub fn depolarize(rho: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!("time must be non-negative, got {t}")));
    }
    let n = rho.n();
    let shrink = (-4.0 * t).exp();
    let mut m = rho.matrix().clone();
    for q in 0..n {
        let stride = 1usize << (n - 1 - q);
        let d = m.nrows();
        let mut out = m.clone();
        for r in 0..d {
            for c in 0..d {
                // Within the qubit's 2x2 block: off-diagonals shrink, the
                // diagonal pair relaxes towards its mean.
                let (rb, cb) = (r & stride != 0, c & stride != 0);
                if rb != cb {
                    out[(r, c)] = m[(r, c)] * shrink;
                } else {
                    let partner = m[(r ^ stride, c ^ stride)];
                    let mean = (m[(r, c)] + partner) * 0.5;
                    out[(r, c)] = mean + (m[(r, c)] - mean) * shrink;
                }
            }
        }
        m = out;
    }
    Ok(DensityMatrix::from_parts(n, m))
}

/// Right-hand side of the master equation.
pub fn master_equation_rhs(m: &CMatrix, n: usize) -> CMatrix {
    let mut out = m * Complex64::new(-3.0 * n as f64, 0.0);
    for q in 0..n {
        for p in [pauli::x(), pauli::y(), pauli::z()] {
            let mut term = m.clone();
            crate::qstate::conjugate_single_in_place(&mut term, n, q, &p);
            out += term;
        }
    }
    out
}

/// Fixed-step fourth-order Runge-Kutta integration of the master equation.
pub fn depolarize_integrated(rho: &DensityMatrix, t: f64, steps: usize) -> Result<DensityMatrix> {
    if !(t >= 0.0) || steps == 0 {
        return Err(Error::InvalidParameter(format!("bad integration request t = {t}, steps = {steps}")));
    }
    let n = rho.n();
    let h = Complex64::new(t / steps as f64, 0.0);
    let half = Complex64::new(0.5, 0.0);
    let sixth = Complex64::new(1.0 / 6.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    let mut m = rho.matrix().clone();
    for _ in 0..steps {
        let k1 = master_equation_rhs(&m, n);
        let k2 = master_equation_rhs(&(&m + &k1 * h * half), n);
        let k3 = master_equation_rhs(&(&m + &k2 * h * half), n);
        let k4 = master_equation_rhs(&(&m + &k3 * h), n);
        m += (k1 + k2 * two + k3 * two + k4) * h * sixth;
    }
    Ok(DensityMatrix::from_parts(n, m))
}

/// `d/dt <psi| rho_t |psi>` at `t = 0` for `rho_0 = |psi><psi|`:
/// `sum_j |<sigma_j>|^2 - 3n`.
pub fn fidelity_decay_slope(psi: &PureState) -> Result<f64> {
    let mut total = 0.0;
    for q in 0..psi.n() {
        total += bloch_vector(psi, q)?.iter().map(|x| x * x).sum::<f64>();
    }
    Ok(total - 3.0 * psi.n() as f64)
}

/// One-sided second-order finite-difference estimate of the same slope,
/// taken along the exact evolution.
pub fn numeric_fidelity_slope(psi: &PureState, h: f64) -> Result<f64> {
    let rho = psi.to_density();
    let f = |t: f64| -> Result<f64> { depolarize(&rho, t)?.fidelity_with(psi) };
    Ok((-3.0 * f(0.0)? + 4.0 * f(h)? - f(2.0 * h)?) / (2.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{max_abs, Sign};

    #[test]
    fn zero_time_is_identity() {
        let rho = PureState::ghz(3, Sign::Plus).unwrap().to_density();
        let out = depolarize(&rho, 0.0).unwrap();
        assert!(max_abs(&(out.matrix() - rho.matrix())) < 1e-15);
        assert!(depolarize(&rho, -0.1).is_err());
    }

    #[test]
    fn single_qubit_bloch_decay() {
        let up = PureState::zeros(1).unwrap().to_density();
        for t in [0.01, 0.1, 0.7] {
            let b = bloch_vector(&depolarize(&up, t).unwrap(), 0).unwrap();
            assert!((b[2] - (-4.0 * t).exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn exact_solution_matches_integrator() {
        let psi = PureState::normalized(
            3,
            (0..8).map(|i| Complex64::new(1.0 + i as f64, (i * i) as f64 * 0.1)).collect(),
        )
        .unwrap();
        let rho = psi.to_density();
        for t in [0.05, 0.2, 0.5] {
            let a = depolarize(&rho, t).unwrap();
            let b = depolarize_integrated(&rho, t, 2000).unwrap();
            assert!(max_abs(&(a.matrix() - b.matrix())) < 1e-6);
        }
    }

    #[test]
    fn ghz_slope_matches_fragility() {
        for n in 2..=5 {
            let g = PureState::ghz(n, Sign::Plus).unwrap();
            let analytic = fidelity_decay_slope(&g).unwrap();
            assert!((analytic + 3.0 * n as f64).abs() < 1e-12);
            let numeric = numeric_fidelity_slope(&g, 1e-6).unwrap();
            assert!((numeric - analytic).abs() < 1e-6, "n = {n}: {numeric} vs {analytic}");
        }
    }
}
