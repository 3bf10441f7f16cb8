use nalgebra::{DMatrix, DVector};
use rand::Rng as _;

use super::{run_restarts, Argmax, OptConfig, OptResult, Restart, Sense};
use crate::criteria::mm_partial_residual;
use crate::symstate::SymVector;
use crate::{Complex64, Error, Result};

const MIN_QUBITS: usize = 2;
const MAX_QUBITS: usize = 8;
const ARMIJO: f64 = 1e-4;
const MIN_STEP: f64 = 1e-16;

fn to_state(n: usize, x: &DVector<f64>) -> SymVector {
    SymVector { n, coeff: (0..=n).map(|j| Complex64::new(x[2 * j], x[2 * j + 1])).collect() }
}

fn objective(n: usize, x: &DVector<f64>) -> f64 {
    match mm_partial_residual(&to_state(n, x)) {
        Ok(r) => r.residual,
        Err(_) => f64::INFINITY,
    }
}

fn gradient(n: usize, x: &DVector<f64>, h: f64) -> DVector<f64> {
    let mut probe = x.clone();
    DVector::from_fn(x.len(), |i, _| {
        probe[i] = x[i] + h;
        let up = objective(n, &probe);
        probe[i] = x[i] - h;
        let down = objective(n, &probe);
        probe[i] = x[i];
        (up - down) / (2.0 * h)
    })
}

fn unit(s: &SymVector) -> SymVector {
    let scale = 1.0 / s.norm_sqr().sqrt();
    SymVector { n: s.n, coeff: s.coeff.iter().map(|c| c * scale).collect() }
}

/// Minimises the distance between the half-register spectrum of a
/// symmetric state and the maximally mixed symmetric spectrum. Each restart
/// runs BFGS on the real and imaginary parts of the `n + 1` symmetric
/// coefficients with a central-difference gradient and backtracking line
/// search. Overall norm and phase are flat directions of the objective.
pub fn search_mm_partial(n: usize, cfg: &OptConfig) -> Result<OptResult> {
    if !(MIN_QUBITS..=MAX_QUBITS).contains(&n) {
        return Err(Error::QubitCount { n, min: MIN_QUBITS, max: MAX_QUBITS });
    }
    let dim = 2 * (n + 1);
    run_restarts(
        cfg,
        Sense::Minimize,
        |_, rng| {
            let mut x = DVector::from_fn(dim, |_, _| rng.random_range(-1.0..1.0));
            let mut f = objective(n, &x);
            let mut g = gradient(n, &x, cfg.fd_step);
            let mut hinv = DMatrix::<f64>::identity(dim, dim);
            let mut trace = vec![f];
            let mut converged = false;
            for _ in 0..cfg.max_iterations {
                let mut d = -(&hinv * &g);
                let mut slope = g.dot(&d);
                if slope >= 0.0 {
                    hinv = DMatrix::identity(dim, dim);
                    d = -g.clone();
                    slope = -g.norm_squared();
                }
                let mut step = 1.0;
                let accepted = loop {
                    let trial = &x + &d * step;
                    let ft = objective(n, &trial);
                    if ft <= f + ARMIJO * step * slope {
                        break Some((trial, ft));
                    }
                    step *= cfg.backtrack;
                    if step < MIN_STEP {
                        break None;
                    }
                };
                let Some((next, f_next)) = accepted else {
                    converged = true;
                    break;
                };
                let g_next = gradient(n, &next, cfg.fd_step);
                let s = &next - &x;
                let y = &g_next - &g;
                let sy = s.dot(&y);
                if sy > 1e-18 {
                    let rho = 1.0 / sy;
                    let i = DMatrix::<f64>::identity(dim, dim);
                    let left = &i - &s * y.transpose() * rho;
                    let right = &i - &y * s.transpose() * rho;
                    hinv = &left * &hinv * &right + &s * s.transpose() * rho;
                }
                let gain = f - f_next;
                x = next;
                f = f_next;
                g = g_next;
                trace.push(f);
                if gain < cfg.tol {
                    converged = true;
                    break;
                }
            }
            Ok(Restart { trace, argmax: Argmax::SymState { state: unit(&to_state(n, &x)) }, converged })
        },
        |arg| match arg {
            Argmax::SymState { state } => Ok(mm_partial_residual(state)?.residual),
            _ => unreachable!("state search returns a symmetric state"),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(restarts: usize) -> OptConfig {
        OptConfig { restarts, tol: 1e-16, seed: 5, ..OptConfig::default() }
    }

    #[test]
    fn finds_three_qubit_solution() {
        let r = search_mm_partial(3, &cfg(8)).unwrap();
        assert!(r.best_value < 1e-9, "{}", r.best_value);
        assert!(r.is_sound());
        for t in &r.traces {
            assert!(t.windows(2).all(|w| w[1] <= w[0]));
        }
        let Argmax::SymState { state } = &r.argmax else { panic!() };
        assert!((state.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gradient_matches_analytic_purity_form() {
        // On symmetric states the residual equals Tr(rho_m^2) - 1/(m+1).
        let x = DVector::from_fn(8, |i, _| (i as f64 * 0.7).sin());
        let s = to_state(3, &x);
        let rho = s.embed().unwrap().reduced(&[0]).unwrap();
        assert!((objective(3, &x) - (rho.purity() - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(search_mm_partial(1, &cfg(1)).is_err());
        assert!(search_mm_partial(9, &cfg(1)).is_err());
    }
}
