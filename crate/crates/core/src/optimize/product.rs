use rand::Rng as _;

use super::settings::ascend_once;
use super::{run_restarts, Argmax, OptConfig, OptResult, Restart, Sense};
use crate::bellop::{bell_expectation, bell_operator, Settings};
use crate::qstate::{eigh, split_index_table, CMatrix, PureState, StateView};
use crate::{Complex64, Error, Result};

const MAX_PRODUCT_QUBITS: usize = 8;

/// `(I_keep ⊗ <env|) op (I_keep ⊗ |env>)`: the operator seen by the `keep`
/// qubits (in the listed order) when the others, in ascending order, are in
/// the pure state `env`.
pub fn effective_operator(op: &CMatrix, n: usize, keep: &[usize], env: &PureState) -> Result<CMatrix> {
    if op.nrows() != 1 << n || op.ncols() != 1 << n {
        return Err(Error::DimensionMismatch { expected: 1 << n, actual: op.nrows() });
    }
    crate::qstate::check_subset(n, keep, true)?;
    if env.n() + keep.len() != n {
        return Err(Error::DimensionMismatch { expected: n - keep.len(), actual: env.n() });
    }
    let (_, table) = split_index_table(n, keep);
    let phi = env.amplitudes();
    let dk = 1usize << keep.len();
    Ok(CMatrix::from_fn(dk, dk, |a, b| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (t, pt) in phi.iter().enumerate() {
            let row = table[a][t];
            let mut inner = Complex64::new(0.0, 0.0);
            for (s, ps) in phi.iter().enumerate() {
                inner += op[(row, table[b][s])] * ps;
            }
            acc += pt.conj() * inner;
        }
        acc
    }))
}

fn top_vector(h: &CMatrix, n: usize) -> Result<PureState> {
    PureState::normalized(n, eigh(h)?.top_vector().iter().copied().collect())
}

fn random_amplitudes(len: usize, rng: &mut crate::rng::Rng) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

fn assemble(block: &PureState, product: &[[Complex64; 2]]) -> Result<PureState> {
    if product.is_empty() {
        return Ok(block.clone());
    }
    block.tensor(&PureState::product(product)?)
}

fn single(psi: &PureState) -> [Complex64; 2] {
    [psi.amplitudes()[0], psi.amplitudes()[1]]
}

/// Largest `<B_n>` over settings and states of the form
/// `|block> ⊗ |phi_1> ⊗ ... ⊗ |phi_m>`, the block holding the first `n - m`
/// qubits. Block, single-qubit states and settings are updated in turn, each
/// to its exact optimum given the others.
pub fn product_bound_max(n: usize, m: usize, cfg: &OptConfig) -> Result<OptResult> {
    if !(1 <= m && m < n && n <= MAX_PRODUCT_QUBITS) {
        return Err(Error::InvalidParameter(format!("need 1 <= m < n <= {MAX_PRODUCT_QUBITS}, got n = {n}, m = {m}")));
    }
    let nb = n - m;
    let block_qubits: Vec<usize> = (0..nb).collect();
    run_restarts(
        cfg,
        Sense::Maximize,
        |_, rng| {
            let mut st = Settings::random(n, rng);
            let mut block = PureState::normalized(nb, random_amplitudes(1 << nb, rng))?;
            let mut product: Vec<[Complex64; 2]> = (0..m)
                .map(|_| {
                    let v = random_amplitudes(2, rng);
                    [v[0], v[1]]
                })
                .collect();
            let mut value = bell_expectation(&assemble(&block, &product)?, &st)?;
            let mut trace = vec![value];
            let mut converged = false;
            for _ in 0..cfg.max_iterations {
                let b = bell_operator(&st)?;
                let env = PureState::product(&product)?;
                block = top_vector(&effective_operator(&b, n, &block_qubits, &env)?, nb)?;
                for j in 0..m {
                    let others: Vec<[Complex64; 2]> =
                        product.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, p)| *p).collect();
                    let env = assemble(&block, &others)?;
                    product[j] = single(&top_vector(&effective_operator(&b, n, &[nb + j], &env)?, 1)?);
                }
                let psi = assemble(&block, &product)?;
                ascend_once(StateView::Pure(&psi), &mut st, value)?;
                let next = bell_expectation(&psi, &st)?;
                trace.push(next);
                let gain = next - value;
                value = next;
                if gain < cfg.tol {
                    converged = true;
                    break;
                }
            }
            Ok(Restart {
                trace,
                argmax: Argmax::ProductState {
                    settings: st,
                    block: block.into_amplitudes(),
                    product,
                },
                converged,
            })
        },
        |arg| match arg {
            Argmax::ProductState { settings, block, product } => {
                let psi = assemble(&PureState::new(nb, block.clone())?, product)?;
                bell_expectation(&psi, settings)
            }
            _ => unreachable!("product search returns a product state"),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{max_abs, Sign};

    #[test]
    fn effective_operator_of_product_environment() {
        // op = A ⊗ B with env |phi> on qubit 1 gives <phi|B|phi> A.
        let a = CMatrix::from_fn(2, 2, |r, c| Complex64::new((r + 2 * c) as f64, r as f64 - c as f64));
        let bm = CMatrix::from_fn(2, 2, |r, c| Complex64::new(1.0 + r as f64 * c as f64, 0.0));
        let op = a.kronecker(&bm);
        let phi = PureState::normalized(1, vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]).unwrap();
        let v = nalgebra::DVector::from_vec(phi.amplitudes().to_vec());
        let scale = (v.adjoint() * &bm * &v)[(0, 0)];
        let got = effective_operator(&op, 2, &[0], &phi).unwrap();
        assert!(max_abs(&(got - a * scale)) < 1e-14);
    }

    #[test]
    fn effective_operator_expectation_identity() {
        let st = Settings::random(3, &mut crate::rng::seeded(4));
        let b = bell_operator(&st).unwrap();
        let block = PureState::ghz(2, Sign::Plus).unwrap();
        let q = [Complex64::new(0.8, 0.0), Complex64::new(0.0, 0.6)];
        let psi = assemble(&block, &[q]).unwrap();
        let h = effective_operator(&b, 3, &[0, 1], &PureState::product(&[q]).unwrap()).unwrap();
        let v = nalgebra::DVector::from_vec(block.amplitudes().to_vec());
        let via_eff = (v.adjoint() * h * v)[(0, 0)].re;
        assert!((via_eff - bell_expectation(&psi, &st).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn one_independent_qubit() {
        let r = product_bound_max(3, 1, &OptConfig::new(10, 1e-13, 1)).unwrap();
        assert!((r.best_value - 8f64.sqrt()).abs() < 1e-5, "{}", r.best_value);
        assert!(r.is_sound());
        let r = product_bound_max(2, 1, &OptConfig::new(5, 1e-13, 1)).unwrap();
        assert!((r.best_value - 2.0).abs() < 1e-5, "{}", r.best_value);
    }

    #[test]
    fn rejects_bad_split() {
        let c = OptConfig::default();
        assert!(product_bound_max(3, 0, &c).is_err());
        assert!(product_bound_max(3, 3, &c).is_err());
        assert!(product_bound_max(9, 1, &c).is_err());
    }
}
