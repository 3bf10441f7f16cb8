use num_complex::Complex64;

use super::pauli::Matrix2c;
use super::pure::permutation_map;
use super::{bit, check_qubits, check_subset, split_index_table, spectrum, CMatrix, PureState};
#[cfg(test)]
use super::max_abs;
use crate::tolerances::{HERMITIAN_TOL, PSD_TOL, TRACE_TOL};
use crate::{Error, Result};

/// Hermitian, positive semidefinite, unit-trace `2^n x 2^n` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    mat: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, trace and positivity.
    pub fn new(n: usize, mat: CMatrix) -> Result<Self> {
        check_qubits(n, 1)?;
        let d = 1usize << n;
        if mat.nrows() != d || mat.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: mat.nrows().max(mat.ncols()),
            });
        }
        let rho = Self { n, mat };
        rho.validate()?;
        Ok(rho)
    }

    pub(crate) fn from_parts(n: usize, mat: CMatrix) -> Self {
        Self { n, mat }
    }

    pub fn maximally_mixed(n: usize) -> Result<Self> {
        check_qubits(n, 1)?;
        let d = 1usize << n;
        Ok(Self {
            n,
            mat: CMatrix::identity(d, d) / Complex64::new(d as f64, 0.0),
        })
    }

    /// Convex combination `sum_i w_i rho_i`; weights must be non-negative
    /// and sum to one.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let (_, first) = parts
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty mixture".into()))?;
        let n = first.n;
        let mut total = 0.0;
        let mut mat = CMatrix::zeros(first.dim(), first.dim());
        for &(w, r) in parts {
            if r.n != n {
                return Err(Error::DimensionMismatch { expected: n, actual: r.n });
            }
            if w < 0.0 {
                return Err(Error::InvalidParameter(format!("negative weight {w}")));
            }
            total += w;
            mat += &r.mat * Complex64::new(w, 0.0);
        }
        if (total - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidParameter(format!("weights sum to {total}")));
        }
        Ok(Self { n, mat })
    }

    /// Checks every density-matrix invariant.
    pub fn validate(&self) -> Result<()> {
        let dev = hermitian_deviation(&self.mat);
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let spec = spectrum(&self.mat)?;
        if let Some(&min) = spec.eigenvalues.last() {
            if min < -PSD_TOL {
                return Err(Error::InvalidState(format!("negative eigenvalue {min}")));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    pub fn purity(&self) -> f64 {
        (&self.mat * &self.mat).trace().re
    }

    /// `Tr(rho op)`.
    pub fn expectation(&self, op: &CMatrix) -> Result<Complex64> {
        if op.nrows() != self.dim() || op.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: op.nrows(),
            });
        }
        Ok(trace_product(&self.mat, op))
    }

    /// `<psi| rho |psi>`.
    pub fn fidelity_with(&self, psi: &PureState) -> Result<f64> {
        if psi.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, actual: psi.n() });
        }
        let v = nalgebra::DVector::from_column_slice(psi.amplitudes());
        Ok((v.adjoint() * &self.mat * v)[(0, 0)].re)
    }

    /// Standard partial trace keeping `keep` (in the listed order).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep = check_subset(self.n, keep, false)?;
        let (_, table) = split_index_table(self.n, &keep);
        let dk = table.len();
        let mat = CMatrix::from_fn(dk, dk, |a, b| {
            table[a]
                .iter()
                .zip(&table[b])
                .map(|(&i, &j)| self.mat[(i, j)])
                .sum()
        });
        Ok(DensityMatrix { n: keep.len(), mat })
    }

    /// Reorders qubits: qubit `i` of the result is qubit `order[i]` of `self`.
    pub fn permute(&self, order: &[usize]) -> Result<DensityMatrix> {
        let map = permutation_map(self.n, order)?;
        let d = self.dim();
        let mat = CMatrix::from_fn(d, d, |i, j| self.mat[(map[i], map[j])]);
        Ok(DensityMatrix { n: self.n, mat })
    }

    /// `U rho U^dagger` for a single-qubit `U`.
    pub fn conjugate_single(&self, qubit: usize, u: &Matrix2c) -> Result<DensityMatrix> {
        if qubit >= self.n {
            return Err(Error::QubitIndex { index: qubit, n: self.n });
        }
        let mut mat = self.mat.clone();
        conjugate_single_in_place(&mut mat, self.n, qubit, u);
        Ok(DensityMatrix { n: self.n, mat })
    }
}

/// `m -> U m U^dagger` on one qubit.
pub(crate) fn conjugate_single_in_place(m: &mut CMatrix, n: usize, qubit: usize, u: &Matrix2c) {
    let stride = bit(n, qubit);
    let d = m.nrows();
    // Left multiplication acts on rows.
    for c in 0..d {
        for r in 0..d {
            if r & stride == 0 {
                let (a, b) = (m[(r, c)], m[(r | stride, c)]);
                m[(r, c)] = u[(0, 0)] * a + u[(0, 1)] * b;
                m[(r | stride, c)] = u[(1, 0)] * a + u[(1, 1)] * b;
            }
        }
    }
    // Right multiplication by U^dagger acts on columns.
    for c in 0..d {
        if c & stride != 0 {
            continue;
        }
        for r in 0..d {
            let (a, b) = (m[(r, c)], m[(r, c | stride)]);
            m[(r, c)] = a * u[(0, 0)].conj() + b * u[(0, 1)].conj();
            m[(r, c | stride)] = a * u[(1, 0)].conj() + b * u[(1, 1)].conj();
        }
    }
}

pub(crate) fn hermitian_deviation(m: &CMatrix) -> f64 {
    let d = m.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..d {
        for j in i..d {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// `Tr(a b)` without forming the product.
pub(crate) fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let d = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..d {
        for k in 0..d {
            acc += a[(j, k)] * b[(k, j)];
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::Sign;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn ghz_single_qubit_reduction_is_maximally_mixed() {
        for n in 2..=6 {
            let rho = PureState::ghz(n, Sign::Plus).unwrap().to_density();
            for q in 0..n {
                let r = rho.partial_trace(&[q]).unwrap();
                let want = CMatrix::identity(2, 2) * c(0.5);
                assert!(max_abs(&(r.matrix() - want)) < 1e-12);
            }
        }
    }

    #[test]
    fn product_state_reduction() {
        let up = PureState::zeros(1).unwrap();
        let rho = up.tensor(&up).unwrap().to_density();
        let r = rho.partial_trace(&[0]).unwrap();
        assert!(max_abs(&(r.matrix() - up.to_density().matrix())) < 1e-15);
    }

    #[test]
    fn ghz4_two_qubit_reduction() {
        let rho = PureState::ghz(4, Sign::Plus).unwrap().to_density();
        let r = rho.partial_trace(&[0, 1]).unwrap();
        let want = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(0.5),
            c(0.0),
            c(0.0),
            c(0.5),
        ]));
        assert!(max_abs(&(r.matrix() - want)) < 1e-12);
    }

    #[test]
    fn partial_trace_rejects_bad_keep_sets() {
        let rho = DensityMatrix::maximally_mixed(3).unwrap();
        assert!(rho.partial_trace(&[]).is_err());
        assert!(rho.partial_trace(&[0, 1, 2]).is_err());
        assert!(rho.partial_trace(&[3]).is_err());
    }

    #[test]
    fn validation_catches_bad_matrices() {
        let mut m = CMatrix::identity(2, 2) * c(0.5);
        assert!(DensityMatrix::new(1, m.clone()).is_ok());
        m[(0, 1)] = Complex64::new(0.0, 0.1);
        assert!(matches!(DensityMatrix::new(1, m), Err(Error::NotHermitian { .. })));
        let not_psd = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.5), c(-0.5)]));
        assert!(DensityMatrix::new(1, not_psd).is_err());
        assert!(DensityMatrix::new(1, CMatrix::identity(2, 2)).is_err());
    }

    #[test]
    fn pure_and_mixed_reductions_agree() {
        let psi = PureState::normalized(
            3,
            (0..8).map(|i| Complex64::new(i as f64 - 3.0, 0.5 * i as f64)).collect(),
        )
        .unwrap();
        let a = psi.reduced(&[2, 0]).unwrap();
        let b = psi.to_density().partial_trace(&[2, 0]).unwrap();
        assert!(max_abs(&(a.matrix() - b.matrix())) < 1e-14);
    }
}
