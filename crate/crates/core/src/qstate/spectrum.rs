use nalgebra::{DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::density::hermitian_deviation;
use super::{max_abs, CMatrix};
use crate::tolerances::EIGEN_HERMITIAN_TOL;
use crate::{Error, Result};

/// Real eigenvalues sorted in descending order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }
}

/// Eigendecomposition of a Hermitian matrix; column `k` of `vectors`
/// belongs to `values[k]`, largest first.
#[derive(Clone, Debug)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl Eigh {
    /// `max |H - V diag(values) V^dagger|`.
    pub fn reconstruction_residual(&self, h: &CMatrix) -> f64 {
        let diag = CMatrix::from_diagonal(&DVector::from_iterator(
            self.values.len(),
            self.values.iter().map(|&v| Complex64::new(v, 0.0)),
        ));
        max_abs(&(&self.vectors * diag * self.vectors.adjoint() - h))
    }

    pub fn top_vector(&self) -> DVector<Complex64> {
        self.vectors.column(0).into_owned()
    }
}

/// Dense Hermitian diagonalization.
pub fn eigh(h: &CMatrix) -> Result<Eigh> {
    if h.nrows() != h.ncols() {
        return Err(Error::DimensionMismatch {
            expected: h.nrows(),
            actual: h.ncols(),
        });
    }
    let dev = hermitian_deviation(h);
    if dev > EIGEN_HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let eig = SymmetricEigen::new(h.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(h.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(Eigh { values, vectors })
}

pub fn spectrum(h: &CMatrix) -> Result<Spectrum> {
    Ok(Spectrum { eigenvalues: eigh(h)?.values })
}

/// Largest eigenvalue by power iteration on `H + s I`, where `s` is a
/// Gershgorin bound that makes the shifted matrix positive semidefinite.
pub fn power_max_eigenvalue(h: &CMatrix, tol: f64, max_iter: usize, seed: u64) -> Result<f64> {
    let dev = hermitian_deviation(h);
    if dev > EIGEN_HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let d = h.nrows();
    let shift = (0..d)
        .map(|r| h.row(r).iter().map(|x| x.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut rng = crate::rng::seeded(seed);
    let mut v = DVector::from_fn(d, |_, _| {
        Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    });
    v /= Complex64::new(v.norm(), 0.0);
    let mut last = f64::NEG_INFINITY;
    for _ in 0..max_iter {
        let hv = h * &v;
        let rayleigh = v.dotc(&hv).re;
        let mut w = hv + &v * Complex64::new(shift, 0.0);
        let norm = w.norm();
        if norm == 0.0 {
            return Ok(rayleigh);
        }
        w /= Complex64::new(norm, 0.0);
        v = w;
        if (rayleigh - last).abs() < tol {
            return Ok(rayleigh);
        }
        last = rayleigh;
    }
    Ok(last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::pauli;

    fn from_2x2(m: pauli::Matrix2c) -> CMatrix {
        CMatrix::from_fn(2, 2, |r, c| m[(r, c)])
    }

    #[test]
    fn identity_spectrum() {
        let s = spectrum(&CMatrix::identity(4, 4)).unwrap();
        assert_eq!(s.eigenvalues.len(), 4);
        assert!(s.eigenvalues.iter().all(|v| (v - 1.0).abs() < 1e-14));
    }

    #[test]
    fn sigma_z_spectrum_is_sorted_descending() {
        let s = spectrum(&from_2x2(pauli::z())).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = CMatrix::identity(2, 2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(spectrum(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn reconstruction_and_power_iteration_agree() {
        let h = from_2x2(pauli::dot([0.2, -0.7, 0.4])) + CMatrix::identity(2, 2);
        let h = h.kronecker(&from_2x2(pauli::y() + pauli::x()));
        let e = eigh(&h).unwrap();
        assert!(e.reconstruction_residual(&h) <= 1e-8 * h.norm());
        let p = power_max_eigenvalue(&h, 1e-14, 10_000, 1).unwrap();
        assert!((p - e.values[0]).abs() < 1e-6);
    }
}
