//! Single-qubit Pauli matrices and helpers.

use nalgebra::Matrix2;
use num_complex::Complex64;

pub type Matrix2c = Matrix2<Complex64>;

const O: Complex64 = Complex64::new(0.0, 0.0);
const R: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity() -> Matrix2c {
    Matrix2c::new(R, O, O, R)
}

pub fn x() -> Matrix2c {
    Matrix2c::new(O, R, R, O)
}

pub fn y() -> Matrix2c {
    Matrix2c::new(O, -I, I, O)
}

pub fn z() -> Matrix2c {
    Matrix2c::new(R, O, O, -R)
}

/// `v . sigma` for an arbitrary real 3-vector.
pub fn dot(v: [f64; 3]) -> Matrix2c {
    Matrix2c::new(
        Complex64::new(v[2], 0.0),
        Complex64::new(v[0], -v[1]),
        Complex64::new(v[0], v[1]),
        Complex64::new(-v[2], 0.0),
    )
}

/// Components `Tr(sigma_k m)` for k = x, y, z.
pub fn components(m: &Matrix2c) -> [Complex64; 3] {
    [
        m[(0, 1)] + m[(1, 0)],
        I * (m[(0, 1)] - m[(1, 0)]),
        m[(0, 0)] - m[(1, 1)],
    ]
}
