use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::pauli::Matrix2c;
use super::{bit, check_qubits, check_subset, split_index_table, CMatrix, DensityMatrix};
use crate::tolerances::{MAX_QUBITS, NORM_TOL};
use crate::{Error, Result};

/// Relative sign of a two-term superposition such as `|0..0> ± |1..1>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

/// Normalized n-qubit pure state stored as `2^n` dense amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n: usize,
    amp: Vec<Complex64>,
}

impl PureState {
    /// Wraps amplitudes that must already have unit norm.
    pub fn new(n: usize, amp: Vec<Complex64>) -> Result<Self> {
        check_qubits(n, 1)?;
        if amp.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                actual: amp.len(),
            });
        }
        let norm2: f64 = amp.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("squared norm {norm2} is not 1")));
        }
        Ok(Self { n, amp })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(n: usize, mut amp: Vec<Complex64>) -> Result<Self> {
        check_qubits(n, 1)?;
        if amp.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                actual: amp.len(),
            });
        }
        let norm = amp.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::ZeroState);
        }
        amp.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { n, amp })
    }

    /// Computational basis state with the given index.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_qubits(n, 1)?;
        if index >= 1 << n {
            return Err(Error::InvalidParameter(format!("basis index {index} >= 2^{n}")));
        }
        let mut amp = vec![Complex64::new(0.0, 0.0); 1 << n];
        amp[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amp })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    /// `(|0...0> ± |1...1>) / sqrt(2)`.
    pub fn ghz(n: usize, sign: Sign) -> Result<Self> {
        check_qubits(n, 1)?;
        let mut amp = vec![Complex64::new(0.0, 0.0); 1 << n];
        amp[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        amp[(1 << n) - 1] += Complex64::new(sign.value() * FRAC_1_SQRT_2, 0.0);
        Self::normalized(n, amp)
    }

    /// `(alpha |0...0> + beta |1...1>)`, normalized.
    pub fn ghz_weighted(n: usize, alpha: Complex64, beta: Complex64) -> Result<Self> {
        check_qubits(n, 1)?;
        let mut amp = vec![Complex64::new(0.0, 0.0); 1 << n];
        amp[0] = alpha;
        amp[(1 << n) - 1] += beta;
        Self::normalized(n, amp)
    }

    /// Tensor product of single-qubit states given as `[amp0, amp1]`.
    pub fn product(qubits: &[[Complex64; 2]]) -> Result<Self> {
        let mut it = qubits.iter();
        let first = it
            .next()
            .ok_or_else(|| Error::InvalidParameter("empty product".into()))?;
        let mut state = Self::normalized(1, first.to_vec())?;
        for q in it {
            state = state.tensor(&Self::normalized(1, q.to_vec())?)?;
        }
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amp.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amp
    }

    /// Kronecker product; `self`'s qubits come first.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let n = self.n + other.n;
        if n > MAX_QUBITS {
            return Err(Error::QubitCount { n, min: 1, max: MAX_QUBITS });
        }
        let mut amp = Vec::with_capacity(1 << n);
        for a in &self.amp {
            amp.extend(other.amp.iter().map(|b| a * b));
        }
        Ok(PureState { n, amp })
    }

    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &PureState) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn to_density(&self) -> DensityMatrix {
        let d = self.dim();
        let mat = CMatrix::from_fn(d, d, |i, j| self.amp[i] * self.amp[j].conj());
        DensityMatrix::from_parts(self.n, mat)
    }

    /// Reorders qubits: qubit `i` of the result is qubit `order[i]` of `self`.
    pub fn permute(&self, order: &[usize]) -> Result<PureState> {
        let map = permutation_map(self.n, order)?;
        let mut amp = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (new, &old) in map.iter().enumerate() {
            amp[new] = self.amp[old];
        }
        Ok(PureState { n: self.n, amp })
    }

    /// Applies a 2x2 operator to one qubit without renormalizing.
    pub fn apply_single(&self, qubit: usize, op: &Matrix2c) -> Result<Vec<Complex64>> {
        if qubit >= self.n {
            return Err(Error::QubitIndex { index: qubit, n: self.n });
        }
        let mut out = self.amp.clone();
        apply_single_in_place(&mut out, self.n, qubit, op);
        Ok(out)
    }

    /// Reduced density matrix on `keep`, in the listed order.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep = check_subset(self.n, keep, false)?;
        let (_, table) = split_index_table(self.n, &keep);
        let dk = table.len();
        let mat = CMatrix::from_fn(dk, dk, |a, b| {
            table[a]
                .iter()
                .zip(&table[b])
                .map(|(&i, &j)| self.amp[i] * self.amp[j].conj())
                .sum()
        });
        Ok(DensityMatrix::from_parts(keep.len(), mat))
    }
}

pub(crate) fn apply_single_in_place(v: &mut [Complex64], n: usize, qubit: usize, op: &Matrix2c) {
    let stride = bit(n, qubit);
    for i in 0..v.len() {
        if i & stride == 0 {
            let (a, b) = (v[i], v[i | stride]);
            v[i] = op[(0, 0)] * a + op[(0, 1)] * b;
            v[i | stride] = op[(1, 0)] * a + op[(1, 1)] * b;
        }
    }
}

/// `map[new_index] = old_index` for the reordering described by `order`.
pub(crate) fn permutation_map(n: usize, order: &[usize]) -> Result<Vec<usize>> {
    if order.len() != n {
        return Err(Error::InvalidSubset(format!(
            "permutation has {} entries for {n} qubits",
            order.len()
        )));
    }
    check_subset(n, order, true)?;
    Ok((0..1usize << n)
        .map(|new| {
            order.iter().enumerate().fold(0, |old, (i, &q)| {
                if new & bit(n, i) != 0 {
                    old | bit(n, q)
                } else {
                    old
                }
            })
        })
        .collect())
}
