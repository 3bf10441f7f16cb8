//! Dense n-qubit state engine.
//!
//! Qubits are numbered from 0 and qubit 0 is the most significant bit of a
//! computational-basis index, so `|q0 q1 ... q(n-1)>` has index
//! `q0 * 2^(n-1) + ... + q(n-1)`.

mod density;
mod measure;
pub mod pauli;
mod pure;
mod spectrum;

pub use density::DensityMatrix;
pub(crate) use density::conjugate_single_in_place;
pub(crate) use measure::sample_indices;
pub use measure::{
    bloch_vector, measure_sample, outcome_distribution, pauli_expect, Direction,
    MeasurementBasis, MeasurementRecord,
};
pub use pure::{PureState, Sign};
pub use spectrum::{eigh, power_max_eigenvalue, spectrum, Eigh, Spectrum};

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Dense complex matrix.
pub type CMatrix = DMatrix<Complex64>;

/// Either kind of state, borrowed.
#[derive(Clone, Copy, Debug)]
pub enum StateView<'a> {
    Pure(&'a PureState),
    Mixed(&'a DensityMatrix),
}

impl StateView<'_> {
    pub fn n(&self) -> usize {
        match self {
            StateView::Pure(s) => s.n(),
            StateView::Mixed(r) => r.n(),
        }
    }

    pub fn to_density(&self) -> DensityMatrix {
        match self {
            StateView::Pure(s) => s.to_density(),
            StateView::Mixed(r) => (*r).clone(),
        }
    }

    /// Reduced state on `keep` (ascending order is not required).
    pub fn partial_trace(&self, keep: &[usize]) -> crate::Result<DensityMatrix> {
        match self {
            StateView::Pure(s) => s.reduced(keep),
            StateView::Mixed(r) => r.partial_trace(keep),
        }
    }
}

impl<'a> From<&'a PureState> for StateView<'a> {
    fn from(s: &'a PureState) -> Self {
        StateView::Pure(s)
    }
}

impl<'a> From<&'a DensityMatrix> for StateView<'a> {
    fn from(r: &'a DensityMatrix) -> Self {
        StateView::Mixed(r)
    }
}

pub(crate) fn check_qubits(n: usize, min: usize) -> crate::Result<()> {
    if n < min || n > crate::tolerances::MAX_QUBITS {
        return Err(crate::Error::QubitCount {
            n,
            min,
            max: crate::tolerances::MAX_QUBITS,
        });
    }
    Ok(())
}

/// Bit mask of qubit `q` in an `n`-qubit index.
#[inline]
pub(crate) fn bit(n: usize, q: usize) -> usize {
    1 << (n - 1 - q)
}

/// Validated, deduplicated qubit subset. Errors on empty or out-of-range
/// input; `allow_full` controls whether every qubit may be listed.
pub(crate) fn check_subset(n: usize, qubits: &[usize], allow_full: bool) -> crate::Result<Vec<usize>> {
    if qubits.is_empty() {
        return Err(crate::Error::InvalidSubset("empty qubit set".into()));
    }
    let mut seen = vec![false; n];
    for &q in qubits {
        if q >= n {
            return Err(crate::Error::QubitIndex { index: q, n });
        }
        if seen[q] {
            return Err(crate::Error::InvalidSubset(format!("qubit {q} listed twice")));
        }
        seen[q] = true;
    }
    if !allow_full && qubits.len() == n {
        return Err(crate::Error::InvalidSubset("subset covers every qubit".into()));
    }
    Ok(qubits.to_vec())
}

/// Index map for a bipartition: `table[a][b]` is the full index whose bits on
/// `first` (in the given order) spell `a` and whose bits on the remaining
/// qubits (ascending) spell `b`.
pub(crate) fn split_index_table(n: usize, first: &[usize]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let rest: Vec<usize> = (0..n).filter(|q| !first.contains(q)).collect();
    let da = 1usize << first.len();
    let db = 1usize << rest.len();
    let mut table = vec![vec![0usize; db]; da];
    for (a, row) in table.iter_mut().enumerate() {
        let mut base = 0;
        for (i, &q) in first.iter().enumerate() {
            if a & (1 << (first.len() - 1 - i)) != 0 {
                base |= bit(n, q);
            }
        }
        for (b, slot) in row.iter_mut().enumerate() {
            let mut idx = base;
            for (i, &q) in rest.iter().enumerate() {
                if b & (1 << (rest.len() - 1 - i)) != 0 {
                    idx |= bit(n, q);
                }
            }
            *slot = idx;
        }
    }
    (rest, table)
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}
