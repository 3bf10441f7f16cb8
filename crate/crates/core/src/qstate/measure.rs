use num_complex::Complex64;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::pauli::{self, Matrix2c};
use super::pure::apply_single_in_place;
use super::{bit, check_subset, split_index_table, PureState, StateView};
use crate::tolerances::NORM_TOL;
use crate::{Error, Result};

/// Unit Bloch direction. The `+1` outcome of a measurement along `d` is the
/// `+1` eigenvector of `d . sigma`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct Direction([f64; 3]);

impl Direction {
    pub const X: Direction = Direction([1.0, 0.0, 0.0]);
    pub const Y: Direction = Direction([0.0, 1.0, 0.0]);
    pub const Z: Direction = Direction([0.0, 0.0, 1.0]);

    pub fn new(v: [f64; 3]) -> Result<Self> {
        let norm = norm3(v);
        if (norm - 1.0).abs() > NORM_TOL || !norm.is_finite() {
            return Err(Error::NonUnitDirection { norm });
        }
        Ok(Direction(v))
    }

    /// Rescales `v`; `None` for a zero (or non-finite) vector.
    pub fn normalize(v: [f64; 3]) -> Option<Self> {
        let norm = norm3(v);
        (norm > 0.0 && norm.is_finite()).then(|| Direction([v[0] / norm, v[1] / norm, v[2] / norm]))
    }

    /// Direction in the xy-plane at `angle` from the x-axis.
    pub fn in_xy(angle: f64) -> Self {
        Direction([angle.cos(), angle.sin(), 0.0])
    }

    /// Direction in the xz-plane at `angle` from the z-axis.
    pub fn in_xz_from_z(angle: f64) -> Self {
        Direction([angle.sin(), 0.0, angle.cos()])
    }

    pub fn vector(&self) -> [f64; 3] {
        self.0
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        self.0.iter().zip(other.0).map(|(a, b)| a * b).sum()
    }

    /// `d . sigma`.
    pub fn pauli(&self) -> Matrix2c {
        pauli::dot(self.0)
    }

    /// `(|+d>, |-d>)` as amplitude pairs.
    pub fn eigenbasis(&self) -> ([Complex64; 2], [Complex64; 2]) {
        let [x, y, z] = self.0;
        let plus = if z > -0.5 {
            let s = (2.0 * (1.0 + z)).sqrt();
            [Complex64::new((1.0 + z) / s, 0.0), Complex64::new(x / s, y / s)]
        } else {
            let s = (2.0 * (1.0 - z)).sqrt();
            [Complex64::new(x / s, -y / s), Complex64::new((1.0 - z) / s, 0.0)]
        };
        let minus = [-plus[1].conj(), plus[0].conj()];
        (plus, minus)
    }

    /// Unitary whose rows are `<+d|` and `<-d|`; it maps the measurement
    /// basis onto the computational basis.
    pub(crate) fn to_computational(&self) -> Matrix2c {
        let (p, m) = self.eigenbasis();
        Matrix2c::new(p[0].conj(), p[1].conj(), m[0].conj(), m[1].conj())
    }
}

impl TryFrom<[f64; 3]> for Direction {
    type Error = Error;

    fn try_from(v: [f64; 3]) -> Result<Self> {
        Direction::new(v)
    }
}

impl From<Direction> for [f64; 3] {
    fn from(d: Direction) -> Self {
        d.0
    }
}

pub(crate) fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// One measurement direction per qubit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementBasis {
    pub directions: Vec<Direction>,
}

impl MeasurementBasis {
    pub fn new(directions: Vec<Direction>) -> Self {
        Self { directions }
    }

    pub fn uniform(n: usize, d: Direction) -> Self {
        Self { directions: vec![d; n] }
    }

    pub fn z(n: usize) -> Self {
        Self::uniform(n, Direction::Z)
    }

    pub fn x(n: usize) -> Self {
        Self::uniform(n, Direction::X)
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }
}

/// Bloch vector `(<X>, <Y>, <Z>)` of one qubit.
pub fn bloch_vector<'a>(state: impl Into<StateView<'a>>, qubit: usize) -> Result<[f64; 3]> {
    let state = state.into();
    if qubit >= state.n() {
        return Err(Error::QubitIndex { index: qubit, n: state.n() });
    }
    let rho = if state.n() == 1 {
        state.to_density()
    } else {
        state.partial_trace(&[qubit])?
    };
    let m = rho.matrix();
    let m2 = Matrix2c::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let c = pauli::components(&m2);
    Ok([c[0].re, c[1].re, c[2].re])
}

/// `<d . sigma>` on `qubit`.
pub fn pauli_expect<'a>(state: impl Into<StateView<'a>>, qubit: usize, d: [f64; 3]) -> Result<f64> {
    let d = Direction::new(d)?;
    let b = bloch_vector(state, qubit)?;
    Ok(b.iter().zip(d.vector()).map(|(x, y)| x * y).sum())
}

/// Joint outcome probabilities of measuring every qubit along its basis
/// direction. Index bit for qubit `q` (most significant first) is set when
/// that qubit gave `-1`.
pub fn outcome_distribution<'a>(
    state: impl Into<StateView<'a>>,
    basis: &MeasurementBasis,
) -> Result<Vec<f64>> {
    let state = state.into();
    let n = state.n();
    if basis.len() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: basis.len() });
    }
    let mut probs = match state {
        StateView::Pure(psi) => {
            let mut v = psi.amplitudes().to_vec();
            for (q, d) in basis.directions.iter().enumerate() {
                apply_single_in_place(&mut v, n, q, &d.to_computational());
            }
            v.iter().map(|a| a.norm_sqr()).collect::<Vec<_>>()
        }
        StateView::Mixed(rho) => {
            let mut r = rho.clone();
            for (q, d) in basis.directions.iter().enumerate() {
                r = r.conjugate_single(q, &d.to_computational())?;
            }
            (0..r.dim()).map(|i| r.matrix()[(i, i)].re).collect()
        }
    };
    for p in probs.iter_mut() {
        if *p < 0.0 {
            *p = 0.0;
        }
    }
    let total: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|p| *p /= total);
    Ok(probs)
}

/// Outcome of [`measure_sample`].
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementRecord {
    /// `+1` / `-1` per measured qubit, in the order given.
    pub outcomes: Vec<i8>,
    /// Renormalized state of the unmeasured qubits (ascending order), or
    /// `None` when every qubit was measured.
    pub post: Option<PureState>,
}

impl MeasurementRecord {
    pub fn minus_count(&self) -> usize {
        self.outcomes.iter().filter(|&&o| o < 0).count()
    }
}

/// Measures `subset` (in that order) along the matching basis directions,
/// sampling each outcome from the Born rule.
pub fn measure_sample(
    state: &PureState,
    basis: &MeasurementBasis,
    subset: &[usize],
    seed: u64,
) -> Result<MeasurementRecord> {
    let n = state.n();
    if basis.len() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: basis.len() });
    }
    let subset = check_subset(n, subset, true)?;
    let mut rng = crate::rng::seeded(seed);
    let mut v = state.amplitudes().to_vec();
    for &q in &subset {
        apply_single_in_place(&mut v, n, q, &basis.directions[q].to_computational());
    }
    let mut outcomes = Vec::with_capacity(subset.len());
    let mut measured_bits = 0usize;
    for (k, &q) in subset.iter().enumerate() {
        let b = bit(n, q);
        let total: f64 = v.iter().map(|a| a.norm_sqr()).sum();
        let p_plus: f64 = v
            .iter()
            .enumerate()
            .filter(|(i, _)| i & b == 0)
            .map(|(_, a)| a.norm_sqr())
            .sum::<f64>()
            / total;
        let plus = rng.random::<f64>() < p_plus;
        let p = if plus { p_plus } else { 1.0 - p_plus };
        if p <= 0.0 {
            return Err(Error::ZeroProbabilityBranch);
        }
        for (i, a) in v.iter_mut().enumerate() {
            if (i & b == 0) != plus {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        if !plus {
            measured_bits |= 1 << (subset.len() - 1 - k);
        }
        outcomes.push(if plus { 1 } else { -1 });
    }
    let post = if subset.len() == n {
        None
    } else {
        let (rest, table) = split_index_table(n, &subset);
        let amp = table[measured_bits].iter().map(|&i| v[i]).collect();
        Some(PureState::normalized(rest.len(), amp)?)
    };
    Ok(MeasurementRecord { outcomes, post })
}

/// Draws `shots` outcome indices from a probability table.
pub(crate) fn sample_indices(probs: &[f64], shots: usize, rng: &mut crate::rng::Rng) -> Vec<usize> {
    let mut cdf = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for p in probs {
        acc += p;
        cdf.push(acc);
    }
    (0..shots)
        .map(|_| {
            let u = rng.random::<f64>() * acc;
            cdf.partition_point(|&c| c <= u).min(probs.len() - 1)
        })
        .collect()
}
