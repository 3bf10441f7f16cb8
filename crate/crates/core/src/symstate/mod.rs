//! Exact algebra of permutation-symmetric qubit states.
//!
//! The carrier basis is the unnormalized Dicke ket `|j,n>`: the plain sum of
//! every computational product state with `j` ones among `n` qubits, so
//! `<j,n|k,n> = delta_jk C(n,j)`. Coefficients are exact complex rationals;
//! floating point only appears in [`SymState::embed`].
//!
//! Besides the computational (`z`) labels, states may be written over the
//! x- and y-labelled product kets
//!
//! ```text
//! |1>_x = |0> + |1>     |0>_x = |0> - |1>
//! |1>_y = |1> + i|0>    |0>_y = |0> + i|1>
//! ```
//!
//! which are orthogonal but have squared norm 2.

mod bellbasis;
pub mod exact;

pub use bellbasis::{bell_basis, gram_deviation, BellBasisState};
pub use exact::ExactComplex;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::qstate::{PureState, Sign};
use crate::{Error, Result};
use exact::{binomial, exact_int, exact_one, exact_zero, i_pow, norm_sqr, pow, ExactRepr};

/// Which single-qubit kets the Dicke labels refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisLabel {
    Z,
    X,
    Y,
}

impl BasisLabel {
    /// `kets[b][z]`: amplitude of `|z>` in the labelled ket `|b>`.
    fn kets(self) -> [[ExactComplex; 2]; 2] {
        match self {
            BasisLabel::Z => [[exact_int(1, 0), exact_int(0, 0)], [exact_int(0, 0), exact_int(1, 0)]],
            BasisLabel::X => [[exact_int(1, 0), exact_int(-1, 0)], [exact_int(1, 0), exact_int(1, 0)]],
            BasisLabel::Y => [[exact_int(1, 0), exact_int(0, 1)], [exact_int(0, 1), exact_int(1, 0)]],
        }
    }

    fn name(self) -> &'static str {
        match self {
            BasisLabel::Z => "z",
            BasisLabel::X => "x",
            BasisLabel::Y => "y",
        }
    }
}

impl std::fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// `<j,n|k,n>`.
pub fn inner(j: usize, k: usize, n: usize) -> Result<BigInt> {
    if j > n || k > n {
        return Err(Error::InvalidParameter(format!("indices ({j}, {k}) exceed n = {n}")));
    }
    Ok(if j == k { binomial(n as i64, j as i64) } else { BigInt::zero() })
}

/// Symmetric state `sum_j c_j |j,n>` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SymStateRepr", into = "SymStateRepr")]
pub struct SymState {
    n: usize,
    coeff: Vec<ExactComplex>,
    basis: BasisLabel,
}

impl SymState {
    pub fn new(n: usize, coeff: Vec<ExactComplex>, basis: BasisLabel) -> Result<Self> {
        if n == 0 {
            return Err(Error::QubitCount { n, min: 1, max: usize::MAX });
        }
        if coeff.len() != n + 1 {
            return Err(Error::DimensionMismatch { expected: n + 1, actual: coeff.len() });
        }
        Ok(Self { n, coeff, basis })
    }

    /// The single Dicke ket `|j,n>` in the z labels.
    pub fn dicke(j: usize, n: usize) -> Result<Self> {
        if j > n {
            return Err(Error::InvalidParameter(format!("j = {j} exceeds n = {n}")));
        }
        let mut coeff = vec![exact_zero(); n + 1];
        coeff[j] = exact_one();
        Self::new(n, coeff, BasisLabel::Z)
    }

    /// `|0,n> ± |n,n>`.
    pub fn ghz(n: usize, sign: Sign) -> Result<Self> {
        let mut coeff = vec![exact_zero(); n + 1];
        coeff[0] = exact_one();
        coeff[n] = coeff[n].clone() + exact_int(sign.value() as i64, 0);
        Self::new(n, coeff, BasisLabel::Z)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[ExactComplex] {
        &self.coeff
    }

    pub fn basis(&self) -> BasisLabel {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.iter().all(|c| c.is_zero())
    }

    /// Exact squared norm. The x and y kets have squared norm 2 per qubit.
    pub fn norm_sqr(&self) -> BigRational {
        let mut total = BigRational::zero();
        for (j, c) in self.coeff.iter().enumerate() {
            total += norm_sqr(c) * BigRational::from(binomial(self.n as i64, j as i64));
        }
        match self.basis {
            BasisLabel::Z => total,
            _ => total * BigRational::from(BigInt::one() << self.n),
        }
    }

    pub fn scale(&self, s: &ExactComplex) -> SymState {
        SymState {
            n: self.n,
            coeff: self.coeff.iter().map(|c| c * s).collect(),
            basis: self.basis,
        }
    }

    /// Re-expands the state over the computational Dicke kets.
    pub fn to_z(&self) -> SymState {
        if self.basis == BasisLabel::Z {
            return self.clone();
        }
        let n = self.n as i64;
        let k = self.basis.kets();
        let mut out = vec![exact_zero(); self.n + 1];
        for (l, c) in self.coeff.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let l = l as i64;
            for (j, slot) in out.iter_mut().enumerate() {
                let j = j as i64;
                // r counts ones shared by the labelled string and the z string.
                let mut amp = exact_zero();
                for r in 0..=l.min(j) {
                    let mult = binomial(j, r) * binomial(n - j, l - r);
                    if mult.is_zero() || n - j - l + r < 0 {
                        continue;
                    }
                    let term = pow(&k[1][1], r as usize)
                        * pow(&k[1][0], (l - r) as usize)
                        * pow(&k[0][1], (j - r) as usize)
                        * pow(&k[0][0], (n - j - l + r) as usize);
                    amp = amp + term * ExactComplex::new(BigRational::from(mult), BigRational::zero());
                }
                *slot = slot.clone() + c * amp;
            }
        }
        SymState { n: self.n, coeff: out, basis: BasisLabel::Z }
    }

    /// Unnormalized `2^n` amplitudes of a z-labelled state.
    pub fn embed_raw(&self) -> Result<Vec<Complex64>> {
        if self.basis != BasisLabel::Z {
            return Err(Error::BasisMismatch {
                expected: "z".into(),
                actual: self.basis.to_string(),
            });
        }
        let c: Vec<Complex64> = self.coeff.iter().map(exact::to_complex64).collect();
        Ok((0..1usize << self.n).map(|i| c[i.count_ones() as usize]).collect())
    }

    /// Normalized dense state of a z-labelled state.
    pub fn embed(&self) -> Result<PureState> {
        let raw = self.embed_raw()?;
        if self.is_zero() {
            return Err(Error::ZeroState);
        }
        PureState::normalized(self.n, raw)
    }

    /// Floating-point copy of the coefficients.
    pub fn to_vector(&self) -> SymVector {
        SymVector {
            n: self.n,
            coeff: self.coeff.iter().map(exact::to_complex64).collect(),
        }
    }

    /// Rewrites a z-labelled state over the x-labelled Dicke kets with the
    /// double-binomial formula
    ///
    /// ```text
    /// |j,n>_z ∝ sum_l ( sum_k C(l, j-2k) C(n-l, 2k)
    ///                  - sum_k C(l, j-2k-1) C(n-l, 2k+1) ) |l,n>_x
    /// ```
    ///
    /// with `k` running over every value for which the binomials are
    /// nonzero. The returned scalar `s` satisfies
    /// `self == s * result.to_z()` exactly.
    pub fn z_to_x(&self) -> Result<BasisChange> {
        if self.basis != BasisLabel::Z {
            return Err(Error::BasisMismatch {
                expected: "z".into(),
                actual: self.basis.to_string(),
            });
        }
        let n = self.n as i64;
        let mut out = vec![exact_zero(); self.n + 1];
        for (j, c) in self.coeff.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (l, slot) in out.iter_mut().enumerate() {
                let w = z_to_x_weight(j as i64, l as i64, n);
                *slot = slot.clone() + c * ExactComplex::new(BigRational::from(w), BigRational::zero());
            }
        }
        Ok(BasisChange {
            state: SymState { n: self.n, coeff: out, basis: BasisLabel::X },
            scalar: ExactComplex::new(BigRational::new(BigInt::one(), BigInt::one() << self.n), BigRational::zero()),
        })
    }

    /// Exact `s` with `self == s * other` (both re-expanded in z), or `None`
    /// when the states are not proportional or `other` is zero.
    pub fn ratio_to(&self, other: &SymState) -> Option<ExactComplex> {
        let a = self.to_z();
        let b = other.to_z();
        if a.n != b.n {
            return None;
        }
        let pivot = b.coeff.iter().position(|c| !c.is_zero())?;
        let s = &a.coeff[pivot] / &b.coeff[pivot];
        a.coeff
            .iter()
            .zip(&b.coeff)
            .all(|(x, y)| *x == y * &s)
            .then_some(s)
    }

    /// Coefficient table rendered as strings, one row per Dicke index.
    pub fn table(&self) -> Vec<CoefficientRow> {
        self.coeff
            .iter()
            .enumerate()
            .map(|(j, c)| CoefficientRow { j, value: exact::display(c), exact: c.into() })
            .collect()
    }
}

/// Coefficient `|j,n>_z -> |l,n>_x` of the double-binomial formula.
pub fn z_to_x_weight(j: i64, l: i64, n: i64) -> BigInt {
    let mut w = BigInt::zero();
    for k in 0..=j / 2 {
        w += binomial(l, j - 2 * k) * binomial(n - l, 2 * k);
    }
    if j >= 1 {
        for k in 0..=(j - 1) / 2 {
            w -= binomial(l, j - 2 * k - 1) * binomial(n - l, 2 * k + 1);
        }
    }
    w
}

/// Result of a basis change together with its global scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisChange {
    pub state: SymState,
    pub scalar: ExactComplex,
}

/// `|0,n>_z ± |n,n>_z` written over the y-labelled kets with coefficients
/// `i^k ± i^(n-k)`. These agree with the exact re-expansion up to one global
/// complex factor, available through [`SymState::ratio_to`].
pub fn ghz_y_form(n: usize, sign: Sign) -> Result<SymState> {
    let s = exact_int(sign.value() as i64, 0);
    let coeff = (0..=n as i64)
        .map(|k| i_pow(k) + &s * i_pow(n as i64 - k))
        .collect();
    SymState::new(n, coeff, BasisLabel::Y)
}

/// One term `|k,m> ⊗ |j-k, n-m>` of a Dicke split.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitTerm {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub coefficient: i64,
}

/// `|j,n> = sum_k |k,m> ⊗ |j-k, n-m>` restricted to the terms that exist.
pub fn split(j: usize, n: usize, m: usize) -> Result<Vec<SplitTerm>> {
    if m == 0 || m >= n {
        return Err(Error::InvalidParameter(format!("split point m = {m} must satisfy 1 <= m < {n}")));
    }
    if j > n {
        return Err(Error::InvalidParameter(format!("j = {j} exceeds n = {n}")));
    }
    Ok((0..=j)
        .filter(|&k| k <= m && j - k <= n - m)
        .map(|k| SplitTerm { left: (k, m), right: (j - k, n - m), coefficient: 1 })
        .collect())
}

/// Unnormalized dense vector of a split expansion.
pub fn embed_split(terms: &[SplitTerm]) -> Result<Vec<Complex64>> {
    let first = terms
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty split".into()))?;
    let n = first.left.1 + first.right.1;
    let mut out = vec![Complex64::new(0.0, 0.0); 1 << n];
    for t in terms {
        let l = SymState::dicke(t.left.0, t.left.1)?.embed_raw()?;
        let r = SymState::dicke(t.right.0, t.right.1)?.embed_raw()?;
        for (a, la) in l.iter().enumerate() {
            for (b, rb) in r.iter().enumerate() {
                out[(a << t.right.1) | b] += la * rb * t.coefficient as f64;
            }
        }
    }
    Ok(out)
}

/// Floating-point symmetric state `sum_j c_j |j,n>` (z labels). Used where
/// coefficients are irrational, e.g. `sqrt(3)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymVector {
    pub n: usize,
    pub coeff: Vec<Complex64>,
}

impl SymVector {
    pub fn new(n: usize, coeff: Vec<Complex64>) -> Result<Self> {
        if coeff.len() != n + 1 {
            return Err(Error::DimensionMismatch { expected: n + 1, actual: coeff.len() });
        }
        Ok(Self { n, coeff })
    }

    pub fn from_real(n: usize, coeff: &[f64]) -> Result<Self> {
        Self::new(n, coeff.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeff
            .iter()
            .enumerate()
            .map(|(j, c)| c.norm_sqr() * exact::to_f64(&BigRational::from(binomial(self.n as i64, j as i64))))
            .sum()
    }

    pub fn embed(&self) -> Result<PureState> {
        let amp = (0..1usize << self.n).map(|i| self.coeff[i.count_ones() as usize]).collect();
        PureState::normalized(self.n, amp)
    }

    /// Symmetric coefficients of `psi`, or an error if some amplitude differs
    /// from others of the same Hamming weight by more than `tol`.
    pub fn from_pure(psi: &PureState, tol: f64) -> Result<Self> {
        let n = psi.n();
        let amp = psi.amplitudes();
        let coeff: Vec<Complex64> = (0..=n).map(|j| amp[(1usize << j) - 1]).collect();
        for (i, a) in amp.iter().enumerate() {
            let dev = (a - coeff[i.count_ones() as usize]).norm();
            if dev > tol {
                return Err(Error::InvalidState(format!("not permutation symmetric (amplitude {i} deviates by {dev:e})")));
            }
        }
        Self::new(n, coeff)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub j: usize,
    pub value: String,
    pub exact: ExactRepr,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SymStateRepr {
    n: usize,
    basis_label: BasisLabel,
    coeff: Vec<ExactRepr>,
}

impl From<SymState> for SymStateRepr {
    fn from(s: SymState) -> Self {
        SymStateRepr {
            n: s.n,
            basis_label: s.basis,
            coeff: s.coeff.iter().map(ExactRepr::from).collect(),
        }
    }
}

impl TryFrom<SymStateRepr> for SymState {
    type Error = Error;

    fn try_from(r: SymStateRepr) -> Result<Self> {
        let coeff = r.coeff.iter().map(ExactComplex::try_from).collect::<Result<_>>()?;
        SymState::new(r.n, coeff, r.basis_label)
    }
}
