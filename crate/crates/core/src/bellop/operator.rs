use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::classical::expand_correlators;
use super::settings::Settings;
use crate::qstate::pauli::{self, Matrix2c};
use crate::qstate::{spectrum, CMatrix, StateView};
use crate::tolerances::OPERATOR_BOUND_SLACK;
use crate::{Error, Result};

/// Largest register for which dense Bell operators are built.
pub const OPERATOR_MAX_QUBITS: usize = 12;

fn to_dense(m: &Matrix2c) -> CMatrix {
    CMatrix::from_fn(2, 2, |r, c| m[(r, c)])
}

fn check_n(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::QubitCount { n, min: 1, max });
    }
    Ok(())
}

/// `(B, B')` for the listed settings. An empty list yields the scalars
/// `(2, 2)` that seed the recursion.
fn recursive_pair(st: &Settings) -> (CMatrix, CMatrix) {
    let two = CMatrix::from_element(1, 1, Complex64::new(2.0, 0.0));
    let half = Complex64::new(0.5, 0.0);
    st.pairs.iter().fold((two.clone(), two), |(b, bp), pair| {
        let a = to_dense(&pair.a.pauli());
        let ap = to_dense(&pair.a_prime.pauli());
        let sum = (&a + &ap) * half;
        let diff = (&a - &ap) * half;
        let next = b.kronecker(&sum) + bp.kronecker(&diff);
        let next_p = bp.kronecker(&sum) - b.kronecker(&diff);
        (next, next_p)
    })
}

/// `(B_n, B'_n)` built by the recursion, qubit 0 most significant.
pub fn bell_operator_pair(st: &Settings) -> Result<(CMatrix, CMatrix)> {
    check_n(st.n(), OPERATOR_MAX_QUBITS)?;
    Ok(recursive_pair(st))
}

pub fn bell_operator(st: &Settings) -> Result<CMatrix> {
    Ok(bell_operator_pair(st)?.0)
}

/// `B_n` assembled term by term from the correlator expansion:
/// `sum_c coeff(c) ⊗_j (chosen direction_j . sigma)`.
pub fn bell_operator_by_terms(st: &Settings) -> Result<CMatrix> {
    let n = st.n();
    check_n(n, 10)?;
    let poly = expand_correlators(n)?;
    let d = 1usize << n;
    let mut out = CMatrix::zeros(d, d);
    for (mask, coeff) in poly.terms() {
        let mut term = CMatrix::from_element(1, 1, Complex64::new(*coeff.numer() as f64 / *coeff.denom() as f64, 0.0));
        for (q, pair) in st.pairs.iter().enumerate() {
            let dir = if poly.is_primed(mask, q) { pair.a_prime } else { pair.a };
            term = term.kronecker(&to_dense(&dir.pauli()));
        }
        out += term;
    }
    Ok(out)
}

/// `<B_n>` as an affine function of one qubit's directions:
/// `<B_n> = a · coeff_a + a' · coeff_a_prime`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalCoefficients {
    pub coeff_a: [f64; 3],
    pub coeff_a_prime: [f64; 3],
}

impl LocalCoefficients {
    pub fn value(&self, a: [f64; 3], a_prime: [f64; 3]) -> f64 {
        dot(self.coeff_a, a) + dot(self.coeff_a_prime, a_prime)
    }

    /// Value after both directions are aligned with their coefficients.
    pub fn best_value(&self) -> f64 {
        norm(self.coeff_a) + norm(self.coeff_a_prime)
    }
}

fn dot(u: [f64; 3], v: [f64; 3]) -> f64 {
    u.iter().zip(v).map(|(x, y)| x * y).sum()
}

fn norm(u: [f64; 3]) -> f64 {
    dot(u, u).sqrt()
}

/// Coefficients of `<B_n>` in the settings of `qubit`.
///
/// The polynomial is symmetric under qubit permutations, so the qubit is
/// moved last and `B_n = B_rest ⊗ (a+a')/2 · sigma + B'_rest ⊗ (a-a')/2 · sigma`
/// with `B_rest` built from the remaining qubits.
pub fn local_coefficients<'a>(
    state: impl Into<StateView<'a>>,
    st: &Settings,
    qubit: usize,
) -> Result<LocalCoefficients> {
    let state = state.into();
    let n = state.n();
    if st.n() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: st.n() });
    }
    if qubit >= n {
        return Err(Error::QubitIndex { index: qubit, n });
    }
    check_n(n, OPERATOR_MAX_QUBITS)?;
    let order: Vec<usize> = (0..n).filter(|&q| q != qubit).chain([qubit]).collect();
    let identity = qubit == n - 1;
    let (rest, rest_p) = recursive_pair(&st.select(&order[..n - 1]));
    let (k, k_p) = match state {
        StateView::Pure(psi) => {
            let owned;
            let psi = if identity {
                psi
            } else {
                owned = psi.permute(&order)?;
                &owned
            };
            let amp = psi.amplitudes();
            let d = amp.len() / 2;
            let cols = CMatrix::from_fn(d, 2, |a, t| amp[(a << 1) | t]);
            let conj = cols.map(|z| z.conj());
            let reduce = |x: &CMatrix| (x * &cols).transpose() * &conj;
            (reduce(&rest), reduce(&rest_p))
        }
        StateView::Mixed(rho) => {
            let owned;
            let rho = if identity {
                rho
            } else {
                owned = rho.permute(&order)?;
                &owned
            };
            let m = rho.matrix();
            let d = m.nrows() / 2;
            let reduce = |x: &CMatrix| {
                CMatrix::from_fn(2, 2, |t, s| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for a in 0..d {
                        for b in 0..d {
                            acc += x[(a, b)] * m[((b << 1) | t, (a << 1) | s)];
                        }
                    }
                    acc
                })
            };
            (reduce(&rest), reduce(&rest_p))
        }
    };
    let comps = |k: &CMatrix| {
        let c = pauli::components(&Matrix2c::new(k[(0, 0)], k[(0, 1)], k[(1, 0)], k[(1, 1)]));
        [c[0].re, c[1].re, c[2].re]
    };
    let (t, t_p) = (comps(&k), comps(&k_p));
    Ok(LocalCoefficients {
        coeff_a: std::array::from_fn(|i| 0.5 * (t[i] + t_p[i])),
        coeff_a_prime: std::array::from_fn(|i| 0.5 * (t[i] - t_p[i])),
    })
}

/// `Tr(rho B_n)`.
pub fn bell_expectation<'a>(state: impl Into<StateView<'a>>, st: &Settings) -> Result<f64> {
    let state = state.into();
    let n = state.n();
    if st.n() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: st.n() });
    }
    let last = st.pairs[n - 1];
    Ok(local_coefficients(state, st, n - 1)?.value(last.a.vector(), last.a_prime.vector()))
}

/// Largest eigenvalue of `B_n^2` against the bound `2^(n+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub lambda_max_sq: f64,
    pub bound: f64,
    pub pass: bool,
}

pub fn bound_check(st: &Settings) -> Result<BoundCheck> {
    let b = bell_operator(st)?;
    let spec = spectrum(&b)?;
    let lambda_max_sq = spec.max().powi(2).max(spec.min().powi(2));
    let bound = 2f64.powi(st.n() as i32 + 1);
    Ok(BoundCheck {
        lambda_max_sq,
        bound,
        pass: lambda_max_sq <= bound + OPERATOR_BOUND_SLACK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bellop::{ghz_optimal_settings, MeasurementPair};
    use crate::qstate::{max_abs, Direction, PureState, Sign};
    use std::f64::consts::SQRT_2;

    fn chsh_settings() -> Settings {
        let d = |t: f64| Direction::in_xz_from_z(t);
        Settings::new(vec![
            MeasurementPair::new(d(0.0), d(std::f64::consts::FRAC_PI_2)),
            MeasurementPair::new(d(std::f64::consts::FRAC_PI_4), d(-std::f64::consts::FRAC_PI_4)),
        ])
    }

    #[test]
    fn single_qubit_operator() {
        let st = Settings::new(vec![MeasurementPair::new(Direction::Z, Direction::X)]);
        let b = bell_operator(&st).unwrap();
        let s = spectrum(&b).unwrap();
        assert!((s.eigenvalues[0] - 2.0).abs() < 1e-14 && (s.eigenvalues[1] + 2.0).abs() < 1e-14);
        assert!(max_abs(&(b - to_dense(&pauli::z()) * Complex64::new(2.0, 0.0))) < 1e-15);
    }

    #[test]
    fn chsh_maximum() {
        let s = spectrum(&bell_operator(&chsh_settings()).unwrap()).unwrap();
        assert!((s.max() - 2.0 * SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn recursion_matches_term_expansion() {
        let mut rng = crate::rng::seeded(5);
        for n in 1..=6 {
            let st = Settings::random(n, &mut rng);
            let a = bell_operator(&st).unwrap();
            let b = bell_operator_by_terms(&st).unwrap();
            assert!(max_abs(&(a - b)) < 1e-10, "n = {n}");
        }
    }

    #[test]
    fn expectation_matches_dense_contraction_on_every_qubit() {
        let mut rng = crate::rng::seeded(6);
        for n in 2..=5 {
            let st = Settings::random(n, &mut rng);
            let amp = (0..1 << n)
                .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 1.3).cos()))
                .collect();
            let psi = PureState::normalized(n, amp).unwrap();
            let rho = psi.to_density();
            let dense = rho.expectation(&bell_operator(&st).unwrap()).unwrap().re;
            assert!((bell_expectation(&psi, &st).unwrap() - dense).abs() < 1e-10);
            assert!((bell_expectation(&rho, &st).unwrap() - dense).abs() < 1e-10);
            for q in 0..n {
                for view in [StateView::Pure(&psi), StateView::Mixed(&rho)] {
                    let c = local_coefficients(view, &st, q).unwrap();
                    let v = c.value(st.pairs[q].a.vector(), st.pairs[q].a_prime.vector());
                    assert!((v - dense).abs() < 1e-10, "n = {n}, q = {q}");
                }
            }
        }
    }

    #[test]
    fn ghz_three_reaches_four() {
        let st = ghz_optimal_settings(3).unwrap().settings;
        let s = spectrum(&bell_operator(&st).unwrap()).unwrap();
        assert!((s.max() - 4.0).abs() < 1e-12);
        let g = PureState::ghz(3, Sign::Plus).unwrap();
        assert!((bell_expectation(&g, &st).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn bound_holds_including_collinear_settings() {
        let mut rng = crate::rng::seeded(8);
        for n in 2..=5 {
            let st = Settings::random(n, &mut rng);
            assert!(bound_check(&st).unwrap().pass);
        }
        let collinear = Settings::new(vec![MeasurementPair::new(Direction::Z, Direction::Z); 3]);
        let c = bound_check(&collinear).unwrap();
        // With a = a' everywhere the second recursion term vanishes: B = 2 Z⊗Z⊗Z.
        assert!((c.lambda_max_sq - 4.0).abs() < 1e-12 && c.pass);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let st = chsh_settings();
        let psi = PureState::zeros(3).unwrap();
        assert!(matches!(bell_expectation(&psi, &st), Err(Error::DimensionMismatch { .. })));
    }
}
