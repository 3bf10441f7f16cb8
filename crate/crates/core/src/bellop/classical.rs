use num_rational::Rational64;
use num_traits::{Signed, Zero};
use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest register for exhaustive local-hidden-variable enumeration.
pub const LHV_MAX_QUBITS: usize = 10;

/// Predetermined outcomes `(a_j, a'_j)`, each exactly `±1`, for every qubit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment {
    values: Vec<(i8, i8)>,
}

impl Assignment {
    pub fn new(values: Vec<(i8, i8)>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("empty assignment".into()));
        }
        if let Some(bad) = values.iter().find(|(a, b)| a.abs() != 1 || b.abs() != 1) {
            return Err(Error::InvalidParameter(format!("outcomes must be ±1, got {bad:?}")));
        }
        Ok(Self { values })
    }

    /// Decodes `2n` bits: bit `2j` is `a_j`, bit `2j+1` is `a'_j` (set = -1).
    pub fn from_bits(n: usize, bits: u64) -> Self {
        let sign = |b: u64| if b & 1 == 1 { -1 } else { 1 };
        Self {
            values: (0..n)
                .map(|j| (sign(bits >> (2 * j)), sign(bits >> (2 * j + 1))))
                .collect(),
        }
    }

    pub fn random(n: usize, rng: &mut crate::rng::Rng) -> Self {
        Self::from_bits(n, rng.random::<u64>() & mask(2 * n))
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[(i8, i8)] {
        &self.values
    }

    /// Every `a_j` exchanged with `a'_j`.
    pub fn swapped(&self) -> Self {
        Self { values: self.values.iter().map(|&(a, b)| (b, a)).collect() }
    }

    /// Sub-assignment for qubits `range`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        Self { values: self.values[range].to_vec() }
    }
}

fn mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// `(F_n, F'_n)` by the defining recursion.
pub fn f_pair(asg: &Assignment) -> (Rational64, Rational64) {
    let half = Rational64::new(1, 2);
    let mut f = Rational64::from_integer(2);
    let mut fp = f;
    for &(a, ap) in &asg.values {
        let (a, ap) = (Rational64::from_integer(a as i64), Rational64::from_integer(ap as i64));
        let next = half * (a + ap) * f + half * (a - ap) * fp;
        let next_p = half * (ap + a) * fp + half * (ap - a) * f;
        f = next;
        fp = next_p;
    }
    (f, fp)
}

pub fn f_classical(asg: &Assignment) -> Rational64 {
    f_pair(asg).0
}

/// `F'_n`: `F_n` with every pair of outcomes exchanged.
pub fn f_prime(asg: &Assignment) -> Rational64 {
    f_pair(asg).1
}

/// Maximum of `F_n` over all `4^n` deterministic assignments.
pub fn lhv_max(n: usize) -> Result<Rational64> {
    if n == 0 || n > LHV_MAX_QUBITS {
        return Err(Error::QubitCount { n, min: 1, max: LHV_MAX_QUBITS });
    }
    let total = 1u64 << (2 * n);
    Ok((0..total)
        .into_par_iter()
        .map(|bits| f_classical(&Assignment::from_bits(n, bits)))
        .max()
        .expect("non-empty enumeration"))
}

/// Multilinear expansion `F_n = sum_c coeff(c) prod_j a_j^(c_j)`. The
/// choice string `c` is a bit mask with qubit 0 most significant; a set
/// bit selects the primed setting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelatorPoly {
    pub n: usize,
    pub coeffs: Vec<Rational64>,
}

impl CorrelatorPoly {
    /// Nonzero `(choice mask, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, Rational64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, &c)| (m, c))
    }

    pub fn is_primed(&self, mask: usize, qubit: usize) -> bool {
        mask & (1 << (self.n - 1 - qubit)) != 0
    }

    pub fn evaluate(&self, asg: &Assignment) -> Result<Rational64> {
        if asg.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, actual: asg.n() });
        }
        Ok(self
            .terms()
            .map(|(m, c)| {
                let sign: i64 = asg
                    .values
                    .iter()
                    .enumerate()
                    .map(|(q, &(a, ap))| if self.is_primed(m, q) { ap as i64 } else { a as i64 })
                    .product();
                c * sign
            })
            .sum())
    }

    /// Choice string rendered as `u`/`p` characters.
    pub fn label(&self, mask: usize) -> String {
        (0..self.n).map(|q| if self.is_primed(mask, q) { 'p' } else { 'u' }).collect()
    }
}

/// Runs the recursion symbolically.
pub fn expand_correlators(n: usize) -> Result<CorrelatorPoly> {
    if n == 0 || n > crate::tolerances::MAX_QUBITS {
        return Err(Error::QubitCount { n, min: 1, max: crate::tolerances::MAX_QUBITS });
    }
    let half = Rational64::new(1, 2);
    let mut f = vec![Rational64::from_integer(2)];
    let mut fp = f.clone();
    for _ in 0..n {
        let mut next = vec![Rational64::zero(); f.len() * 2];
        let mut next_p = next.clone();
        for m in 0..f.len() {
            next[m << 1] = half * (f[m] + fp[m]);
            next[m << 1 | 1] = half * (f[m] - fp[m]);
            next_p[m << 1] = half * (fp[m] - f[m]);
            next_p[m << 1 | 1] = half * (fp[m] + f[m]);
        }
        f = next;
        fp = next_p;
    }
    Ok(CorrelatorPoly { n, coeffs: f })
}

/// Largest `|F_n - [(F_{n-m}+F'_{n-m}) F_m + (F_{n-m}-F'_{n-m}) F'_m] / 4|`
/// over `trials` random assignments, where the `n-m` block is the first
/// qubits and the `m` block the last ones. Exact arithmetic throughout.
pub fn fnm_identity_check(n: usize, m: usize, trials: usize, seed: u64) -> Result<Rational64> {
    if m == 0 || m >= n || n > 12 {
        return Err(Error::InvalidParameter(format!("need 1 <= m < n <= 12, got n = {n}, m = {m}")));
    }
    let quarter = Rational64::new(1, 4);
    let mut rng = crate::rng::seeded(seed);
    let mut worst = Rational64::zero();
    for _ in 0..trials {
        let asg = Assignment::random(n, &mut rng);
        let lhs = f_classical(&asg);
        let (head, head_p) = f_pair(&asg.slice(0..n - m));
        let (tail, tail_p) = f_pair(&asg.slice(n - m..n));
        let rhs = quarter * (head + head_p) * tail + quarter * (head - head_p) * tail_p;
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn asg(v: &[(i8, i8)]) -> Assignment {
        Assignment::new(v.to_vec()).unwrap()
    }

    fn r(x: i64) -> Rational64 {
        Rational64::from_integer(x)
    }

    #[test]
    fn single_qubit_base_case() {
        assert_eq!(f_classical(&asg(&[(1, 1)])), r(2));
        assert_eq!(f_classical(&asg(&[(-1, 1)])), r(-2));
        assert_eq!(f_prime(&asg(&[(1, -1)])), r(-2));
    }

    #[test]
    fn two_qubits_is_chsh() {
        // (a, a', b, b') = (1, 1, 1, -1): ab + ab' + a'b - a'b' = 1 - 1 + 1 + 1.
        let x = asg(&[(1, 1), (1, -1)]);
        assert_eq!(f_classical(&x), r(2));
        // a'b' + a'b + ab' - ab = -1 + 1 - 1 - 1.
        assert_eq!(f_prime(&x), r(-2));
    }

    #[test]
    fn three_qubits_all_plus() {
        assert_eq!(f_classical(&asg(&[(1, 1), (1, 1), (1, 1)])), r(2));
    }

    #[test]
    fn prime_is_swap_and_involution() {
        let mut rng = crate::rng::seeded(9);
        for n in 1..=8 {
            for _ in 0..50 {
                let x = Assignment::random(n, &mut rng);
                assert_eq!(f_prime(&x), f_classical(&x.swapped()));
                assert_eq!(f_prime(&x.swapped()), f_classical(&x));
                assert_eq!(f_classical(&x).abs(), r(2));
            }
        }
    }

    #[test]
    fn assignment_validation() {
        assert!(Assignment::new(vec![(1, 0)]).is_err());
        assert!(Assignment::new(vec![]).is_err());
    }

    #[test]
    fn lhv_small_cases() {
        assert_eq!(lhv_max(2).unwrap(), r(2));
        assert_eq!(lhv_max(3).unwrap(), r(2));
        assert!(lhv_max(11).is_err());
    }

    #[test]
    fn expansion_examples() {
        let p1 = expand_correlators(1).unwrap();
        assert_eq!(p1.coeffs, vec![r(2), r(0)]);

        let p2 = expand_correlators(2).unwrap();
        let by_label: Vec<(String, Rational64)> = p2.terms().map(|(m, c)| (p2.label(m), c)).collect();
        assert_eq!(
            by_label,
            vec![("uu".into(), r(1)), ("up".into(), r(1)), ("pu".into(), r(1)), ("pp".into(), r(-1))]
        );

        // a b c' + a b' c + a' b c - a' b' c'.
        let p3 = expand_correlators(3).unwrap();
        let mut got: Vec<(String, Rational64)> = p3.terms().map(|(m, c)| (p3.label(m), c)).collect();
        got.sort();
        let mut want = vec![
            ("uup".to_string(), r(1)),
            ("upu".to_string(), r(1)),
            ("puu".to_string(), r(1)),
            ("ppp".to_string(), r(-1)),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn expansion_matches_recursion() {
        let mut rng = crate::rng::seeded(4);
        for n in 1..=10 {
            let poly = expand_correlators(n).unwrap();
            for _ in 0..100 {
                let x = Assignment::random(n, &mut rng);
                assert_eq!(poly.evaluate(&x).unwrap(), f_classical(&x));
            }
        }
    }

    #[test]
    fn expansion_is_permutation_symmetric() {
        // Coefficients depend only on how many settings are primed.
        for n in 1..=10 {
            let poly = expand_correlators(n).unwrap();
            for (m, c) in poly.coeffs.iter().enumerate() {
                let canonical = (1usize << m.count_ones()) - 1;
                assert_eq!(*c, poly.coeffs[canonical], "n = {n}, mask = {m:b}");
            }
        }
    }

    #[test]
    fn fnm_identity_small() {
        assert_eq!(fnm_identity_check(3, 1, 200, 1).unwrap(), r(0));
        assert_eq!(fnm_identity_check(6, 3, 1000, 2).unwrap(), r(0));
        assert_eq!(fnm_identity_check(12, 5, 1000, 3).unwrap(), r(0));
        assert!(fnm_identity_check(3, 3, 10, 0).is_err());
    }
}
