//! Exact complex rationals and binomial coefficients.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Complex number with arbitrary-precision rational parts.
pub type ExactComplex = Complex<BigRational>;

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn exact(re: BigRational, im: BigRational) -> ExactComplex {
    Complex::new(re, im)
}

pub fn exact_int(re: i64, im: i64) -> ExactComplex {
    Complex::new(rational(re, 1), rational(im, 1))
}

pub fn exact_zero() -> ExactComplex {
    Complex::new(BigRational::zero(), BigRational::zero())
}

pub fn exact_one() -> ExactComplex {
    Complex::new(BigRational::one(), BigRational::zero())
}

/// `i^k` for any integer `k`.
pub fn i_pow(k: i64) -> ExactComplex {
    match k.rem_euclid(4) {
        0 => exact_int(1, 0),
        1 => exact_int(0, 1),
        2 => exact_int(-1, 0),
        _ => exact_int(0, -1),
    }
}

pub fn pow(z: &ExactComplex, e: usize) -> ExactComplex {
    (0..e).fold(exact_one(), |acc, _| acc * z)
}

pub fn norm_sqr(z: &ExactComplex) -> BigRational {
    &z.re * &z.re + &z.im * &z.im
}

pub fn to_complex64(z: &ExactComplex) -> Complex64 {
    Complex64::new(to_f64(&z.re), to_f64(&z.im))
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `C(n, k)`, zero when `k` is negative or exceeds `n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Serialized form `{"re": "p/q", "im": "r/s"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRepr {
    pub re: String,
    pub im: String,
}

impl From<&ExactComplex> for ExactRepr {
    fn from(z: &ExactComplex) -> Self {
        ExactRepr { re: z.re.to_string(), im: z.im.to_string() }
    }
}

impl TryFrom<&ExactRepr> for ExactComplex {
    type Error = Error;

    fn try_from(r: &ExactRepr) -> Result<Self> {
        let parse = |s: &str| {
            s.trim()
                .parse::<BigRational>()
                .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
        };
        Ok(Complex::new(parse(&r.re)?, parse(&r.im)?))
    }
}

/// Human-readable `a + bi` rendering.
pub fn display(z: &ExactComplex) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => z.re.to_string(),
        (true, false) => format!("{}i", z.im),
        (false, false) => {
            let sign = if z.im.is_negative() { '-' } else { '+' };
            format!("{} {} {}i", z.re, sign, z.im.abs())
        }
    }
}
