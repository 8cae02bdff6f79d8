//! Exact rationals. Backed by `num`'s arbitrary-precision `BigRational`,
//! which keeps the denominator positive and the fraction reduced.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: i64, k: u32) -> Rational {
    // generalized binomial, valid for negative n
    let mut acc = Rational::one();
    for i in 0..k as i64 {
        acc = acc * rat(n - i) / rat(i + 1);
    }
    acc
}

/// Bernoulli numbers B_0..=B_n with B_1 = -1/2.
pub fn bernoulli(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::zero(); n + 1];
    b[0] = Rational::one();
    for m in 1..=n {
        let mut s = Rational::zero();
        for k in 0..m {
            s += binomial(m as i64 + 1, k as u32) * &b[k];
        }
        b[m] = -s / rat(m as i64 + 1);
    }
    b
}

pub fn as_integer(r: &Rational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}
