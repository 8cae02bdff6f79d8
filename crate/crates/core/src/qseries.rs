//! Truncated formal series in q^{1/2}.
//!
//! Exponents are stored doubled: the key `j` stands for q^{j/2}. A series
//! keeps every power up to and including `q^{max_exp2/2}`.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One, Signed, Zero};

use crate::algebra::{rat, GradedPoly, Rational};
use crate::error::{Error, Result};

/// Coefficient ring of a [`QHalfSeries`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;
    /// The rational `c` embedded in the same ring as `self`.
    fn constant_like(&self, c: Rational) -> Self;
    fn unit_inverse(&self) -> Result<Self>;
}

impl Coefficient for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &Rational) -> Self {
        self * c
    }
    fn constant_like(&self, c: Rational) -> Self {
        c
    }
    fn unit_inverse(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::NonUnit(self.to_string()))
        } else {
            Ok(self.recip())
        }
    }
}

impl Coefficient for GradedPoly {
    fn is_zero(&self) -> bool {
        GradedPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn constant_like(&self, c: Rational) -> Self {
        GradedPoly::constant(c, self.trunc())
    }
    fn unit_inverse(&self) -> Result<Self> {
        self.inverse()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QHalfSeries<C> {
    max_exp2: u32,
    coeffs: BTreeMap<u32, C>,
}

impl<C: Coefficient> QHalfSeries<C> {
    /// The zero series kept through q^{cap}.
    pub fn zero(cap: u32) -> Self {
        QHalfSeries::zero_exp2(2 * cap)
    }

    pub fn zero_exp2(max_exp2: u32) -> Self {
        QHalfSeries {
            max_exp2,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: C, cap: u32) -> Self {
        let mut s = QHalfSeries::zero(cap);
        s.set(0, c);
        s
    }

    /// Builds a series from integer-power coefficients c_0, c_1, …
    pub fn from_integer_coeffs(coeffs: Vec<C>, cap: u32) -> Self {
        let mut s = QHalfSeries::zero(cap);
        for (n, c) in coeffs.into_iter().enumerate() {
            s.set(2 * n as u32, c);
        }
        s
    }

    /// Inverse of [`from_integer_coeffs`](Self::from_integer_coeffs); `None`
    /// if a half-integer power is present.
    pub fn to_integer_coeffs(&self, zero: &C) -> Option<Vec<C>> {
        if self.half_integer_exponent().is_some() {
            return None;
        }
        Some(
            (0..=self.max_exp2 / 2)
                .map(|n| self.coeffs.get(&(2 * n)).cloned().unwrap_or_else(|| zero.clone()))
                .collect(),
        )
    }

    pub fn max_exp2(&self) -> u32 {
        self.max_exp2
    }

    /// Integer order cap N (powers through q^N are kept).
    pub fn cap(&self) -> u32 {
        self.max_exp2 / 2
    }

    /// Sets the coefficient of q^{exp2/2}; ignored beyond the cap.
    pub fn set(&mut self, exp2: u32, c: C) {
        if exp2 > self.max_exp2 {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&exp2);
        } else {
            self.coeffs.insert(exp2, c);
        }
    }

    pub fn add_at(&mut self, exp2: u32, c: &C) {
        if exp2 > self.max_exp2 {
            return;
        }
        let next = match self.coeffs.get(&exp2) {
            Some(old) => old.plus(c),
            None => c.clone(),
        };
        self.set(exp2, next);
    }

    pub fn coeff(&self, exp2: u32) -> Option<&C> {
        self.coeffs.get(&exp2)
    }

    pub fn coeff_or(&self, exp2: u32, zero: &C) -> C {
        self.coeffs.get(&exp2).cloned().unwrap_or_else(|| zero.clone())
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &C)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// First odd doubled exponent with a nonzero coefficient.
    pub fn half_integer_exponent(&self) -> Option<u32> {
        self.coeffs.keys().copied().find(|e| e % 2 == 1)
    }

    pub fn truncate_exp2(&self, max_exp2: u32) -> Self {
        let max_exp2 = max_exp2.min(self.max_exp2);
        QHalfSeries {
            max_exp2,
            coeffs: self
                .coeffs
                .range(..=max_exp2)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> QHalfSeries<D> {
        let mut out = QHalfSeries::zero_exp2(self.max_exp2);
        for (&e, c) in &self.coeffs {
            out.set(e, f(c));
        }
        out
    }

    pub fn try_map<D: Coefficient>(&self, f: impl Fn(&C) -> Result<D>) -> Result<QHalfSeries<D>> {
        let mut out = QHalfSeries::zero_exp2(self.max_exp2);
        for (&e, c) in &self.coeffs {
            out.set(e, f(c)?);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let max = self.max_exp2.min(other.max_exp2);
        let mut out = self.truncate_exp2(max);
        for (&e, c) in other.coeffs.range(..=max) {
            out.add_at(e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|a| a.scaled(c))
    }

    /// Multiplies every coefficient by the ring element `c`.
    pub fn times_coeff(&self, c: &C) -> Self {
        self.map(|a| a.times(c))
    }

    /// Cauchy product, truncated at the smaller cap.
    pub fn mul(&self, other: &Self) -> Self {
        let max = self.max_exp2.min(other.max_exp2);
        let mut out = QHalfSeries::zero_exp2(max);
        for (&ea, ca) in self.coeffs.range(..=max) {
            for (&eb, cb) in other.coeffs.range(..=max - ea) {
                out.add_at(ea + eb, &ca.times(cb));
            }
        }
        out
    }

    /// Multiplicative inverse up to the cap; the q⁰ coefficient must be a unit.
    pub fn inv(&self) -> Result<Self> {
        let a0 = self
            .coeffs
            .get(&0)
            .ok_or_else(|| Error::NonUnit("0".to_string()))?;
        let a0_inv = a0.unit_inverse()?;
        let zero = a0.constant_like(Rational::zero());
        let mut b: Vec<C> = Vec::with_capacity(self.max_exp2 as usize + 1);
        b.push(a0_inv.clone());
        for n in 1..=self.max_exp2 {
            let mut acc = zero.clone();
            for (&i, ai) in self.coeffs.range(1..=n) {
                acc = acc.plus(&ai.times(&b[(n - i) as usize]));
            }
            b.push(zero.minus(&acc.times(&a0_inv)));
        }
        let mut out = QHalfSeries::zero_exp2(self.max_exp2);
        for (n, c) in b.into_iter().enumerate() {
            out.set(n as u32, c);
        }
        Ok(out)
    }

    /// The formal T-action q^{1/2} ↦ −q^{1/2}.
    pub fn tau_shift_half(&self) -> Self {
        let mut out = QHalfSeries::zero_exp2(self.max_exp2);
        for (&e, c) in &self.coeffs {
            out.set(e, if e % 2 == 1 { c.scaled(&rat(-1)) } else { c.clone() });
        }
        out
    }

    /// Canonical text `c0 + c1*q^(1/2) + c2*q + …` with parenthesized
    /// coefficients when they are not plain rationals.
    pub fn canonical(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|(&e, c)| {
                let c = c.to_string();
                let c = if c.contains(' ') { format!("({c})") } else { c };
                match e {
                    0 => c,
                    _ => format!("{c}*{}", q_power(e)),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl QHalfSeries<GradedPoly> {
    /// exp(X) = Σ Xⁿ/n! for a series whose coefficients all have zero
    /// constant term (so Xⁿ vanishes for n beyond the polynomial truncation).
    pub fn exp_nilpotent(&self) -> Result<Self> {
        let trunc = self
            .coeffs
            .values()
            .map(GradedPoly::trunc)
            .min()
            .unwrap_or(0);
        for c in self.coeffs.values() {
            let c0 = c.constant_term();
            if !Zero::is_zero(&c0) {
                return Err(Error::NonNilpotent(c0.to_string()));
            }
        }
        let mut result = QHalfSeries::zero_exp2(self.max_exp2);
        result.set(0, GradedPoly::one(trunc));
        let mut term = result.clone();
        let mut n = 1i64;
        loop {
            term = term.mul(self).scale(&Rational::new(BigInt::one(), n.into()));
            if term.is_zero() {
                break;
            }
            result = result.add(&term);
            n += 1;
        }
        Ok(result)
    }

    pub fn top_component(&self, d: u32) -> Self {
        self.map(|c| c.top_component(d))
    }

    /// Embeds a rational series as constants of truncation `trunc`.
    pub fn from_rational(s: &QHalfSeries<Rational>, trunc: u32) -> Self {
        s.map(|c| GradedPoly::constant(c.clone(), trunc))
    }
}

fn q_power(e: u32) -> String {
    match e {
        2 => "q".to_string(),
        e if e % 2 == 0 => format!("q^{}", e / 2),
        e => format!("q^({e}/2)"),
    }
}

impl QHalfSeries<Rational> {
    /// Human-readable form: `1 + 240 q + 2160 q^2 - 504 q^3`.
    pub fn pretty(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            let body = match (e, mag.is_one()) {
                (0, _) => mag.to_string(),
                (_, true) => q_power(e),
                (_, false) => format!("{mag} {}", q_power(e)),
            };
            let neg = c.is_negative();
            match (i, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => out.push_str(&format!("-{body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
                (_, true) => out.push_str(&format!(" - {body}")),
            }
        }
        out
    }
}

fn divisor_power_sum(n: u64, k: u32) -> BigInt {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| BigInt::from(d).pow(k))
        .sum()
}

/// E4 = 1 + 240 Σ σ₃(n)qⁿ, E6 = 1 − 504 Σ σ₅(n)qⁿ, through q^{cap}.
pub fn eisenstein(weight: u32, cap: u32) -> Result<QHalfSeries<Rational>> {
    let (scale, k) = match weight {
        4 => (240, 3),
        6 => (-504, 5),
        w => return Err(Error::UnsupportedWeight(w)),
    };
    let mut coeffs = vec![Rational::one()];
    for n in 1..=cap as u64 {
        coeffs.push(Rational::from_integer(BigInt::from(scale) * divisor_power_sum(n, k)));
    }
    Ok(QHalfSeries::from_integer_coeffs(coeffs, cap))
}

/// The level-one basis element of the given weight with constant term 1:
/// E4, E6, E4², E4·E6.
pub fn eisenstein_basis(weight: u32, cap: u32) -> Result<QHalfSeries<Rational>> {
    match weight {
        4 | 6 => eisenstein(weight, cap),
        8 => {
            let e4 = eisenstein(4, cap)?;
            Ok(e4.mul(&e4))
        }
        10 => Ok(eisenstein(4, cap)?.mul(&eisenstein(6, cap)?)),
        w => Err(Error::UnsupportedWeight(w)),
    }
}
