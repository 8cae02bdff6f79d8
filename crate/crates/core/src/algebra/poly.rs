//! Graded commutative polynomials in characteristic-class generators with
//! exact rational coefficients, truncated above a cohomological degree.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::generator::Generator;
use super::rational::{rat, Rational};
use crate::error::{Error, Result};

/// A product of generator powers. Ordered by total degree first, so a
/// `BTreeMap<Monomial, _>` iterates in canonical output order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    degree: u32,
    // sorted by generator, exponents nonzero
    factors: Vec<(Generator, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn generator(g: Generator) -> Self {
        Monomial::from_factors([(g, 1)])
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Generator, u32)>) -> Self {
        let mut map: BTreeMap<Generator, u32> = BTreeMap::new();
        for (g, e) in factors {
            *map.entry(g).or_default() += e;
        }
        let factors: Vec<_> = map.into_iter().filter(|&(_, e)| e > 0).collect();
        let degree = factors.iter().map(|&(g, e)| g.degree() * e).sum();
        Monomial { degree, factors }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, g: Generator) -> u32 {
        self.factors
            .iter()
            .find(|(h, _)| *h == g)
            .map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, b) = (self.factors[i], other.factors[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial {
            degree: self.degree + other.degree,
            factors: out,
        }
    }

    /// Removes `g` entirely, returning the remaining monomial and the exponent.
    fn split_off(&self, g: Generator) -> (Monomial, u32) {
        let e = self.exponent(g);
        let factors: Vec<_> = self.factors.iter().copied().filter(|(h, _)| *h != g).collect();
        (
            Monomial {
                degree: self.degree - g.degree() * e,
                factors,
            },
            e,
        )
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(g, e)| if e == 1 { g.to_string() } else { format!("{g}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl std::str::FromStr for Monomial {
    type Err = Error;

    /// Parses `"pX1^2*pX2"`, `"cL*pX1"` or `"1"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        let mut factors = Vec::new();
        for part in s.split('*') {
            let part = part.trim();
            let (name, exp) = match part.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{part}`")))?,
                ),
                None => (part, 1),
            };
            factors.push((name.trim().parse::<Generator>()?, exp));
        }
        Ok(Monomial::from_factors(factors))
    }
}

/// Polynomial truncated above cohomological degree `trunc`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedPoly {
    trunc: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPoly {
    pub fn zero(trunc: u32) -> Self {
        GradedPoly {
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(trunc: u32) -> Self {
        GradedPoly::constant(Rational::one(), trunc)
    }

    pub fn constant(c: Rational, trunc: u32) -> Self {
        GradedPoly::monomial(Monomial::one(), c, trunc)
    }

    pub fn generator(g: Generator, trunc: u32) -> Self {
        GradedPoly::monomial(Monomial::generator(g), Rational::one(), trunc)
    }

    pub fn monomial(m: Monomial, c: Rational, trunc: u32) -> Self {
        let mut p = GradedPoly::zero(trunc);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>, trunc: u32) -> Self {
        let mut p = GradedPoly::zero(trunc);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m`, silently dropping it if `m` lies above the truncation.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if m.degree() > self.trunc || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Restricts to a lower truncation degree.
    pub fn truncate(&self, trunc: u32) -> GradedPoly {
        let trunc = trunc.min(self.trunc);
        GradedPoly {
            trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= trunc)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The homogeneous component of exact degree `d`, written {x}^{(d)}.
    pub fn top_component(&self, d: u32) -> GradedPoly {
        GradedPoly {
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero(self.trunc);
        }
        GradedPoly {
            trunc: self.trunc,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies each homogeneous component of degree d by `f(d)`.
    pub fn scale_by_degree(&self, f: impl Fn(u32) -> Rational) -> GradedPoly {
        let mut out = GradedPoly::zero(self.trunc);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * f(m.degree()));
        }
        out
    }

    pub fn pow(&self, n: u32) -> GradedPoly {
        let mut acc = GradedPoly::one(self.trunc);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces every occurrence of `g` by `value`.
    pub fn substitute(&self, g: Generator, value: &GradedPoly) -> GradedPoly {
        let trunc = self.trunc.min(value.trunc);
        let mut out = GradedPoly::zero(trunc);
        let mut powers: Vec<GradedPoly> = vec![GradedPoly::one(trunc)];
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(g);
            if e == 0 {
                out.add_term(rest, c.clone());
                continue;
            }
            while powers.len() <= e as usize {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let base = GradedPoly::monomial(rest, c.clone(), trunc);
            out = &out + &(&base * &powers[e as usize]);
        }
        out
    }

    /// Evaluates the polynomial at rational generator values.
    pub fn evaluate(&self, value: impl Fn(Generator) -> Rational) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(g, e) in m.factors() {
                t *= num::pow(value(g), e as usize);
            }
            total += t;
        }
        total
    }

    /// Σ_{n≥0} xⁿ/n!, terminating because x is nilpotent under truncation.
    pub fn exp(&self) -> Result<GradedPoly> {
        let c = self.constant_term();
        if !c.is_zero() {
            return Err(Error::NonNilpotent(c.to_string()));
        }
        let mut result = GradedPoly::one(self.trunc);
        let mut term = GradedPoly::one(self.trunc);
        let mut n = 1;
        loop {
            term = (&term * self).scale(&Rational::new(1.into(), n.into()));
            if term.is_zero() {
                break;
            }
            result = &result + &term;
            n += 1;
        }
        Ok(result)
    }

    /// Σ_{n≥1} (−1)^{n+1}(x−1)ⁿ/n.
    pub fn log(&self) -> Result<GradedPoly> {
        let c = self.constant_term();
        if !c.is_one() {
            return Err(Error::LogConstant(c.to_string()));
        }
        let y = self - &GradedPoly::one(self.trunc);
        let mut result = GradedPoly::zero(self.trunc);
        let mut power = GradedPoly::one(self.trunc);
        let mut n: i64 = 1;
        loop {
            power = &power * &y;
            if power.is_zero() {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            result = &result + &power.scale(&Rational::new(sign.into(), n.into()));
            n += 1;
        }
        Ok(result)
    }

    /// Multiplicative inverse when the constant term is a nonzero rational.
    pub fn inverse(&self) -> Result<GradedPoly> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::NonUnit(self.to_string()));
        }
        let c_inv = c.recip();
        // x = c(1 + n)  =>  1/x = c^{-1} Σ (-n)^k
        let n = &self.scale(&c_inv) - &GradedPoly::one(self.trunc);
        let minus_n = -&n;
        let mut result = GradedPoly::one(self.trunc);
        let mut power = GradedPoly::one(self.trunc);
        loop {
            power = &power * &minus_n;
            if power.is_zero() {
                break;
            }
            result = &result + &power;
        }
        Ok(result.scale(&c_inv))
    }

    /// All generators that occur in the polynomial.
    pub fn generators(&self) -> Vec<Generator> {
        let mut gens: Vec<Generator> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(g, _)| g))
            .collect();
        gens.sort();
        gens.dedup();
        gens
    }

    /// Canonical text: terms sorted by (degree, monomial), e.g.
    /// `1 - 1/24*pX1 + 7/5760*pX1^2 - 1/1440*pX2`.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            let body = if m.is_one() {
                mag.to_string()
            } else if mag.is_one() {
                m.to_string()
            } else {
                format!("{mag}*{m}")
            };
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;

    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        let trunc = self.trunc.min(rhs.trunc);
        let mut out = self.truncate(trunc);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;

    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        let trunc = self.trunc.min(rhs.trunc);
        let mut out = self.truncate(trunc);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;

    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        let trunc = self.trunc.min(rhs.trunc);
        let mut out = GradedPoly::zero(trunc);
        for (ma, ca) in &self.terms {
            if ma.degree() > trunc {
                continue;
            }
            for (mb, cb) in &rhs.terms {
                if ma.degree() + mb.degree() > trunc {
                    continue;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;

    fn neg(self) -> GradedPoly {
        self.scale(&rat(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GradedPoly {
            type Output = GradedPoly;
            fn $m(self, rhs: GradedPoly) -> GradedPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        -&self
    }
}
