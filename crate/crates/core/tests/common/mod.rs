//! Independent oracles shared by the integration tests: explicit Chern
//! roots, Taylor coefficients computed from first principles, and random
//! generators for property tests.
#![allow(dead_code)]

use anomaly_core::algebra::{frac, rat, Family, Generator, GradedPoly, Monomial, Rational};
use num::{BigInt, One, Zero};
use proptest::prelude::*;

pub fn fact(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// y_j = t_j², an explicit root square.
pub fn y(j: u8, trunc: u32) -> GradedPoly {
    GradedPoly::generator(Generator::RootSq(j), trunc)
}

/// e_1..e_r of y_1..y_r, as coefficients of ∏(1 + y_j z).
pub fn elementary(r: u8, trunc: u32) -> Vec<GradedPoly> {
    let mut e = vec![GradedPoly::one(trunc)];
    for j in 1..=r {
        let mut next = e.clone();
        next.push(GradedPoly::zero(trunc));
        for i in 1..next.len() {
            next[i] = &next[i] + &(&e[i - 1] * &y(j, trunc));
        }
        e = next;
    }
    e
}

/// Replaces the Pontryagin classes of `family` by e_i(y_1..y_r).
pub fn substitute_roots(p: &GradedPoly, family: Family, r: u8) -> GradedPoly {
    let e = elementary(r, p.trunc());
    let mut out = p.clone();
    for i in 1..=(p.trunc() / 4) as u8 {
        let g = family.pontryagin(i).unwrap();
        let value = e.get(i as usize).cloned().unwrap_or_else(|| GradedPoly::zero(p.trunc()));
        out = out.substitute(g, &value);
    }
    out
}

/// ∏_j f(y_j) for f = Σ c_n yⁿ.
pub fn root_product(c: &[Rational], r: u8, trunc: u32) -> GradedPoly {
    let mut acc = GradedPoly::one(trunc);
    for j in 1..=r {
        let mut f = GradedPoly::zero(trunc);
        let mut power = GradedPoly::one(trunc);
        for cn in c {
            f = &f + &power.scale(cn);
            power = &power * &y(j, trunc);
        }
        acc = &acc * &f;
    }
    acc
}

/// cosh(t/2) = Σ yⁿ / (4ⁿ (2n)!).
pub fn cosh_half_y(n: usize) -> Vec<Rational> {
    (0..n as u32)
        .map(|k| Rational::new(BigInt::one(), BigInt::from(4).pow(k) * fact(2 * k)))
        .collect()
}

/// sinh(t/2)/(t/2) = Σ yⁿ / (4ⁿ (2n+1)!).
pub fn sinhc_half_y(n: usize) -> Vec<Rational> {
    (0..n as u32)
        .map(|k| Rational::new(BigInt::one(), BigInt::from(4).pow(k) * fact(2 * k + 1)))
        .collect()
}

/// Power-series inverse of a series with nonzero constant term.
pub fn series_inverse(a: &[Rational]) -> Vec<Rational> {
    let mut b: Vec<Rational> = vec![a[0].recip()];
    for n in 1..a.len() {
        let s: Rational = (1..=n).map(|i| &a[i] * &b[n - i]).sum();
        b.push(-s / &a[0]);
    }
    b
}

/// (t/2)/tanh(t/2) in y: cosh · (sinh/(t/2))⁻¹.
pub fn lhat_y(n: usize) -> Vec<Rational> {
    let c = cosh_half_y(n);
    let s = series_inverse(&sinhc_half_y(n));
    (0..n).map(|k| (0..=k).map(|i| &c[i] * &s[k - i]).sum()).collect()
}

/// Σ_j exp(x_j) for explicit degree-2 roots x_j.
pub fn line_sum_ch(roots: &[u8], scale: i64, trunc: u32) -> GradedPoly {
    let mut total = GradedPoly::zero(trunc);
    for &j in roots {
        let x = GradedPoly::generator(Generator::Root(j), trunc).scale(&rat(scale));
        total = &total + &x.exp().unwrap();
    }
    total
}

pub fn mono(s: &str) -> Monomial {
    s.parse().unwrap()
}

pub fn poly(terms: &[(&str, i64, i64)], trunc: u32) -> GradedPoly {
    GradedPoly::from_terms(terms.iter().map(|&(m, n, d)| (mono(m), frac(n, d))), trunc)
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

const SMALL_MONOMIALS: &[&str] = &["1", "pX1", "pV1", "cL", "pX2", "pX1^2", "pX1*pV1", "cL^2", "pX1*cL", "cL^3", "pX3", "pX1*pX2"];

/// Random polynomials in a few low-degree generators at truncation 12.
pub fn arb_poly() -> impl Strategy<Value = GradedPoly> {
    prop::collection::vec((0..SMALL_MONOMIALS.len(), -5i64..=5, 1i64..=3), 0..6).prop_map(|terms| {
        GradedPoly::from_terms(terms.into_iter().map(|(i, n, d)| (mono(SMALL_MONOMIALS[i]), frac(n, d))), 12)
    })
}

/// Random polynomials with zero constant term.
pub fn arb_nilpotent() -> impl Strategy<Value = GradedPoly> {
    arb_poly().prop_map(|p| {
        let c = p.constant_term();
        &p - &GradedPoly::constant(c, 12)
    })
}

/// Rewrites a symmetric polynomial in y_1..y_r through the elementary
/// symmetric functions, returned as a polynomial in pX_i.
pub fn to_elementary(p: &GradedPoly, r: u8) -> GradedPoly {
    let trunc = p.trunc();
    let e = elementary(r, trunc);
    let mut rest = p.clone();
    let mut out = GradedPoly::zero(trunc);
    while !rest.is_zero() {
        let (lead, c) = rest
            .terms()
            .map(|(m, c)| ((1..=r).map(|j| m.exponent(Generator::RootSq(j))).collect::<Vec<u32>>(), c.clone()))
            .max_by(|a, b| a.0.cmp(&b.0))
            .unwrap();
        let mut factors = Vec::new();
        let mut term = GradedPoly::constant(c.clone(), trunc);
        for i in 0..r as usize {
            let next = lead.get(i + 1).copied().unwrap_or(0);
            let k = lead[i] - next;
            if k > 0 {
                factors.push((Generator::PontX(i as u8 + 1), k));
                term = &term * &e[i + 1].pow(k);
            }
        }
        out = &out + &GradedPoly::monomial(Monomial::from_factors(factors), c, trunc);
        rest = &rest - &term;
    }
    out
}

/// 2^{2k}·L̂ in degree 4k, from (t/2)/tanh(t/2) on explicit roots.
pub fn two_pow_lhat_top(dim: u32) -> GradedPoly {
    let r = (dim / 4) as u8;
    let lhat = root_product(&lhat_y(r as usize + 1), r, dim).top_component(dim);
    let scale = Rational::from_integer(BigInt::from(2).pow(dim / 2));
    to_elementary(&lhat, r).scale(&scale)
}
