//! Multiplicative characteristic forms: Â, ch of the spinor bundle,
//! det^{1/2}cosh for an auxiliary bundle and the spin^c line factors.

use num::{BigInt, One};

use crate::algebra::rational::{bernoulli, factorial};
use crate::algebra::{power_sums, rat, Family, GradedPoly, Generator, Rational};
use crate::error::{Error, Result};

/// A per-root factor f(t) = multiplier · exp(Σ_m a_m t^{2m}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusSeries {
    log_coeffs: Vec<Rational>,
    multiplier: Rational,
}

impl GenusSeries {
    pub fn new(log_coeffs: Vec<Rational>, multiplier: Rational) -> Self {
        GenusSeries {
            log_coeffs,
            multiplier,
        }
    }

    pub fn trivial() -> Self {
        GenusSeries::new(Vec::new(), Rational::one())
    }

    /// (t/2)/sinh(t/2): a_m = −B_{2m} / (2m·(2m)!).
    pub fn ahat(terms: usize) -> Self {
        let b = bernoulli(2 * terms);
        let coeffs = (1..=terms)
            .map(|m| {
                let den = BigInt::from(2 * m) * factorial(2 * m as u32);
                -b[2 * m].clone() / Rational::from_integer(den)
            })
            .collect();
        GenusSeries::new(coeffs, Rational::one())
    }

    /// cosh(t/2): a_m = (2^{2m} − 1)·B_{2m} / (2m·(2m)!).
    pub fn cosh_half(terms: usize) -> Self {
        let b = bernoulli(2 * terms);
        let coeffs = (1..=terms)
            .map(|m| {
                let den = BigInt::from(2 * m) * factorial(2 * m as u32);
                let num = (BigInt::one() << (2 * m)) - 1;
                Rational::from_integer(num) * &b[2 * m] / Rational::from_integer(den)
            })
            .collect();
        GenusSeries::new(coeffs, Rational::one())
    }

    /// 2cosh(t/2) = e^{t/2} + e^{−t/2}, the per-pair factor of ch(Δ).
    pub fn spinor(terms: usize) -> Self {
        GenusSeries {
            multiplier: rat(2),
            ..GenusSeries::cosh_half(terms)
        }
    }

    pub fn log_coeffs(&self) -> &[Rational] {
        &self.log_coeffs
    }

    pub fn multiplier(&self) -> &Rational {
        &self.multiplier
    }
}

/// ∏_j f(t_j) over `root_pairs` pairs ±t_j of `family`, as
/// multiplier^{root_pairs} · exp(Σ_m a_m s_{2m}).
pub fn multiplicative_genus_eval(
    g: &GenusSeries,
    family: Family,
    root_pairs: u32,
    trunc: u32,
) -> Result<GradedPoly> {
    let need = (trunc / 4) as usize;
    let scale = num::pow(g.multiplier.clone(), root_pairs as usize);
    if need == 0 {
        return Ok(GradedPoly::constant(scale, trunc));
    }
    // an empty coefficient list is the constant genus
    if !g.log_coeffs.is_empty() && g.log_coeffs.len() < need {
        return Err(Error::GenusTruncation {
            have: g.log_coeffs.len(),
            need,
            trunc,
        });
    }
    let sums = power_sums(need as u32, family, trunc)?;
    let mut log = GradedPoly::zero(trunc);
    for (a, s) in g.log_coeffs.iter().zip(&sums) {
        log = &log + &s.scale(a);
    }
    Ok(log.exp()?.scale(&scale))
}

/// Â(TX) with per-root factor (t/2)/sinh(t/2).
pub fn ahat_form(dim: u32, trunc: u32) -> Result<GradedPoly> {
    if dim % 2 == 1 {
        return Err(Error::CaseDimension {
            case: "Â".into(),
            dim,
        });
    }
    multiplicative_genus_eval(&GenusSeries::ahat((trunc / 4) as usize), Family::X, dim / 2, trunc)
}

/// ch(Δ(X)) on a 4k-manifold: ∏_{j=1}^{2k} 2cosh(t_j/2).
pub fn spinor_ch(dim: u32) -> Result<GradedPoly> {
    if !dim.is_multiple_of(4) {
        return Err(Error::CaseDimension {
            case: "ch(Δ)".into(),
            dim,
        });
    }
    multiplicative_genus_eval(&GenusSeries::spinor((dim / 4) as usize), Family::X, dim / 2, dim)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AuxFactor {
    /// det^{1/2}cosh = ∏_r cosh(u_r/2) over the roots of `family`.
    DetCosh(Family),
    /// exp(c/2)
    ExpHalfC,
    /// sinh(c/2)
    SinhHalfC,
    /// cosh(c/2)
    CoshHalfC,
}

pub fn aux_bundle_factor(kind: AuxFactor, trunc: u32) -> Result<GradedPoly> {
    let c_half = || GradedPoly::generator(Generator::ChernL, trunc).scale(&Rational::new(1.into(), 2.into()));
    match kind {
        AuxFactor::DetCosh(family) => {
            if family == Family::X {
                return Err(Error::UnknownFamily("pX (det cosh needs pV or cL)".into()));
            }
            // the number of pairs only affects the multiplier, which is 1
            multiplicative_genus_eval(&GenusSeries::cosh_half((trunc / 4) as usize), family, 1, trunc)
        }
        AuxFactor::ExpHalfC => c_half().exp(),
        AuxFactor::SinhHalfC | AuxFactor::CoshHalfC => {
            let e = c_half().exp()?;
            let odd = kind == AuxFactor::SinhHalfC;
            let mut out = GradedPoly::zero(trunc);
            for (m, c) in e.terms() {
                if (m.exponent(Generator::ChernL) % 2 == 1) == odd {
                    out.add_term(m.clone(), c.clone());
                }
            }
            Ok(out)
        }
    }
}
