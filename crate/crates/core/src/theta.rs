//! Jacobi theta functions and their quotients as bivariate series in the
//! normalized root variable t and in q^{1/2}.
//!
//! The prefactor 2q^{1/8} of θ and θ₁ and the factor √−1 relating sin to
//! sinh are dropped throughout; they cancel in every quotient used here.

use std::fmt;

use num::{BigInt, One, Zero};

use crate::algebra::rational::factorial;
use crate::algebra::{power_sums, rat, Family, GradedPoly, Generator, Monomial, Rational};
use crate::case::{CaseKind, CaseSpec};
use crate::error::{Error, Result};
use crate::qseries::QHalfSeries;

/// Σ c_{a,j} t^a q^{j/2}, dense in both variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoVarSeries {
    t_cap: u32,
    q_cap2: u32,
    // coeffs[j][a] is the coefficient of t^a q^{j/2}
    coeffs: Vec<Vec<Rational>>,
}

impl TwoVarSeries {
    pub fn zero(t_cap: u32, q_cap: u32) -> Self {
        TwoVarSeries::zero_exp2(t_cap, 2 * q_cap)
    }

    fn zero_exp2(t_cap: u32, q_cap2: u32) -> Self {
        TwoVarSeries {
            t_cap,
            q_cap2,
            coeffs: vec![vec![Rational::zero(); t_cap as usize + 1]; q_cap2 as usize + 1],
        }
    }

    pub fn one(t_cap: u32, q_cap: u32) -> Self {
        let mut s = TwoVarSeries::zero(t_cap, q_cap);
        s.coeffs[0][0] = Rational::one();
        s
    }

    pub fn t_cap(&self) -> u32 {
        self.t_cap
    }

    pub fn q_cap2(&self) -> u32 {
        self.q_cap2
    }

    /// A pure t-series placed at q⁰.
    pub fn from_t_series(t: &[Rational], t_cap: u32, q_cap: u32) -> Self {
        let mut s = TwoVarSeries::zero(t_cap, q_cap);
        for (a, c) in t.iter().enumerate().take(t_cap as usize + 1) {
            s.coeffs[0][a] = c.clone();
        }
        s
    }

    /// c · q^{exp2/2}.
    pub fn q_monomial(c: Rational, exp2: u32, t_cap: u32, q_cap: u32) -> Self {
        let mut s = TwoVarSeries::zero(t_cap, q_cap);
        if exp2 <= s.q_cap2 {
            s.coeffs[exp2 as usize][0] = c;
        }
        s
    }

    /// c · e^{±t} · q^{exp2/2}, with e^{±t} expanded through t^{t_cap}.
    pub fn exp_t_monomial(c: &Rational, negative: bool, exp2: u32, t_cap: u32, q_cap: u32) -> Self {
        let mut s = TwoVarSeries::zero(t_cap, q_cap);
        if exp2 <= s.q_cap2 {
            for a in 0..=t_cap {
                let sign = if negative && a % 2 == 1 { -1 } else { 1 };
                s.coeffs[exp2 as usize][a as usize] =
                    c * Rational::new(BigInt::from(sign), factorial(a));
            }
        }
        s
    }

    pub fn get(&self, t_pow: u32, exp2: u32) -> Rational {
        self.coeffs
            .get(exp2 as usize)
            .and_then(|row| row.get(t_pow as usize))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn compatible(&self, other: &Self) -> (u32, u32) {
        (self.t_cap.min(other.t_cap), self.q_cap2.min(other.q_cap2))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (tc, qc) = self.compatible(other);
        let mut out = TwoVarSeries::zero_exp2(tc, qc);
        for j in 0..=qc as usize {
            for a in 0..=tc as usize {
                out.coeffs[j][a] = &self.coeffs[j][a] + &other.coeffs[j][a];
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        for row in &mut out.coeffs {
            for x in row.iter_mut() {
                *x *= c;
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (tc, qc) = self.compatible(other);
        let mut out = TwoVarSeries::zero_exp2(tc, qc);
        for ja in 0..=qc as usize {
            for (aa, x) in self.coeffs[ja].iter().enumerate().take(tc as usize + 1) {
                if x.is_zero() {
                    continue;
                }
                for jb in 0..=(qc as usize - ja) {
                    for ab in 0..=(tc as usize - aa) {
                        let y = &other.coeffs[jb][ab];
                        if !y.is_zero() {
                            out.coeffs[ja + jb][aa + ab] += x * y;
                        }
                    }
                }
            }
        }
        out
    }

    fn t_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len();
        let mut out = vec![Rational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn t_inv(a: &[Rational]) -> Result<Vec<Rational>> {
        if a[0].is_zero() {
            return Err(Error::NonUnit("0".into()));
        }
        let inv0 = a[0].recip();
        let mut b = vec![inv0.clone()];
        for n in 1..a.len() {
            let mut acc = Rational::zero();
            for i in 1..=n {
                acc += &a[i] * &b[n - i];
            }
            b.push(-acc * &inv0);
        }
        Ok(b)
    }

    /// Inverse; the t⁰q⁰ coefficient must be nonzero.
    pub fn inv(&self) -> Result<Self> {
        let b0 = Self::t_inv(&self.coeffs[0])?;
        let mut rows: Vec<Vec<Rational>> = vec![b0.clone()];
        for n in 1..=self.q_cap2 as usize {
            let mut acc = vec![Rational::zero(); self.t_cap as usize + 1];
            for i in 1..=n {
                let prod = Self::t_mul(&self.coeffs[i], &rows[n - i]);
                for (x, y) in acc.iter_mut().zip(prod) {
                    *x += y;
                }
            }
            let row = Self::t_mul(&b0, &acc).into_iter().map(|x| -x).collect();
            rows.push(row);
        }
        Ok(TwoVarSeries {
            t_cap: self.t_cap,
            q_cap2: self.q_cap2,
            coeffs: rows,
        })
    }

    /// log f for f with f(0, q) = 1.
    pub fn log(&self) -> Result<Self> {
        for (j, row) in self.coeffs.iter().enumerate() {
            let expected = if j == 0 { Rational::one() } else { Rational::zero() };
            if row[0] != expected {
                return Err(Error::LogConstant(format!("t^0 slice has {} at q^({j}/2)", row[0])));
            }
        }
        let y = self.sub(&TwoVarSeries::one(self.t_cap, 0).widen(self.q_cap2));
        let mut out = TwoVarSeries::zero_exp2(self.t_cap, self.q_cap2);
        let mut power = TwoVarSeries::one(self.t_cap, 0).widen(self.q_cap2);
        let mut n: i64 = 1;
        loop {
            power = power.mul(&y);
            if power.is_zero() {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&Rational::new(sign.into(), n.into())));
            n += 1;
        }
        Ok(out)
    }

    fn widen(mut self, q_cap2: u32) -> Self {
        self.coeffs
            .resize(q_cap2 as usize + 1, vec![Rational::zero(); self.t_cap as usize + 1]);
        self.q_cap2 = q_cap2;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|row| row.iter().all(Zero::is_zero))
    }

    /// q^{1/2} ↦ −q^{1/2}.
    pub fn tau_shift_half(&self) -> Self {
        let mut out = self.clone();
        for (j, row) in out.coeffs.iter_mut().enumerate() {
            if j % 2 == 1 {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        out
    }

    /// Restricts both caps.
    pub fn truncate(&self, t_cap: u32, q_cap2: u32) -> Self {
        let (tc, qc) = (t_cap.min(self.t_cap), q_cap2.min(self.q_cap2));
        TwoVarSeries {
            t_cap: tc,
            q_cap2: qc,
            coeffs: self.coeffs[..=qc as usize]
                .iter()
                .map(|row| row[..=tc as usize].to_vec())
                .collect(),
        }
    }

    /// The coefficient of t^a as a q-series.
    pub fn t_coefficient(&self, a: u32) -> QHalfSeries<Rational> {
        let mut s = QHalfSeries::zero_exp2(self.q_cap2);
        if a <= self.t_cap {
            for (j, row) in self.coeffs.iter().enumerate() {
                s.set(j as u32, row[a as usize].clone());
            }
        }
        s
    }

    /// The t-series at q^{exp2/2}.
    pub fn q_slice(&self, exp2: u32) -> Vec<Rational> {
        self.coeffs[exp2 as usize].clone()
    }

    pub fn is_even_in_t(&self) -> bool {
        self.coeffs
            .iter()
            .all(|row| row.iter().skip(1).step_by(2).all(Zero::is_zero))
    }

    pub fn is_odd_in_t(&self) -> bool {
        self.coeffs
            .iter()
            .all(|row| row.iter().step_by(2).all(Zero::is_zero))
    }
}

impl fmt::Display for TwoVarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (j, row) in self.coeffs.iter().enumerate() {
            for (a, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut vars = Vec::new();
                match a {
                    0 => {}
                    1 => vars.push("t".to_string()),
                    _ => vars.push(format!("t^{a}")),
                }
                match j {
                    0 => {}
                    2 => vars.push("q".to_string()),
                    _ if j % 2 == 0 => vars.push(format!("q^{}", j / 2)),
                    _ => vars.push(format!("q^({j}/2)")),
                }
                let negative = c < &Rational::zero();
                let mag = if negative { -c.clone() } else { c.clone() };
                let body = match (vars.is_empty(), mag.is_one()) {
                    (true, _) => mag.to_string(),
                    (false, true) => vars.join("*"),
                    (false, false) => format!("{mag}*{}", vars.join("*")),
                };
                match (out.is_empty(), negative) {
                    (true, false) => out.push_str(&body),
                    (true, true) => out.push_str(&format!("-{body}")),
                    (false, false) => out.push_str(&format!(" + {body}")),
                    (false, true) => out.push_str(&format!(" - {body}")),
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out}")
    }
}

fn sinh_half(t_cap: u32) -> Vec<Rational> {
    (0..=t_cap)
        .map(|a| {
            if a % 2 == 1 {
                Rational::new(BigInt::one(), factorial(a) * (BigInt::one() << a))
            } else {
                Rational::zero()
            }
        })
        .collect()
}

fn cosh_half(t_cap: u32) -> Vec<Rational> {
    (0..=t_cap)
        .map(|a| {
            if a % 2 == 0 {
                Rational::new(BigInt::one(), factorial(a) * (BigInt::one() << a))
            } else {
                Rational::zero()
            }
        })
        .collect()
}

/// (1 + s·e^{t}q^{e/2})(1 + s·e^{−t}q^{e/2}) with s = ±1.
fn root_pair_factor(plus: bool, exp2: u32, t_cap: u32, q_cap: u32) -> TwoVarSeries {
    let s = if plus { rat(1) } else { rat(-1) };
    let one = TwoVarSeries::one(t_cap, q_cap);
    let a = one.add(&TwoVarSeries::exp_t_monomial(&s, false, exp2, t_cap, q_cap));
    let b = one.add(&TwoVarSeries::exp_t_monomial(&s, true, exp2, t_cap, q_cap));
    a.mul(&b)
}

/// (1 + s·q^{e/2})².
fn flat_pair_factor(plus: bool, exp2: u32, t_cap: u32, q_cap: u32) -> TwoVarSeries {
    let s = if plus { rat(1) } else { rat(-1) };
    let f = TwoVarSeries::one(t_cap, q_cap).add(&TwoVarSeries::q_monomial(s, exp2, t_cap, q_cap));
    f.mul(&f)
}

/// Normalized Jacobi theta functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JacobiTheta {
    /// sinh(t/2) ∏ (1−qʲ)(1−eᵗqʲ)(1−e⁻ᵗqʲ)
    Theta,
    /// cosh(t/2) ∏ (1−qʲ)(1+eᵗqʲ)(1+e⁻ᵗqʲ)
    Theta1,
    /// ∏ (1−qʲ)(1−eᵗq^{j−1/2})(1−e⁻ᵗq^{j−1/2})
    Theta2,
    /// ∏ (1−qʲ)(1+eᵗq^{j−1/2})(1+e⁻ᵗq^{j−1/2})
    Theta3,
}

pub fn jacobi_theta(kind: JacobiTheta, t_cap: u32, q_cap: u32) -> TwoVarSeries {
    let mut s = match kind {
        JacobiTheta::Theta => TwoVarSeries::from_t_series(&sinh_half(t_cap), t_cap, q_cap),
        JacobiTheta::Theta1 => TwoVarSeries::from_t_series(&cosh_half(t_cap), t_cap, q_cap),
        _ => TwoVarSeries::one(t_cap, q_cap),
    };
    for j in 1..=q_cap {
        let eta = TwoVarSeries::one(t_cap, q_cap).sub(&TwoVarSeries::q_monomial(rat(1), 2 * j, t_cap, q_cap));
        s = s.mul(&eta);
        s = match kind {
            JacobiTheta::Theta => s.mul(&root_pair_factor(false, 2 * j, t_cap, q_cap)),
            JacobiTheta::Theta1 => s.mul(&root_pair_factor(true, 2 * j, t_cap, q_cap)),
            JacobiTheta::Theta2 => s.mul(&root_pair_factor(false, 2 * j - 1, t_cap, q_cap)),
            JacobiTheta::Theta3 => s.mul(&root_pair_factor(true, 2 * j - 1, t_cap, q_cap)),
        };
    }
    s
}

/// The theta quotients entering the characteristic forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuotientKind {
    /// t·θ′(0,τ)/θ(t,τ) = [(t/2)/sinh(t/2)] ∏ (1−qʲ)²/[(1−eᵗqʲ)(1−e⁻ᵗqʲ)]
    A,
    /// θ₁(t,τ)/θ₁(0,τ)
    B1,
    /// θ₂(t,τ)/θ₂(0,τ)
    B2,
    /// θ₃(t,τ)/θ₃(0,τ)
    B3,
    /// √−1·θ(t,τ)/(θ₁θ₂θ₃)(0,τ) = sinh(t/2) ∏ (1−eᵗqʲ)(1−e⁻ᵗqʲ)/(1−qʲ)²
    L,
}

pub fn theta_quotient(kind: QuotientKind, t_cap: u32, q_cap: u32) -> TwoVarSeries {
    let one = TwoVarSeries::one(t_cap, q_cap);
    let mut s = match kind {
        QuotientKind::A => {
            let sinhc: Vec<Rational> = sinh_half(t_cap + 1).into_iter().skip(1).collect();
            // sinh(t/2)/t has constant 1/2; (t/2)/sinh(t/2) = (1/2)·(sinh(t/2)/t)^{-1}
            let inv = TwoVarSeries::t_inv(&sinhc).expect("unit");
            TwoVarSeries::from_t_series(&inv, t_cap, q_cap).scale(&Rational::new(1.into(), 2.into()))
        }
        QuotientKind::B1 => TwoVarSeries::from_t_series(&cosh_half(t_cap), t_cap, q_cap),
        QuotientKind::L => TwoVarSeries::from_t_series(&sinh_half(t_cap), t_cap, q_cap),
        QuotientKind::B2 | QuotientKind::B3 => one.clone(),
    };
    match kind {
        QuotientKind::A | QuotientKind::B1 | QuotientKind::L => {
            let plus = kind == QuotientKind::B1;
            for j in 1..=q_cap {
                let num = root_pair_factor(plus, 2 * j, t_cap, q_cap);
                let den = flat_pair_factor(plus, 2 * j, t_cap, q_cap);
                s = if kind == QuotientKind::A {
                    s.mul(&den).mul(&num.inv().expect("unit"))
                } else {
                    s.mul(&num).mul(&den.inv().expect("unit"))
                };
            }
        }
        QuotientKind::B2 | QuotientKind::B3 => {
            let plus = kind == QuotientKind::B3;
            for e in (1..=2 * q_cap).filter(|e| e % 2 == 1) {
                let num = root_pair_factor(plus, e, t_cap, q_cap);
                let den = flat_pair_factor(plus, e, t_cap, q_cap);
                s = s.mul(&num).mul(&den.inv().expect("unit"));
            }
        }
    }
    s
}

/// θ′(0,τ) − π·θ₁(0,τ)θ₂(0,τ)θ₃(0,τ) after removing the common factor
/// 2π q^{1/8}; identically zero by Jacobi's identity.
pub fn jacobi_identity_residual(q_cap: u32) -> QHalfSeries<Rational> {
    let (lhs, rhs) = jacobi_identity_sides(q_cap);
    lhs.sub(&rhs)
}

/// (normalized θ′(0,τ), normalized θ₁θ₂θ₃(0,τ)).
pub fn jacobi_identity_sides(q_cap: u32) -> (QHalfSeries<Rational>, QHalfSeries<Rational>) {
    let t_cap = 1;
    let theta = jacobi_theta(JacobiTheta::Theta, t_cap, q_cap);
    // d/dv = 2π√−1 d/dt and sin(πv) = −√−1 sinh(t/2) combine to a real factor
    let lhs = theta.t_coefficient(1).scale(&rat(2));
    let at_zero = |k| jacobi_theta(k, t_cap, q_cap).t_coefficient(0);
    let rhs = at_zero(JacobiTheta::Theta1)
        .mul(&at_zero(JacobiTheta::Theta2))
        .mul(&at_zero(JacobiTheta::Theta3));
    (lhs, rhs)
}

/// ∏_j f(t_j) over the root pairs of `family`, for f even in t with
/// f(0,q) = 1, computed as exp(Σ_m a_m(q)·s_{2m}) where log f = Σ a_m(q) t^{2m}.
pub fn symmetric_product(f: &TwoVarSeries, family: Family, trunc: u32) -> Result<QHalfSeries<GradedPoly>> {
    if !f.is_even_in_t() {
        return Err(Error::Parse("symmetric product needs an even function of t".into()));
    }
    let log = f.log()?;
    let mut exponent = QHalfSeries::zero_exp2(f.q_cap2());
    let top = trunc / 4;
    if top > 0 {
        let sums = power_sums(top, family, trunc)?;
        for (i, s) in sums.iter().enumerate() {
            let a = log.t_coefficient(2 * (i as u32 + 1));
            exponent = exponent.add(&QHalfSeries::from_rational(&a, trunc).times_coeff(s));
        }
    }
    if exponent.is_zero() {
        return Ok(QHalfSeries::constant(GradedPoly::one(trunc), f.q_cap2() / 2));
    }
    exponent.exp_nilpotent()
}

/// f(c) for a single root c = cL, mapping t^a to cL^a.
pub fn line_substitution(f: &TwoVarSeries, trunc: u32) -> QHalfSeries<GradedPoly> {
    let mut out = QHalfSeries::zero_exp2(f.q_cap2());
    for j in 0..=f.q_cap2() {
        let mut p = GradedPoly::zero(trunc);
        for a in 0..=f.t_cap().min(trunc / 2) {
            p.add_term(Monomial::from_factors([(Generator::ChernL, a)]), f.get(a, j));
        }
        out.set(j, p);
    }
    out
}

/// The integrand of Q through the theta route, at full mixed degree.
pub fn q_series_via_theta(case: &CaseSpec) -> Result<QHalfSeries<GradedPoly>> {
    let dim = case.dim;
    let t_cap = dim + 2;
    let cap = case.cap;
    let quotient = |k| theta_quotient(k, t_cap, cap);
    let a_product = symmetric_product(&quotient(QuotientKind::A), Family::X, dim)?;
    match case.kind {
        CaseKind::Spin => {
            let mut sectors = QHalfSeries::zero(cap);
            for k in [QuotientKind::B1, QuotientKind::B2, QuotientKind::B3] {
                sectors = sectors.add(&symmetric_product(&quotient(k), Family::X, dim)?);
            }
            // one factor 2 per root: 2^{2k}
            let two_pow = rat(2).pow(case.tangent_root_pairs() as i32);
            Ok(a_product.mul(&sectors).scale(&two_pow))
        }
        CaseKind::SpinV => {
            let family = case.aux_family().expect("SpinV has an auxiliary family");
            let f = quotient(QuotientKind::B1)
                .mul(&quotient(QuotientKind::B2))
                .mul(&quotient(QuotientKind::B3));
            Ok(a_product.mul(&symmetric_product(&f, family, dim)?))
        }
        CaseKind::SpincL => Ok(a_product.mul(&line_substitution(&quotient(QuotientKind::L), dim))),
    }
}
