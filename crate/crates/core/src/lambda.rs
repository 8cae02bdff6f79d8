//! Virtual bundles as λ-ring elements, represented by their Chern character,
//! and the Witten-type bundle q-series built from them.

use std::collections::BTreeMap;
use std::fmt;

use num::BigInt;

use crate::algebra::rational::factorial;
use crate::algebra::{power_sums, rat, Family, GradedPoly, Rational};
use crate::error::{Error, Result};
use crate::qseries::QHalfSeries;

/// A virtual bundle, identified with its total Chern character
/// `ch = rank + Σ_m ch_{2m}`. The constant term is always an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualBundle {
    ch: GradedPoly,
}

impl VirtualBundle {
    pub fn trivial(rank: i64, trunc: u32) -> Self {
        VirtualBundle {
            ch: GradedPoly::constant(rat(rank), trunc),
        }
    }

    pub fn zero(trunc: u32) -> Self {
        VirtualBundle::trivial(0, trunc)
    }

    /// Wraps a Chern character; the rank (constant term) must be integral.
    pub fn from_ch(ch: GradedPoly) -> Result<Self> {
        let r = ch.constant_term();
        if !r.is_integer() {
            return Err(Error::Parse(format!("non-integral rank {r}")));
        }
        Ok(VirtualBundle { ch })
    }

    /// The rank-zero bundle W̃_C = W ⊗ C − rank whose Chern roots are the
    /// pairs ±t_j of `family`: ch = Σ_j (e^{t_j} + e^{−t_j}) − rank, i.e.
    /// the degree-4m component is 2·s_{2m}/(2m)!.
    pub fn reduced_complexified(family: Family, trunc: u32) -> Self {
        let mut ch = GradedPoly::zero(trunc);
        let top = trunc / 4;
        if top > 0 {
            let sums = power_sums(top, family, trunc).expect("m >= 1");
            for (i, s) in sums.iter().enumerate() {
                let m = i as u32 + 1;
                let c = Rational::new(BigInt::from(2), factorial(2 * m));
                ch = &ch + &s.scale(&c);
            }
        }
        VirtualBundle { ch }
    }

    /// W ⊗ C of complex rank `rank` with roots from `family`.
    pub fn complexified(family: Family, rank: i64, trunc: u32) -> Self {
        VirtualBundle::trivial(rank, trunc).direct_sum(&VirtualBundle::reduced_complexified(family, trunc))
    }

    pub fn ch(&self) -> &GradedPoly {
        &self.ch
    }

    pub fn trunc(&self) -> u32 {
        self.ch.trunc()
    }

    pub fn rank(&self) -> BigInt {
        self.ch.constant_term().to_integer()
    }

    /// The degree-2m Chern-character component.
    pub fn component(&self, m: u32) -> GradedPoly {
        self.ch.top_component(2 * m)
    }

    /// W − rank(W).
    pub fn reduced(&self) -> Self {
        let r = self.ch.constant_term();
        VirtualBundle {
            ch: &self.ch - &GradedPoly::constant(r, self.trunc()),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        VirtualBundle {
            ch: &self.ch + &other.ch,
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        VirtualBundle {
            ch: &self.ch - &other.ch,
        }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        VirtualBundle {
            ch: &self.ch * &other.ch,
        }
    }

    /// n·W for an integer n.
    pub fn multiple(&self, n: i64) -> Self {
        VirtualBundle {
            ch: self.ch.scale(&rat(n)),
        }
    }

    fn scale_rational(&self, c: &Rational) -> Self {
        VirtualBundle { ch: self.ch.scale(c) }
    }
}

impl fmt::Display for VirtualBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[rank {}; ch {}]", self.rank(), self.ch)
    }
}

/// ψ^k: the degree-2m component is multiplied by k^m.
pub fn adams(k: u32, w: &VirtualBundle) -> Result<VirtualBundle> {
    if k == 0 {
        return Err(Error::ZeroAdams);
    }
    Ok(VirtualBundle {
        ch: w.ch.scale_by_degree(|d| rat(k as i64).pow((d / 2) as i32)),
    })
}

/// [λ⁰W, λ¹W, …, λ^{kmax}W] from k·λ^k = Σ_{i=1}^{k} (−1)^{i−1} ψ^i(W)·λ^{k−i}.
pub fn lambda_powers(w: &VirtualBundle, kmax: u32) -> Vec<VirtualBundle> {
    let trunc = w.trunc();
    let psi: Vec<VirtualBundle> = (1..=kmax).map(|i| adams(i, w).expect("i >= 1")).collect();
    let mut out = vec![VirtualBundle::trivial(1, trunc)];
    for k in 1..=kmax {
        let mut acc = VirtualBundle::zero(trunc);
        for i in 1..=k {
            let term = psi[(i - 1) as usize].tensor(&out[(k - i) as usize]);
            acc = if i % 2 == 1 { acc.direct_sum(&term) } else { acc.difference(&term) };
        }
        out.push(acc.scale_rational(&Rational::new(1.into(), k.into())));
    }
    out
}

pub fn lambda_power(k: u32, w: &VirtualBundle) -> VirtualBundle {
    lambda_powers(w, k).pop().unwrap()
}

/// [S⁰W, …, S^{kmax}W] from S_t(W) = 1/λ_{−t}(W), i.e.
/// S^k = Σ_{i=1}^{k} (−1)^{i−1} λ^i·S^{k−i}.
pub fn sym_powers(w: &VirtualBundle, kmax: u32) -> Vec<VirtualBundle> {
    let lam = lambda_powers(w, kmax);
    let mut out = vec![VirtualBundle::trivial(1, w.trunc())];
    for k in 1..=kmax {
        let mut acc = VirtualBundle::zero(w.trunc());
        for i in 1..=k {
            let term = lam[i as usize].tensor(&out[(k - i) as usize]);
            acc = if i % 2 == 1 { acc.direct_sum(&term) } else { acc.difference(&term) };
        }
        out.push(acc);
    }
    out
}

pub fn sym_power(k: u32, w: &VirtualBundle) -> VirtualBundle {
    sym_powers(w, k).pop().unwrap()
}

/// A q^{1/2}-series whose coefficients are virtual bundles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleQSeries {
    max_exp2: u32,
    trunc: u32,
    terms: BTreeMap<u32, VirtualBundle>,
}

impl BundleQSeries {
    pub fn one(cap: u32, trunc: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(0, VirtualBundle::trivial(1, trunc));
        BundleQSeries {
            max_exp2: 2 * cap,
            trunc,
            terms,
        }
    }

    pub fn max_exp2(&self) -> u32 {
        self.max_exp2
    }

    /// Coefficient of q^{exp2/2} (the zero bundle if absent).
    pub fn coeff(&self, exp2: u32) -> VirtualBundle {
        self.terms
            .get(&exp2)
            .cloned()
            .unwrap_or_else(|| VirtualBundle::zero(self.trunc))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &VirtualBundle)> {
        self.terms.iter().map(|(&e, w)| (e, w))
    }

    fn add_at(&mut self, exp2: u32, w: &VirtualBundle) {
        if exp2 > self.max_exp2 {
            return;
        }
        let next = match self.terms.get(&exp2) {
            Some(old) => old.direct_sum(w),
            None => w.clone(),
        };
        if next.ch().is_zero() {
            self.terms.remove(&exp2);
        } else {
            self.terms.insert(exp2, next);
        }
    }

    /// Termwise tensor product (Cauchy product).
    pub fn tensor(&self, other: &Self) -> Self {
        let max = self.max_exp2.min(other.max_exp2);
        let mut out = BundleQSeries {
            max_exp2: max,
            trunc: self.trunc.min(other.trunc),
            terms: BTreeMap::new(),
        };
        for (&ea, a) in self.terms.range(..=max) {
            for (&eb, b) in other.terms.range(..=max - ea) {
                out.add_at(ea + eb, &a.tensor(b));
            }
        }
        out
    }

    /// Applies ch termwise.
    pub fn ch(&self) -> QHalfSeries<GradedPoly> {
        let mut s = QHalfSeries::zero_exp2(self.max_exp2);
        for (&e, w) in &self.terms {
            s.set(e, w.ch().clone());
        }
        s
    }

    /// Σ_k (±1)^k op_k(W) q^{k·step2/2}, where `powers[k]` is op_k(W).
    fn generating(powers: &[VirtualBundle], step2: u32, negative: bool, max_exp2: u32, trunc: u32) -> Self {
        let mut out = BundleQSeries {
            max_exp2,
            trunc,
            terms: BTreeMap::new(),
        };
        for (k, p) in powers.iter().enumerate() {
            let e = k as u32 * step2;
            if e > max_exp2 {
                break;
            }
            let term = if negative && k % 2 == 1 { p.multiple(-1) } else { p.clone() };
            out.add_at(e, &term);
        }
        out
    }

    /// λ_{±q^{step2/2}}(W).
    pub fn lambda_factor(w: &VirtualBundle, step2: u32, negative: bool, cap: u32) -> Self {
        let max_exp2 = 2 * cap;
        let powers = lambda_powers(w, max_exp2 / step2);
        Self::generating(&powers, step2, negative, max_exp2, w.trunc())
    }

    /// S_{q^{step2/2}}(W).
    pub fn sym_factor(w: &VirtualBundle, step2: u32, cap: u32) -> Self {
        let max_exp2 = 2 * cap;
        let powers = sym_powers(w, max_exp2 / step2);
        Self::generating(&powers, step2, false, max_exp2, w.trunc())
    }
}

impl fmt::Display for BundleQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&e, w)| format!("q^({e}/2): {w}"))
            .collect();
        write!(f, "{}", parts.join("\n"))
    }
}

/// The Witten-type bundle series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaKind {
    /// ⊗ S_{qⁿ}(T̃) ⊗ ⊗ Λ_{q^m}(T̃)
    Theta1,
    /// ⊗ S_{qⁿ}(T̃) ⊗ ⊗ Λ_{−q^{m−1/2}}(T̃)
    Theta2,
    /// ⊗ S_{qⁿ}(T̃) ⊗ ⊗ Λ_{q^{m−1/2}}(T̃)
    Theta3,
    /// ⊗ S_{qⁿ}(T̃) ⊗ ⊗ Λ_{q^m}(Ṽ) ⊗ ⊗ Λ_{q^{r−1/2}}(Ṽ) ⊗ ⊗ Λ_{−q^{s−1/2}}(Ṽ)
    ThetaV,
    /// ⊗ S_{qⁿ}(T̃) ⊗ ⊗ Λ_{−q^m}(Ṽ)
    ThetaL,
}

impl ThetaKind {
    fn name(self) -> &'static str {
        match self {
            ThetaKind::Theta1 => "Θ1",
            ThetaKind::Theta2 => "Θ2",
            ThetaKind::Theta3 => "Θ3",
            ThetaKind::ThetaV => "ΘV",
            ThetaKind::ThetaL => "ΘL",
        }
    }
}

/// q-expansion of a Θ-bundle through q^{cap}. Bundles are reduced by their
/// rank before use; infinite tensor products keep only factors whose
/// q-weight is within the cap.
pub fn theta_series(
    kind: ThetaKind,
    tx: &VirtualBundle,
    v: Option<&VirtualBundle>,
    cap: u32,
) -> Result<BundleQSeries> {
    let t = tx.reduced();
    let max_exp2 = 2 * cap;
    let mut out = BundleQSeries::one(cap, tx.trunc());
    for n in 1..=cap {
        out = out.tensor(&BundleQSeries::sym_factor(&t, 2 * n, cap));
    }
    let half_integer = (1..=max_exp2).filter(|e| e % 2 == 1);
    let integer = (1..=cap).map(|n| 2 * n);
    match kind {
        ThetaKind::Theta1 => {
            for e in integer {
                out = out.tensor(&BundleQSeries::lambda_factor(&t, e, false, cap));
            }
        }
        ThetaKind::Theta2 | ThetaKind::Theta3 => {
            let negative = kind == ThetaKind::Theta2;
            for e in half_integer {
                out = out.tensor(&BundleQSeries::lambda_factor(&t, e, negative, cap));
            }
        }
        ThetaKind::ThetaV | ThetaKind::ThetaL => {
            let v = v.ok_or(Error::MissingAuxBundle(kind.name()))?.reduced();
            if kind == ThetaKind::ThetaV {
                for e in integer {
                    out = out.tensor(&BundleQSeries::lambda_factor(&v, e, false, cap));
                }
                for e in half_integer {
                    out = out.tensor(&BundleQSeries::lambda_factor(&v, e, false, cap));
                    out = out.tensor(&BundleQSeries::lambda_factor(&v, e, true, cap));
                }
            } else {
                for e in integer {
                    out = out.tensor(&BundleQSeries::lambda_factor(&v, e, true, cap));
                }
            }
        }
    }
    Ok(out)
}
