//! Assembly of the Q-series integrands by the bundle route, comparison
//! with the theta route, the Pontryagin-class conditions and the
//! Eisenstein fit.

use crate::algebra::{rat, Family, Generator, GradedPoly, Rational};
use crate::case::{CaseKind, CaseSpec, Route, VSource};
use crate::error::{Error, Result};
use crate::forms::{ahat_form, aux_bundle_factor, spinor_ch, AuxFactor};
use crate::lambda::{theta_series, ThetaKind, VirtualBundle};
use crate::qseries::{eisenstein_basis, QHalfSeries};
use crate::theta::q_series_via_theta;

/// The per-pair factor multiplying Â when the auxiliary bundle is a line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineFactor {
    Exp,
    Sinh,
    Cosh,
}

impl LineFactor {
    /// The factor the theta route produces at full degree.
    pub fn natural(case: &CaseSpec) -> Option<LineFactor> {
        match (case.kind, case.v_source) {
            (CaseKind::SpincL, _) => Some(LineFactor::Sinh),
            (CaseKind::SpinV, VSource::SpincLine) => Some(LineFactor::Cosh),
            _ => None,
        }
    }

    fn aux(self) -> AuxFactor {
        match self {
            LineFactor::Exp => AuxFactor::ExpHalfC,
            LineFactor::Sinh => AuxFactor::SinhHalfC,
            LineFactor::Cosh => AuxFactor::CoshHalfC,
        }
    }
}

/// The integrand of Q at full mixed degree, built from Θ-bundles.
/// `line` overrides the line factor; it is ignored when there is no line.
pub fn q_series_via_bundles(case: &CaseSpec, line: Option<LineFactor>) -> Result<QHalfSeries<GradedPoly>> {
    let dim = case.dim;
    let cap = case.cap;
    let t = VirtualBundle::reduced_complexified(Family::X, dim);
    let ahat = ahat_form(dim, dim)?;
    match case.kind {
        CaseKind::Spin => {
            let delta = spinor_ch(dim)?;
            let two_pow = rat(2).pow(case.tangent_root_pairs() as i32);
            let theta = |k| theta_series(k, &t, None, cap).map(|s| s.ch());
            let mut sum = theta(ThetaKind::Theta1)?.times_coeff(&delta);
            let half = theta(ThetaKind::Theta2)?.add(&theta(ThetaKind::Theta3)?);
            sum = sum.add(&half.scale(&two_pow));
            Ok(sum.times_coeff(&ahat))
        }
        CaseKind::SpinV | CaseKind::SpincL => {
            let family = case.aux_family().expect("twisted case");
            let v = VirtualBundle::reduced_complexified(family, dim);
            let factor = match (family, line.or_else(|| LineFactor::natural(case))) {
                (Family::Line, Some(l)) => aux_bundle_factor(l.aux(), dim)?,
                _ => aux_bundle_factor(AuxFactor::DetCosh(family), dim)?,
            };
            let kind = if case.kind == CaseKind::SpinV {
                ThetaKind::ThetaV
            } else {
                ThetaKind::ThetaL
            };
            let series = theta_series(kind, &t, Some(&v), cap)?.ch();
            Ok(series.times_coeff(&(&ahat * &factor)))
        }
    }
}

/// First doubled exponent at which two series differ.
pub fn first_difference(a: &QHalfSeries<GradedPoly>, b: &QHalfSeries<GradedPoly>, trunc: u32) -> Option<u32> {
    let zero = GradedPoly::zero(trunc);
    let max = a.max_exp2().min(b.max_exp2());
    (0..=max).find(|&e| !(&a.coeff_or(e, &zero) - &b.coeff_or(e, &zero)).is_zero())
}

/// Both routes at full degree; errors on the first disagreement.
pub fn compare_routes(case: &CaseSpec) -> Result<QHalfSeries<GradedPoly>> {
    let bundle = q_series_via_bundles(case, None)?;
    let theta = q_series_via_theta(case)?;
    if let Some(exp2) = first_difference(&bundle, &theta, case.dim) {
        let zero = GradedPoly::zero(case.dim);
        return Err(Error::RouteDisagreement {
            exp2,
            bundle: bundle.coeff_or(exp2, &zero).canonical(),
            theta: theta.coeff_or(exp2, &zero).canonical(),
        });
    }
    Ok(bundle)
}

/// The degree-dim component of the Q integrand, coefficient by coefficient.
pub fn assemble_q(case: &CaseSpec) -> Result<QHalfSeries<GradedPoly>> {
    let full = match case.route {
        Route::Bundle => q_series_via_bundles(case, None)?,
        Route::Theta => q_series_via_theta(case)?,
        Route::Both => compare_routes(case)?,
    };
    Ok(full.top_component(case.dim))
}

/// Substitutes the case's condition on p1(X): pX1 ↦ 3pV1, 3cL² or cL².
pub fn impose_condition(x: &GradedPoly, case: &CaseSpec) -> Result<GradedPoly> {
    if !case.condition || case.kind == CaseKind::Spin {
        return Ok(x.clone());
    }
    let trunc = x.trunc();
    let (value, name) = match (case.kind, case.v_source) {
        (CaseKind::SpinV, VSource::Generic) => (GradedPoly::generator(Generator::PontV(1), trunc).scale(&rat(3)), "3*pV1"),
        (CaseKind::SpinV, VSource::SpincLine) => (GradedPoly::generator(Generator::ChernL, trunc).pow(2).scale(&rat(3)), "3*cL^2"),
        _ => (GradedPoly::generator(Generator::ChernL, trunc).pow(2), "cL^2"),
    };
    if trunc < Generator::PontX(1).degree() {
        return Err(Error::SubstitutionTarget(name.into(), trunc));
    }
    Ok(x.substitute(Generator::PontX(1), &value))
}

pub fn impose_condition_series(q: &QHalfSeries<GradedPoly>, case: &CaseSpec) -> Result<QHalfSeries<GradedPoly>> {
    q.try_map(|c| impose_condition(c, case))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EisensteinFit {
    pub lambda: GradedPoly,
    pub residual: QHalfSeries<GradedPoly>,
}

impl EisensteinFit {
    pub fn passes(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Q = λ·B with B the weight's basis form; λ is the q⁰ coefficient since
/// B has constant term 1.
pub fn eisenstein_fit(q: &QHalfSeries<GradedPoly>, weight: u32) -> Result<EisensteinFit> {
    if let Some(e) = q.half_integer_exponent() {
        return Err(Error::HalfIntegerPower(e));
    }
    let basis = eisenstein_basis(weight, q.cap())?;
    let trunc = q.terms().map(|(_, c)| c.trunc()).min().unwrap_or(0);
    let lambda = q.coeff_or(0, &GradedPoly::zero(trunc));
    let fitted = QHalfSeries::from_rational(&basis, trunc).times_coeff(&lambda);
    Ok(EisensteinFit {
        residual: q.sub(&fitted),
        lambda,
    })
}

/// Coefficients of a top-degree series after a rational substitution for
/// every generator.
pub fn evaluate_series(q: &QHalfSeries<GradedPoly>, value: impl Fn(Generator) -> Rational + Copy) -> QHalfSeries<Rational> {
    q.map(|c| c.evaluate(value))
}
