//! Characteristic numbers of a manifold and the indices they determine.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rational, rat, GradedPoly, Monomial, Rational};
use crate::case::CaseSpec;
use crate::error::{Error, Result};

use super::catalog::{catalog, combination, corollaries, find_identity, index_relation, modulus_of, Prefactor, Term};

/// ∫_X of each top-degree monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldData {
    pub dim: u32,
    pub numbers: BTreeMap<Monomial, Rational>,
}

#[derive(Deserialize, Serialize)]
#[serde(untagged)]
enum NumberRepr {
    Text(String),
    Int(i64),
}

#[derive(Deserialize, Serialize)]
struct RawManifold {
    dim: u32,
    numbers: BTreeMap<String, NumberRepr>,
}

impl ManifoldData {
    pub fn new(dim: u32, numbers: impl IntoIterator<Item = (Monomial, Rational)>) -> Result<Self> {
        let numbers: BTreeMap<_, _> = numbers.into_iter().collect();
        for m in numbers.keys() {
            if m.degree() != dim {
                return Err(Error::DegreeMismatch {
                    expected: dim,
                    found: m.degree(),
                    what: format!("characteristic number of {m}"),
                });
            }
        }
        Ok(ManifoldData { dim, numbers })
    }

    /// Parses `{"dim": 8, "numbers": {"pX1^2": "4", "pX2": "7"}}`; values
    /// are integers or rational strings.
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawManifold = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut numbers = Vec::new();
        for (k, v) in raw.numbers {
            let m: Monomial = k.parse()?;
            let value = match v {
                NumberRepr::Text(t) => parse_rational(&t)?,
                NumberRepr::Int(n) => rat(n),
            };
            numbers.push((m, value));
        }
        ManifoldData::new(raw.dim, numbers)
    }

    pub fn to_json(&self) -> String {
        let raw = RawManifold {
            dim: self.dim,
            numbers: self
                .numbers
                .iter()
                .map(|(m, v)| (m.to_string(), NumberRepr::Text(v.to_string())))
                .collect(),
        };
        serde_json::to_string(&raw).expect("serializable")
    }
}

/// ∫_X form: the degree-dim part of `form` paired with the numbers.
pub fn evaluate_manifold(data: &ManifoldData, form: &GradedPoly) -> Result<Rational> {
    if form.trunc() != data.dim {
        return Err(Error::DegreeMismatch {
            expected: data.dim,
            found: form.trunc(),
            what: "form truncation".into(),
        });
    }
    let mut total = rat(0);
    for (m, c) in form.top_component(data.dim).terms() {
        let v = data.numbers.get(m).ok_or_else(|| Error::MissingMonomial(m.to_string()))?;
        total += c * v;
    }
    Ok(total)
}

/// One corollary evaluated on a manifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityCheck {
    pub corollary: String,
    pub identity: String,
    pub operator: String,
    pub bundle: String,
    pub index: String,
    pub modulus: u64,
    /// Σ aᵢ·indᵢ, zero when the identity's hypotheses hold on the data.
    pub relation_value: String,
    pub divisible: bool,
}

/// Index values determined by a set of characteristic numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManifoldEvaluation {
    pub dim: u32,
    pub ahat_genus: String,
    /// ind(D⊗Δ), on 4k-manifolds.
    pub dirac_spinor_index: Option<String>,
    /// ind(D^c), when cL numbers are supplied.
    pub spinc_index: Option<String>,
    pub checks: Vec<DivisibilityCheck>,
    pub skipped: Vec<String>,
}

fn index_of(data: &ManifoldData, case: &CaseSpec, t: &Term) -> Result<Rational> {
    let unit = Term { coeff: 1, ..t.clone() };
    evaluate_manifold(data, &combination(&[unit], case, data.dim)?)
}

/// Evaluates Â, ind(D⊗Δ), ind(D^c) and every corollary whose dimension
/// matches and whose characteristic numbers are all present.
pub fn evaluate_indices(data: &ManifoldData) -> Result<ManifoldEvaluation> {
    let dim = data.dim;
    let ahat = evaluate_manifold(data, &Prefactor::Ahat.form(dim)?)?;
    let dirac_spinor_index = if dim.is_multiple_of(4) {
        Some(evaluate_manifold(data, &Prefactor::AhatChDelta.form(dim)?)?.to_string())
    } else {
        None
    };
    let spinc_index = match evaluate_manifold(data, &Prefactor::AhatExpHalfC.form(dim)?) {
        Ok(v) => Some(v.to_string()),
        Err(Error::MissingMonomial(_)) => None,
        Err(e) => return Err(e),
    };
    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    let dims: Vec<_> = catalog().iter().map(|i| (i.id, i.case.dim)).collect();
    for c in corollaries() {
        if !dims.iter().any(|&(id, d)| id == c.identity && d == dim) {
            continue;
        }
        let identity = find_identity(c.identity)?;
        let relation = index_relation(&identity)?;
        let mut values = Vec::new();
        let mut missing = None;
        for (_, t) in &relation {
            match index_of(data, &identity.case, t) {
                Ok(v) => values.push(v),
                Err(Error::MissingMonomial(m)) => {
                    missing = Some(m);
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if let Some(m) = missing {
            skipped.push(format!("{}: no characteristic number for {m}", c.label));
            continue;
        }
        let modulus = modulus_of(&identity, c.target)?;
        let sum: Rational = relation.iter().zip(&values).map(|((a, _), v)| v * rat(*a)).sum();
        let target = &values[c.target];
        let divisible = target.is_integer() && (target.to_integer() % num::BigInt::from(modulus)) == num::BigInt::from(0);
        let t = &relation[c.target].1;
        checks.push(DivisibilityCheck {
            corollary: c.label.to_string(),
            identity: c.identity.to_string(),
            operator: t.prefactor.operator().to_string(),
            bundle: t.bundle.to_string(),
            index: target.to_string(),
            modulus,
            relation_value: sum.to_string(),
            divisible,
        });
    }
    Ok(ManifoldEvaluation {
        dim,
        ahat_genus: ahat.to_string(),
        dirac_spinor_index,
        spinc_index,
        checks,
        skipped,
    })
}
