//! Per-case verification runs and their reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::case::{CaseSpec, Route};
use crate::error::Result;

use super::assemble::{assemble_q, eisenstein_fit, impose_condition_series};
use super::catalog::{corollaries, identities_for, matches_q_series, modulus_of, verify, verify_printed};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityEntry {
    pub id: String,
    pub status: String,
    pub residual: String,
    /// The two sides are the corresponding coefficients of Q.
    pub matches_q_series: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub case: String,
    pub dim: u32,
    pub weight: u32,
    pub q_cap: u32,
    pub route: String,
    pub route_agreement: String,
    /// The q⁰ coefficient of Q after imposing the condition.
    pub lambda: String,
    pub fit_residual: String,
    pub identities: Vec<IdentityEntry>,
    pub moduli: BTreeMap<String, u64>,
    pub notes: Vec<String>,
}

fn route_name(r: Route) -> &'static str {
    match r {
        Route::Bundle => "bundle",
        Route::Theta => "theta",
        Route::Both => "both",
    }
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.fit_residual == "0" && self.identities.iter().all(|i| i.status == "pass" && i.matches_q_series)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "case {} dim {} (weight {}, q-cap {}, route {})",
            self.case, self.dim, self.weight, self.q_cap, self.route
        );
        let _ = writeln!(s, "routes: {}", self.route_agreement);
        let _ = writeln!(s, "λ = {}", self.lambda);
        let _ = writeln!(s, "Eisenstein fit residual: {}", self.fit_residual);
        for i in &self.identities {
            let extra = if i.matches_q_series { "" } else { " (does not match Q-series coefficients)" };
            if i.status == "pass" {
                let _ = writeln!(s, "{}: pass{extra}", i.id);
            } else {
                let _ = writeln!(s, "{}: fail, residual {}{extra}", i.id, i.residual);
            }
        }
        for (label, m) in &self.moduli {
            let _ = writeln!(s, "{label}: index ≡ 0 mod {m}");
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}

/// Assembles Q, fits it, verifies the case's identities and derives moduli.
pub fn run_case(case: &CaseSpec) -> Result<VerificationReport> {
    let q = assemble_q(case)?;
    let qc = impose_condition_series(&q, case)?;
    let fit = eisenstein_fit(&qc, case.weight())?;
    let identities = identities_for(case);

    let mut entries = Vec::new();
    let mut notes: Vec<String> = Vec::new();
    for identity in &identities {
        let check = verify(identity)?;
        entries.push(IdentityEntry {
            id: identity.id.to_string(),
            status: if check.passed() { "pass" } else { "fail" }.to_string(),
            residual: check.residual.canonical(),
            matches_q_series: matches_q_series(identity, &q)?,
        });
        for n in &identity.notes {
            if !notes.iter().any(|x| x == n) {
                notes.push(n.to_string());
            }
        }
        if let (Some(erratum), Some(printed)) = (&identity.erratum, verify_printed(identity)?) {
            let outcome = if printed.passed() {
                "printed form unexpectedly passes".to_string()
            } else {
                format!("printed residual {}", printed.residual.canonical())
            };
            notes.push(format!("{}: {} ({outcome})", identity.id, erratum.note));
        }
    }

    let mut moduli = BTreeMap::new();
    for c in corollaries() {
        if let Some(identity) = identities.iter().find(|i| i.id == c.identity) {
            moduli.insert(c.label.to_string(), modulus_of(identity, c.target)?);
        }
    }

    Ok(VerificationReport {
        case: case.label().to_string(),
        dim: case.dim,
        weight: case.weight(),
        q_cap: case.cap,
        route: route_name(case.route).to_string(),
        route_agreement: if case.route == Route::Both { "agree" } else { "not compared" }.to_string(),
        lambda: fit.lambda.canonical(),
        fit_residual: fit.residual.canonical(),
        identities: entries,
        moduli,
        notes,
    })
}

/// Runs cases in parallel; results keep the input order.
pub fn run_cases(cases: &[CaseSpec]) -> Vec<Result<VerificationReport>> {
    cases.par_iter().map(run_case).collect()
}
