//! Case descriptors shared by both routes and the verifier.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::Family;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseKind {
    /// Spin 4k-manifold, Q(X,τ).
    Spin,
    /// Spin 4k-manifold with an auxiliary real bundle V, Q(X,V,τ).
    SpinV,
    /// Spin^c (4k+2)-manifold with line bundle L, Q(X,L,τ).
    SpincL,
}

/// Where the auxiliary bundle of a [`CaseKind::SpinV`] case comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VSource {
    /// A general bundle V with classes `pV{i}`.
    Generic,
    /// V = L_R for the spin^c line bundle, so p(V) = 1 + cL².
    SpincLine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Route {
    Bundle,
    Theta,
    Both,
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bundle" => Ok(Route::Bundle),
            "theta" => Ok(Route::Theta),
            "both" => Ok(Route::Both),
            _ => Err(Error::Parse(format!("unknown route `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CaseSpec {
    pub kind: CaseKind,
    pub dim: u32,
    pub v_source: VSource,
    pub route: Route,
    pub cap: u32,
    /// Impose p1(X) = 3p1(V) (SpinV) or p1(X) = p1(L_R) (SpincL).
    pub condition: bool,
}

pub const DEFAULT_CAP: u32 = 3;

impl CaseSpec {
    pub fn new(kind: CaseKind, dim: u32) -> Result<Self> {
        let ok = match kind {
            CaseKind::Spin | CaseKind::SpinV => dim.is_multiple_of(4) && (4..=24).contains(&dim),
            CaseKind::SpincL => dim % 4 == 2 && (6..=26).contains(&dim),
        };
        if !ok {
            return Err(Error::CaseDimension {
                case: format!("{kind:?}"),
                dim,
            });
        }
        Ok(CaseSpec {
            kind,
            dim,
            v_source: VSource::Generic,
            route: Route::Both,
            cap: DEFAULT_CAP,
            condition: kind != CaseKind::Spin,
        })
    }

    /// The twisted case with V = L_R on a spin^c 4k-manifold.
    pub fn spinv_line(dim: u32) -> Result<Self> {
        Ok(CaseSpec {
            v_source: VSource::SpincLine,
            ..CaseSpec::new(CaseKind::SpinV, dim)?
        })
    }

    pub fn with_cap(self, cap: u32) -> Self {
        CaseSpec { cap, ..self }
    }

    pub fn with_route(self, route: Route) -> Self {
        CaseSpec { route, ..self }
    }

    /// The twelve standard cases in a fixed order.
    pub fn catalog() -> Vec<CaseSpec> {
        let mut out = Vec::new();
        for kind in [CaseKind::Spin, CaseKind::SpinV] {
            for dim in [8, 12, 16, 20] {
                out.push(CaseSpec::new(kind, dim).unwrap());
            }
        }
        for dim in [10, 14, 18, 22] {
            out.push(CaseSpec::new(CaseKind::SpincL, dim).unwrap());
        }
        out
    }

    /// k with dim = 4k or 4k+2.
    pub fn k(&self) -> u32 {
        self.dim / 4
    }

    /// Modular weight 2k.
    pub fn weight(&self) -> u32 {
        2 * self.k()
    }

    /// Number of ± root pairs of T_C X.
    pub fn tangent_root_pairs(&self) -> u32 {
        self.dim / 2
    }

    /// Root family of the auxiliary bundle, if any.
    pub fn aux_family(&self) -> Option<Family> {
        match (self.kind, self.v_source) {
            (CaseKind::Spin, _) => None,
            (CaseKind::SpinV, VSource::Generic) => Some(Family::V),
            (CaseKind::SpinV, VSource::SpincLine) | (CaseKind::SpincL, _) => Some(Family::Line),
        }
    }

    pub fn label(&self) -> &'static str {
        match (self.kind, self.v_source) {
            (CaseKind::Spin, _) => "spin",
            (CaseKind::SpinV, VSource::Generic) => "spinv",
            (CaseKind::SpinV, VSource::SpincLine) => "spinv-line",
            (CaseKind::SpincL, _) => "spinc",
        }
    }
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} dim {}", self.label(), self.dim)
    }
}
