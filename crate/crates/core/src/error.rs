use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown generator family `{0}`")]
    UnknownFamily(String),
    #[error("power-sum index must be at least 1")]
    ZeroPowerSum,
    #[error("exp requires a zero constant term, found {0}")]
    NonNilpotent(String),
    #[error("log requires constant term 1, found {0}")]
    LogConstant(String),
    #[error("series constant term {0} is not a unit")]
    NonUnit(String),
    #[error("Adams operation index must be at least 1")]
    ZeroAdams,
    #[error("theta series {0} requires an auxiliary bundle")]
    MissingAuxBundle(&'static str),
    #[error("case {case} does not support dimension {dim}")]
    CaseDimension { case: String, dim: u32 },
    #[error("unsupported Eisenstein weight {0}")]
    UnsupportedWeight(u32),
    #[error("series has surviving half-integer power q^({0}/2)")]
    HalfIntegerPower(u32),
    #[error("routes disagree at q^({exp2}/2): bundle route {bundle}, theta route {theta}")]
    RouteDisagreement {
        exp2: u32,
        bundle: String,
        theta: String,
    },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("identity `{0}` is not an integral relation among twisted indices")]
    NotIndexRelation(String),
    #[error("target term {target} not present in identity `{id}`")]
    TargetAbsent { id: String, target: usize },
    #[error("substitution target {0} cannot appear at truncation {1}")]
    SubstitutionTarget(String, u32),
    #[error("characteristic number for `{0}` is missing")]
    MissingMonomial(String),
    #[error("degree mismatch: expected {expected}, found {found} ({what})")]
    DegreeMismatch {
        expected: u32,
        found: u32,
        what: String,
    },
    #[error("genus series has {have} log-coefficients, truncation {trunc} needs {need}")]
    GenusTruncation { have: usize, need: usize, trunc: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
