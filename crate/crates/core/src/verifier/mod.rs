//! Q-series assembly, Eisenstein fits, the identity catalog, divisibility
//! moduli and manifold evaluation.

pub mod assemble;
pub mod bundle_expr;
pub mod catalog;
pub mod manifold;
pub mod report;

pub use assemble::{
    assemble_q, compare_routes, eisenstein_fit, impose_condition, impose_condition_series, q_series_via_bundles,
    EisensteinFit, LineFactor,
};
pub use bundle_expr::{BundleContext, BundleExpr};
pub use catalog::{
    catalog, corollaries, divisibility_modulus, find_identity, identities_for, moduli_table, theorem_identities,
    verify, verify_identity, verify_printed, Corollary, Identity, IdentityCheck, Prefactor, Term,
};
pub use manifold::{evaluate_indices, evaluate_manifold, DivisibilityCheck, ManifoldData, ManifoldEvaluation};
pub use report::{run_case, run_cases, IdentityEntry, VerificationReport};
