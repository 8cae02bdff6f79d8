//! Exact symbolic engine for the modular characteristic forms of spin,
//! twisted spin and spin^c manifolds.
//!
//! Two independent constructions of each q-series are provided: a λ-ring
//! route through Witten-type bundles ([`lambda`], [`forms`]) and a route
//! through Jacobi theta quotients ([`theta`]). The [`verifier`] compares the
//! routes, fits the results against Eisenstein series and checks the
//! resulting anomaly cancellation identities and index congruences.
//!
//! All coefficients are exact rationals. Chern roots are normalized so that
//! no π or √−1 appears: the theta variable v and the root t satisfy
//! t = 2π√−1·v.

pub mod algebra;
pub mod case;
pub mod error;
pub mod forms;
pub mod lambda;
pub mod qseries;
pub mod theta;
pub mod verifier;

pub use error::{Error, Result};
