//! Exact rationals, characteristic-class generators and graded polynomials.

pub mod generator;
pub mod newton;
pub mod poly;
pub mod rational;

pub use generator::{Family, Generator, GeneratorTable};
pub use newton::{power_sum_in_pontryagin, power_sums};
pub use poly::{GradedPoly, Monomial};
pub use rational::{frac, parse_rational, rat, Rational};

/// Σ_{n≥0} xⁿ/n! for nilpotent `x`.
pub fn exp_truncated(x: &GradedPoly) -> crate::Result<GradedPoly> {
    x.exp()
}

/// Σ_{n≥1} (−1)^{n+1}(x−1)ⁿ/n for `x` with constant term 1.
pub fn log_truncated(x: &GradedPoly) -> crate::Result<GradedPoly> {
    x.log()
}

/// {x}^{(d)}: the homogeneous part of exact degree `d`.
pub fn top_component(x: &GradedPoly, d: u32) -> GradedPoly {
    x.top_component(d)
}
