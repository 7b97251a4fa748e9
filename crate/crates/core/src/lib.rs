//! Exact special values of the generalized multiple Hurwitz zeta function
//!
//! ```text
//! ζ_n(α; s) = Σ_{m ∈ ℕ^n} Π_i (m_1 + … + m_i + α_i)^{-s_i}
//! ```
//!
//! at non-positive integer points `s = -N`, computed through the integral
//! companion `Y_n`, its shifted polynomial `Y_{n,a}`, and the Bernoulli
//! substitution that turns cube averages back into lattice sums.
//!
//! Everything on the value path is exact rational arithmetic. Floating point
//! only appears in [`oracles::numeric`], which checks the convergence-region
//! identities the exact formulas are continued from.

pub mod arith;
pub mod error;
pub mod evaluators;
pub mod indexsets;
pub mod oracles;
pub mod poly;
pub mod verify;

pub use arith::{
    bernoulli_number, bernoulli_polynomial, binomial, format_rational, gen_binomial,
    parse_rational, BernoulliCache, Rational, UniPoly,
};
pub use error::{Error, Result};
pub use evaluators::{
    mzv_nonpositive, y_shifted_poly, y_value, zeta_audited, zeta_direct, zeta_hurwitz_special,
    zeta_polynomial, zeta_shifted, zeta_value, EvalReport,
};
pub use indexsets::{
    coefficient_a, denominator_factors, enumerate_t, is_polar, AlphaVec, KVector, MultiIndex,
    PolarScan, Variant,
};
pub use poly::MultiPoly;
