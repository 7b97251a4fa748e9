//! Independent checks for the value formulas.
//!
//! [`exact`] recomputes `ζ_n(α; -N)` by summing one index at a time with
//! classical one-variable Hurwitz values; it shares nothing with the
//! evaluators beyond Bernoulli numbers. [`numeric`] evaluates the defining
//! series and integral in the region of absolute convergence, where the
//! continued formulas start from. [`arbitration`] uses the latter to decide
//! which coefficient assembly reproduces the integral.

pub mod arbitration;
pub mod exact;
pub mod numeric;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use arbitration::{arbitrate, default_grid, ArbitrationPoint, ArbitrationReport, VariantOutcome};
pub use exact::{is_regular, oracle_zeta, Regularity};
pub use numeric::{
    hurwitz_zeta, raabe_numeric_check, series_zeta_numeric, y_numeric, y_series_numeric, Estimate,
    RaabeCheck,
};

/// Integer exponents `s_i ≥ 2`, where the defining series and integral
/// converge absolutely.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignatureS(Vec<u32>);

impl SignatureS {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if let Some(s) = entries.iter().find(|&&s| s < 2) {
            return Err(Error::Precondition(format!("s_i = {s} is outside the convergence region (s_i ≥ 2)")));
        }
        Ok(Self(entries))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub(crate) fn as_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&s| f64::from(s)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub cutoff: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs_eps: 1e-6, cutoff: 10_000 }
    }
}

impl Tolerance {
    pub fn new(abs_eps: f64, cutoff: usize) -> Result<Self> {
        if abs_eps.is_nan() || abs_eps <= 0.0 || cutoff < 1 {
            return Err(Error::Precondition(format!("invalid tolerance eps={abs_eps} cutoff={cutoff}")));
        }
        Ok(Self { abs_eps, cutoff })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_domain() {
        assert!(SignatureS::new(vec![2, 3]).is_ok());
        assert!(SignatureS::new(vec![1]).is_err());
        assert!(SignatureS::new(vec![]).is_err());
    }

    #[test]
    fn tolerance_domain() {
        assert!(Tolerance::new(0.0, 10).is_err());
        assert!(Tolerance::new(1e-3, 0).is_err());
        assert!(Tolerance::new(f64::NAN, 10).is_err());
        assert_eq!(Tolerance::default(), Tolerance::new(1e-6, 10_000).unwrap());
    }
}
