//! Decides which coefficient assembly reproduces `Y_n` in the convergence
//! region, by comparing each variant's `k`-series with direct quadrature.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::numeric::{y_numeric, y_series_numeric};
use super::{SignatureS, Tolerance};
use crate::arith::ratio;
use crate::error::Result;
use crate::indexsets::{AlphaVec, Variant};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariantOutcome {
    pub variant: Variant,
    pub value: Option<f64>,
    pub delta: Option<f64>,
    pub status: String,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArbitrationPoint {
    pub alpha: Vec<String>,
    pub s: Vec<u32>,
    pub quadrature: f64,
    pub quadrature_error: f64,
    pub outcomes: Vec<VariantOutcome>,
    /// Variants matching the quadrature at this point.
    pub verdict: Vec<Variant>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArbitrationReport {
    pub abs_eps: f64,
    pub points: Vec<ArbitrationPoint>,
    /// The single variant that matched at every point, if there is one.
    pub consistent_variant: Option<Variant>,
}

/// `s ∈ {(3,2), (4,3), (2,2)}` × `α ∈ {(1, 3/2), (1, 5/4)}`.
pub fn default_grid() -> Vec<(AlphaVec, SignatureS)> {
    let alphas = [
        AlphaVec::new(vec![ratio(1, 1), ratio(3, 2)]).expect("positive"),
        AlphaVec::new(vec![ratio(1, 1), ratio(5, 4)]).expect("positive"),
    ];
    let sigs = [[3, 2], [4, 3], [2, 2]];
    alphas
        .iter()
        .flat_map(|a| sigs.iter().map(move |s| (a.clone(), SignatureS::new(s.to_vec()).expect("s ≥ 2"))))
        .collect()
}

fn judge(alpha: &AlphaVec, s: &SignatureS, tol: &Tolerance) -> Result<ArbitrationPoint> {
    let quad = y_numeric(alpha, s, tol)?;
    let outcomes: Vec<VariantOutcome> = Variant::ALL
        .iter()
        .map(|&variant| match y_series_numeric(alpha, s, variant, tol) {
            Ok(v) => {
                let delta = (v - quad.value).abs();
                VariantOutcome {
                    variant,
                    value: Some(v),
                    delta: Some(delta),
                    status: "ok".into(),
                    matches: delta <= tol.abs_eps,
                }
            }
            Err(e) => VariantOutcome { variant, value: None, delta: None, status: e.to_string(), matches: false },
        })
        .collect();
    let verdict = outcomes.iter().filter(|o| o.matches).map(|o| o.variant).collect();
    Ok(ArbitrationPoint {
        alpha: alpha.to_strings(),
        s: s.entries().to_vec(),
        quadrature: quad.value,
        quadrature_error: quad.error_bound,
        outcomes,
        verdict,
    })
}

pub fn arbitrate(grid: &[(AlphaVec, SignatureS)], tol: &Tolerance) -> Result<ArbitrationReport> {
    let points = grid
        .par_iter()
        .map(|(a, s)| judge(a, s, tol))
        .collect::<Result<Vec<_>>>()?;
    let consistent_variant = match points.first().map(|p| p.verdict.as_slice()) {
        Some([only]) if points.iter().all(|p| p.verdict.as_slice() == [*only]) => Some(*only),
        _ => None,
    };
    Ok(ArbitrationReport { abs_eps: tol.abs_eps, points, consistent_variant })
}
