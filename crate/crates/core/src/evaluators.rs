//! Value computations at `s = -N`: the integral companion `Y_n`, its shifted
//! polynomial `Y_{n,a}`, the zeta value through the Bernoulli substitution,
//! and the equal-shift and unit-shift specializations.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, format_rational, parse_rational, pow, rat, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::indexsets::{
    coefficient_a, denominator_factors, denominator_product, enumerate_t, is_polar, v_range,
    AlphaVec, KVector, MultiIndex, Variant,
};
use crate::poly::MultiPoly;

/// Result bundle of one evaluation. `value` is present exactly when the point
/// is not polar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "ReportWire", try_from = "ReportWire")]
pub struct EvalReport {
    pub alpha: AlphaVec,
    pub point: MultiIndex,
    pub variant: Variant,
    pub value: Option<Rational>,
    pub polar: bool,
    pub witness: Option<KVector>,
    pub term_count: usize,
}

impl EvalReport {
    pub fn n(&self) -> usize {
        self.point.dim()
    }

    fn polar(alpha: &AlphaVec, point: &MultiIndex, variant: Variant, witness: Option<KVector>) -> Self {
        Self {
            alpha: alpha.clone(),
            point: point.clone(),
            variant,
            value: None,
            polar: true,
            witness,
            term_count: 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct ReportWire {
    n: usize,
    alpha: Vec<String>,
    #[serde(rename = "N")]
    point: Vec<u32>,
    variant: Variant,
    polar: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<KVector>,
    term_count: usize,
}

impl From<EvalReport> for ReportWire {
    fn from(r: EvalReport) -> Self {
        Self {
            n: r.n(),
            alpha: r.alpha.to_strings(),
            point: r.point.entries().to_vec(),
            variant: r.variant,
            polar: r.polar,
            value: r.value.as_ref().map(format_rational),
            witness: r.witness,
            term_count: r.term_count,
        }
    }
}

impl TryFrom<ReportWire> for EvalReport {
    type Error = Error;

    fn try_from(w: ReportWire) -> Result<Self> {
        let alpha = AlphaVec::new(w.alpha.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?)?;
        let point = MultiIndex::new(w.point)?;
        alpha.check_dim(&point)?;
        if w.n != point.dim() || w.value.is_some() == w.polar {
            return Err(Error::Precondition("inconsistent report".into()));
        }
        Ok(Self {
            alpha,
            point,
            variant: w.variant,
            value: w.value.as_deref().map(parse_rational).transpose()?,
            polar: w.polar,
            witness: w.witness,
            term_count: w.term_count,
        })
    }
}

fn sign(n: usize) -> Rational {
    if n.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Factors for an admissible `k`; a zero here would mean the pole scan missed one.
fn admissible_factors(point: &MultiIndex, k: &KVector) -> Vec<i64> {
    let d = denominator_factors(point, k).expect("k drawn from T(N)");
    assert!(
        d.iter().all(|&x| x > 0),
        "zero denominator at N = {point}, k = {k} outside a detected pole"
    );
    d
}

/// `(-1)^n Π_{j≥2} C(d_j, k_j) / Π_j d_j`: the part of each `k`-term that does
/// not depend on `α`.
fn k_weight(point: &MultiIndex, k: &KVector, d: &[i64]) -> Rational {
    let n = point.dim();
    let mut w = sign(n) / denominator_product(d);
    for j in 2..=n {
        w *= Rational::from_integer(binomial(d[j - 1] as u64, u64::from(k.k(j))));
    }
    w
}

fn increment_base(alpha: &AlphaVec, j: usize, variant: Variant) -> Rational {
    match variant {
        Variant::Corrected => alpha.increment(j),
        Variant::Paper => alpha.alpha(j).clone(),
    }
}

/// `Y_n(α; -N)`.
pub fn y_value(alpha: &AlphaVec, point: &MultiIndex, variant: Variant) -> Result<EvalReport> {
    alpha.check_dim(point)?;
    let scan = is_polar(point);
    if scan.polar {
        return Ok(EvalReport::polar(alpha, point, variant, scan.witness));
    }
    let ks = enumerate_t(point);
    let mut value = Rational::zero();
    for k in &ks {
        let d = admissible_factors(point, k);
        let mut term = k_weight(point, k, &d) * pow(alpha.alpha(1), d[0] as u64);
        for j in 2..=point.dim() {
            term *= pow(&increment_base(alpha, j, variant), u64::from(k.k(j)));
        }
        value += term;
    }
    Ok(EvalReport {
        alpha: alpha.clone(),
        point: point.clone(),
        variant,
        value: Some(value),
        polar: false,
        witness: None,
        term_count: ks.len(),
    })
}

/// `Y_{n,a}(α; -N)` as a polynomial in `a_1..a_n`.
///
/// Shifting by `a` moves `α_i` to `α_i + a_1 + … + a_i`, hence `α_1 → α_1 + a_1`
/// and `δ_j → δ_j + a_j`; the corrected polynomial is that substitution
/// expanded. The `Paper` variant is assembled term by term from its `A(-N)`.
pub fn y_shifted_poly(alpha: &AlphaVec, point: &MultiIndex, variant: Variant) -> Result<MultiPoly> {
    alpha.check_dim(point)?;
    let scan = is_polar(point);
    if let Some(witness) = scan.witness {
        return Err(Error::Pole { witness });
    }
    let n = point.dim();
    let mut out = MultiPoly::zero(n);
    // (b + x)^e for the shifted bases, cached per (variable, exponent)
    let mut powers: Vec<Vec<UniPoly>> = vec![Vec::new(); n];
    let mut shifted_pow = |j: usize, e: usize| -> UniPoly {
        let cache = &mut powers[j - 1];
        if cache.is_empty() {
            let base = if j == 1 { alpha.alpha(1).clone() } else { alpha.increment(j) };
            cache.push(UniPoly::constant(Rational::one()));
            cache.push(UniPoly::new(vec![base, Rational::one()]));
        }
        while cache.len() <= e {
            let next = cache[cache.len() - 1].mul(&cache[1]);
            cache.push(next);
        }
        cache[e].clone()
    };
    for k in enumerate_t(point) {
        let d = admissible_factors(point, &k);
        match variant {
            Variant::Corrected => {
                let mut factors = vec![shifted_pow(1, d[0] as usize)];
                factors.extend((2..=n).map(|j| shifted_pow(j, k.k(j) as usize)));
                out.add_separable(&factors, &k_weight(point, &k, &d))?;
            }
            Variant::Paper => {
                let scale = sign(n) / denominator_product(&d);
                let terms = v_range(d[0] as u32, &k)
                    .into_iter()
                    .map(|v| Ok((v.clone(), coefficient_a(point, &k, &v, alpha, variant)? * &scale)))
                    .collect::<Result<Vec<_>>>()?;
                out = out.add(&MultiPoly::from_terms(n, terms)?)?;
            }
        }
    }
    Ok(out)
}

/// `ζ_{n,a}(α; -N)` as a polynomial in `a`: the Bernoulli substitution of `Y_{n,a}`.
pub fn zeta_polynomial(alpha: &AlphaVec, point: &MultiIndex, variant: Variant) -> Result<MultiPoly> {
    Ok(y_shifted_poly(alpha, point, variant)?.bernoullize())
}

fn term_count(point: &MultiIndex) -> usize {
    enumerate_t(point)
        .iter()
        .map(|k| {
            let m = denominator_factors(point, k).expect("k drawn from T(N)")[0] as usize;
            (m + 1) * k.entries().iter().map(|&x| x as usize + 1).product::<usize>()
        })
        .sum()
}

/// `ζ_n(α; -N)` through the polynomial pipeline: write `Y_{n,a}(α; -N)` as
/// `Σ_L C_L a^L`, then `ζ_n(α; -N) = Σ_L C_L Π B_{L_i}`.
pub fn zeta_value(alpha: &AlphaVec, point: &MultiIndex, variant: Variant) -> Result<EvalReport> {
    alpha.check_dim(point)?;
    let scan = is_polar(point);
    if scan.polar {
        return Ok(EvalReport::polar(alpha, point, variant, scan.witness));
    }
    let value = y_shifted_poly(alpha, point, variant)?.bernoulli_contraction();
    Ok(EvalReport {
        alpha: alpha.clone(),
        point: point.clone(),
        variant,
        value: Some(value),
        polar: false,
        witness: None,
        term_count: term_count(point),
    })
}

/// The same value summed directly over `(k, v)` with `A(-N) B_v / Π d_j`.
/// Kept as an audit path for [`zeta_value`].
pub fn zeta_direct(alpha: &AlphaVec, point: &MultiIndex, variant: Variant) -> Result<Rational> {
    alpha.check_dim(point)?;
    if let Some(witness) = is_polar(point).witness {
        return Err(Error::Pole { witness });
    }
    let n = point.dim();
    let mut total = Rational::zero();
    for k in enumerate_t(point) {
        let d = admissible_factors(point, &k);
        let mut inner = Rational::zero();
        for v in v_range(d[0] as u32, &k) {
            let bv = v
                .iter()
                .fold(Rational::one(), |acc, &x| acc * crate::arith::bernoulli_number(x as usize));
            if bv.is_zero() {
                continue;
            }
            inner += coefficient_a(point, &k, &v, alpha, variant)? * bv;
        }
        total += inner / denominator_product(&d);
    }
    Ok(sign(n) * total)
}

/// Runs both computation paths and fails if they disagree.
pub fn zeta_audited(alpha: &AlphaVec, point: &MultiIndex, variant: Variant) -> Result<Rational> {
    let pipeline = zeta_value(alpha, point, variant)?;
    let Some(value) = pipeline.value else {
        return Err(Error::Pole { witness: pipeline.witness.unwrap_or_else(|| KVector::new(vec![])) });
    };
    let direct = zeta_direct(alpha, point, variant)?;
    if direct != value {
        return Err(Error::Precondition(format!(
            "pipeline {} and direct sum {} disagree at N = {point}",
            format_rational(&value),
            format_rational(&direct)
        )));
    }
    Ok(value)
}

/// `ζ_{n,a}(α; -N) = Σ_L C_L Π B_{L_i}(a_i)`.
pub fn zeta_shifted(alpha: &AlphaVec, point: &MultiIndex, a: &[Rational], variant: Variant) -> Result<Rational> {
    if a.len() != point.dim() {
        return Err(Error::DimensionMismatch { expected: point.dim(), found: a.len() });
    }
    zeta_polynomial(alpha, point, variant)?.eval(a)
}

/// Classical multiple Hurwitz value, `α = (α, …, α)`.
pub fn zeta_hurwitz_special(alpha: Rational, point: &MultiIndex, variant: Variant) -> Result<EvalReport> {
    let alpha = AlphaVec::broadcast(alpha, point.dim())?;
    zeta_value(&alpha, point, variant)
}

/// Multiple zeta value, `α = (1, …, 1)`.
pub fn mzv_nonpositive(point: &MultiIndex, variant: Variant) -> EvalReport {
    let alpha = AlphaVec::broadcast(rat(1), point.dim()).expect("1 is positive");
    zeta_value(&alpha, point, variant).expect("dimensions agree by construction")
}
