//! The admissible index set `T(N)`, the denominator factors `d_j`, the
//! polar-divisor scan, and the coefficient `A(-N)` in both variants.
//!
//! Indices follow the mathematical convention in doc comments (`α_1..α_n`,
//! `k_2..k_n`) and 0-based positions in code: `k.entries()[j - 2]` is `k_j`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, binomial_signed, format_rational, is_positive, pow, Rational};
use crate::error::{Error, Result};

/// The point `N ∈ ℕ^n` with `s = -N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyDimension);
        }
        Ok(Self(entries))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `Σ_{i=j}^{n} N_i` for 1-based `j`.
    fn tail_sum(&self, j: usize) -> i64 {
        self.0[j - 1..].iter().map(|&x| i64::from(x)).sum()
    }

    /// Every point of `{0..=max}^n` in lexicographic order.
    pub fn grid(n: usize, max: u32) -> Vec<MultiIndex> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=max).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out.into_iter().map(MultiIndex).collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// `(k_2, …, k_n)`; empty for `n = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KVector(Vec<u32>);

impl KVector {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `k_j` for 1-based `j ≥ 2`.
    pub fn k(&self, j: usize) -> u32 {
        self.0[j - 2]
    }

    /// `Σ_{i=j}^{n} k_i` for 1-based `j`.
    fn tail_sum(&self, j: usize) -> i64 {
        let from = j.max(2) - 2;
        self.0.get(from..).map_or(0, |s| s.iter().map(|&x| i64::from(x)).sum())
    }
}

impl fmt::Display for KVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, xs: &[u32]) -> fmt::Result {
    let parts: Vec<String> = xs.iter().map(u32::to_string).collect();
    write!(f, "({})", parts.join(","))
}

/// Shift vector `α ∈ ℚ^n` with every `α_i > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphaVec {
    alphas: Vec<Rational>,
}

impl AlphaVec {
    pub fn new(alphas: Vec<Rational>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if let Some((i, a)) = alphas.iter().enumerate().find(|(_, a)| !is_positive(a)) {
            return Err(Error::NonPositiveAlpha { index: i + 1, value: format_rational(a) });
        }
        Ok(Self { alphas })
    }

    pub fn broadcast(alpha: Rational, n: usize) -> Result<Self> {
        Self::new(vec![alpha; n])
    }

    pub fn dim(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alphas
    }

    /// `α_j` for 1-based `j`.
    pub fn alpha(&self, j: usize) -> &Rational {
        &self.alphas[j - 1]
    }

    /// `δ_j = α_j - α_{j-1}` for 1-based `j ≥ 2`.
    pub fn increment(&self, j: usize) -> Rational {
        &self.alphas[j - 1] - &self.alphas[j - 2]
    }

    pub fn increments(&self) -> Vec<Rational> {
        (2..=self.dim()).map(|j| self.increment(j)).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.alphas.iter().map(format_rational).collect()
    }

    pub fn truncate(&self, n: usize) -> Result<Self> {
        Self::new(self.alphas[..n.min(self.dim())].to_vec())
    }

    pub(crate) fn check_dim(&self, n: &MultiIndex) -> Result<()> {
        if self.dim() != n.dim() {
            return Err(Error::DimensionMismatch { expected: n.dim(), found: self.dim() });
        }
        Ok(())
    }
}

/// Which coefficient assembly to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Powers of the increments `δ_j`, `α_1` exponent `M - v_1`.
    #[default]
    Corrected,
    /// The literal displayed formula: powers of `α_j`, `α_1` exponent
    /// `M - Σ_{i≥2} v_i`.
    Paper,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Corrected, Variant::Paper];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Corrected => "corrected",
            Variant::Paper => "paper",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrected" => Ok(Variant::Corrected),
            "paper" => Ok(Variant::Paper),
            other => Err(Error::Precondition(format!("unknown variant {other:?}"))),
        }
    }
}

/// `d_j = Σ_{i=j}^n N_i + (n - j + 1) - Σ_{i=j+1}^n k_i` for `j = 1..n`.
/// Entries may be zero or negative when `k` lies outside `T(N)`.
pub fn denominator_factors(n_idx: &MultiIndex, k: &KVector) -> Result<Vec<i64>> {
    let n = n_idx.dim();
    if k.entries().len() + 1 != n {
        return Err(Error::DimensionMismatch { expected: n - 1, found: k.entries().len() });
    }
    Ok((1..=n)
        .map(|j| n_idx.tail_sum(j) + (n - j + 1) as i64 - k.tail_sum(j + 1))
        .collect())
}

/// `d_j` for `j ≥ 2` only depends on `k_{j+1..n}`, so the box is walked
/// from `k_n` downwards. `bound(d)` gives the inclusive range for `k_j`.
fn walk_box<F>(n_idx: &MultiIndex, bound: impl Fn(i64) -> Option<u32>, mut visit: F)
where
    F: FnMut(&[u32]) -> bool,
{
    fn go<F: FnMut(&[u32]) -> bool>(
        n_idx: &MultiIndex,
        j: usize,
        suffix_k: i64,
        ks: &mut Vec<u32>,
        bound: &dyn Fn(i64) -> Option<u32>,
        visit: &mut F,
    ) -> bool {
        let n = n_idx.dim();
        if j < 2 {
            return visit(ks);
        }
        let d = n_idx.tail_sum(j) + (n - j + 1) as i64 - suffix_k;
        let Some(hi) = bound(d) else { return true };
        for kj in 0..=hi {
            ks[j - 2] = kj;
            if !go(n_idx, j - 1, suffix_k + i64::from(kj), ks, bound, visit) {
                return false;
            }
        }
        true
    }
    let n = n_idx.dim();
    let mut ks = vec![0; n.saturating_sub(1)];
    go(n_idx, n, 0, &mut ks, &bound, &mut visit);
}

/// `T(N) = {k : 0 ≤ k_j ≤ d_j(N, k), 2 ≤ j ≤ n}`, with `k_n` outermost.
pub fn enumerate_t(n_idx: &MultiIndex) -> Vec<KVector> {
    let mut out = Vec::new();
    walk_box(n_idx, |d| u32::try_from(d).ok(), |ks| {
        out.push(KVector(ks.to_vec()));
        true
    });
    // the recursion varies k_2 fastest; sort so k_n is the most significant key
    out.sort_by(|a, b| a.0.iter().rev().cmp(b.0.iter().rev()));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarScan {
    pub polar: bool,
    pub witness: Option<KVector>,
}

/// Scans for `k` whose numerator guards `C(d_j, k_j)` (`j ≥ 2`) are all
/// nonzero while some `d_j(N, k)` vanishes.
///
/// Guards vanish exactly when `0 ≤ d_j < k_j`, so the scan covers the
/// `T(N)` box extended by `k_j = 0` wherever `d_j ≤ 0`.
pub fn is_polar(n_idx: &MultiIndex) -> PolarScan {
    let mut witness = None;
    walk_box(
        n_idx,
        |d| Some(u32::try_from(d.max(0)).unwrap_or(u32::MAX)),
        |ks| {
            let k = KVector(ks.to_vec());
            let d = denominator_factors(n_idx, &k).expect("k sized from N");
            let guards_ok = (2..=n_idx.dim()).all(|j| !binomial_signed(d[j - 1], u64::from(k.k(j))).is_zero());
            if guards_ok && d.contains(&0) {
                witness = Some(k);
                return false;
            }
            true
        },
    );
    PolarScan { polar: witness.is_some(), witness }
}

/// `M(N, k) = d_1(N, k)`.
pub fn top_exponent(n_idx: &MultiIndex, k: &KVector) -> Result<i64> {
    Ok(denominator_factors(n_idx, k)?[0])
}

/// `A(-N)` for one `(k, v)` pair.
///
/// Corrected: `C(M, v_1) α_1^{M - v_1} Π_{j≥2} C(d_j, k_j) C(k_j, v_j) δ_j^{k_j - v_j}`.
/// Paper: `δ_j` replaced by `α_j` and the `α_1` exponent `M - Σ_{i≥2} v_i`.
pub fn coefficient_a(
    n_idx: &MultiIndex,
    k: &KVector,
    v: &[u32],
    alpha: &AlphaVec,
    variant: Variant,
) -> Result<Rational> {
    let n = n_idx.dim();
    alpha.check_dim(n_idx)?;
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    let d = denominator_factors(n_idx, k)?;
    let m = d[0];
    let in_t = (2..=n).all(|j| d[j - 1] >= 0 && i64::from(k.k(j)) <= d[j - 1]);
    if !in_t {
        return Err(Error::Precondition(format!("k = {k} is not in T({n_idx})")));
    }
    if i64::from(v[0]) > m || (2..=n).any(|j| v[j - 1] > k.k(j)) {
        return Err(Error::Precondition(format!("v = {v:?} out of range for k = {k}")));
    }
    let m = m as u64;
    let v1 = u64::from(v[0]);
    let a1_exp = match variant {
        Variant::Corrected => m - v1,
        Variant::Paper => {
            let rest: u64 = v[1..].iter().map(|&x| u64::from(x)).sum();
            match m.checked_sub(rest) {
                Some(e) => e,
                // a negative printed exponent: α_1 is positive, so the power is still exact
                None => return Ok(paper_negative_exponent(n_idx, k, v, alpha, &d, m, rest)),
            }
        }
    };
    let mut acc = Rational::from_integer(binomial(m, v1)) * pow(alpha.alpha(1), a1_exp);
    for j in 2..=n {
        let kj = u64::from(k.k(j));
        let vj = u64::from(v[j - 1]);
        let base = match variant {
            Variant::Corrected => alpha.increment(j),
            Variant::Paper => alpha.alpha(j).clone(),
        };
        acc *= Rational::from_integer(binomial(d[j - 1] as u64, kj) * binomial(kj, vj));
        acc *= pow(&base, kj - vj);
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

fn paper_negative_exponent(
    n_idx: &MultiIndex,
    k: &KVector,
    v: &[u32],
    alpha: &AlphaVec,
    d: &[i64],
    m: u64,
    rest: u64,
) -> Rational {
    let mut acc = Rational::from_integer(binomial(m, u64::from(v[0])))
        / pow(alpha.alpha(1), rest - m);
    for j in 2..=n_idx.dim() {
        let kj = u64::from(k.k(j));
        let vj = u64::from(v[j - 1]);
        acc *= Rational::from_integer(binomial(d[j - 1] as u64, kj) * binomial(kj, vj));
        acc *= pow(alpha.alpha(j), kj - vj);
    }
    acc
}

/// All `v` with `v_1 ≤ M` and `v_j ≤ k_j`, `v_1` varying slowest.
pub fn v_range(m: u32, k: &KVector) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = (0..=m).map(|v1| vec![v1]).collect();
    for &kj in k.entries() {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=kj).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Product of the `d_j`, as a rational.
pub fn denominator_product(d: &[i64]) -> Rational {
    d.iter().fold(Rational::one(), |acc, &x| acc * Rational::from_integer(x.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    fn mi(xs: &[u32]) -> MultiIndex {
        MultiIndex::new(xs.to_vec()).unwrap()
    }

    fn kv(xs: &[u32]) -> KVector {
        KVector::new(xs.to_vec())
    }

    #[test]
    fn denominator_examples() {
        assert_eq!(denominator_factors(&mi(&[4]), &kv(&[])).unwrap(), vec![5]);
        assert_eq!(denominator_factors(&mi(&[0, 0]), &kv(&[0])).unwrap(), vec![2, 1]);
        assert_eq!(denominator_factors(&mi(&[0, 0]), &kv(&[1])).unwrap(), vec![1, 1]);
        assert!(denominator_factors(&mi(&[0, 0]), &kv(&[])).is_err());
        // d_n never sees k_n; d_1 sees all of k_2..k_n
        let d = denominator_factors(&mi(&[1, 2, 3]), &kv(&[2, 1])).unwrap();
        assert_eq!(d, vec![6 + 3 - 3, 5 + 2 - 1, 3 + 1]);
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_t(&mi(&[7])), vec![kv(&[])]);
        assert_eq!(enumerate_t(&mi(&[0, 0])), vec![kv(&[0]), kv(&[1])]);
        assert_eq!(
            enumerate_t(&mi(&[0, 0, 0])),
            vec![kv(&[0, 0]), kv(&[1, 0]), kv(&[2, 0]), kv(&[0, 1]), kv(&[1, 1])]
        );
    }

    #[test]
    fn admissible_denominators_are_positive() {
        for n in 1..=4 {
            for point in MultiIndex::grid(n, 4) {
                for k in enumerate_t(&point) {
                    let d = denominator_factors(&point, &k).unwrap();
                    assert!(d.iter().all(|&x| x >= 1), "{point} {k} {d:?}");
                }
            }
        }
    }

    #[test]
    fn t_size_is_monotone() {
        for n in 1..=3 {
            for point in MultiIndex::grid(n, 3) {
                let base = enumerate_t(&point).len();
                if n == 1 {
                    assert_eq!(base, 1);
                }
                for i in 0..n {
                    let mut up = point.entries().to_vec();
                    up[i] += 1;
                    assert!(enumerate_t(&mi(&up)).len() >= base);
                }
            }
        }
    }

    #[test]
    fn polar_examples() {
        for p in [mi(&[3]), mi(&[0, 0]), mi(&[1, 3])] {
            assert_eq!(is_polar(&p), PolarScan { polar: false, witness: None });
        }
    }

    #[test]
    fn coefficient_examples() {
        let alpha = AlphaVec::new(vec![ratio(5, 2)]).unwrap();
        let got = coefficient_a(&mi(&[2]), &kv(&[]), &[1], &alpha, Variant::Corrected).unwrap();
        assert_eq!(got, rat(3) * ratio(25, 4));
        // the literal exponent ignores v_1, so the n = 1 coefficient keeps α^M
        let got = coefficient_a(&mi(&[2]), &kv(&[]), &[1], &alpha, Variant::Paper).unwrap();
        assert_eq!(got, rat(3) * ratio(125, 8));
        let alpha = AlphaVec::new(vec![rat(1), ratio(3, 2)]).unwrap();
        assert_eq!(coefficient_a(&mi(&[0, 0]), &kv(&[1]), &[0, 1], &alpha, Variant::Corrected).unwrap(), rat(1));
        let equal = AlphaVec::new(vec![ratio(7, 3), ratio(7, 3)]).unwrap();
        assert_eq!(coefficient_a(&mi(&[0, 0]), &kv(&[1]), &[0, 0], &equal, Variant::Corrected).unwrap(), rat(0));
        assert_eq!(
            coefficient_a(&mi(&[0, 0]), &kv(&[1]), &[0, 0], &equal, Variant::Paper).unwrap(),
            ratio(7, 3) * ratio(7, 3)
        );
    }

    #[test]
    fn coefficient_preconditions() {
        let alpha = AlphaVec::new(vec![rat(1), rat(1)]).unwrap();
        let n = mi(&[0, 0]);
        assert!(coefficient_a(&n, &kv(&[2]), &[0, 0], &alpha, Variant::Corrected).is_err());
        assert!(coefficient_a(&n, &kv(&[1]), &[2, 0], &alpha, Variant::Corrected).is_err());
        assert!(coefficient_a(&n, &kv(&[0]), &[0, 1], &alpha, Variant::Corrected).is_err());
        assert!(coefficient_a(&n, &kv(&[0]), &[0], &alpha, Variant::Corrected).is_err());
    }

    #[test]
    fn alpha_validation() {
        assert!(AlphaVec::new(vec![rat(0)]).is_err());
        assert!(AlphaVec::new(vec![rat(1), ratio(-1, 2)]).is_err());
        assert!(AlphaVec::new(vec![]).is_err());
        let a = AlphaVec::new(vec![rat(1), ratio(3, 2), rat(2)]).unwrap();
        assert_eq!(a.increments(), vec![ratio(1, 2), ratio(1, 2)]);
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("paper".parse::<Variant>().unwrap(), Variant::Paper);
        assert_eq!(Variant::default(), Variant::Corrected);
        assert!("Paper".parse::<Variant>().is_err());
    }
}
