//! Sparse multivariate polynomials over the rationals in variables
//! `a_1, …, a_n`, and the transform pair linking a polynomial `P` to the
//! polynomial `Q` with `P(a) = ∫_{[0,1]^n} Q(a + t) dt`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{bernoulli_number, bernoulli_polynomial, binomial, pow, rat, Rational, UniPoly};
use crate::error::{Error, Result};

/// Exponent vector `L ∈ ℕ^n`.
pub type Exponents = Vec<u32>;

/// `Σ_L h_L Π a_i^{L_i}` with no stored zero coefficient, so equality of
/// values is structural equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `a_{i+1}` (0-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Top-degree homogeneous part.
    pub fn leading_form(&self) -> Self {
        let Some(top) = self.total_degree() else { return self.clone() };
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == top)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.nvars, Rational::one()), |acc, _| {
            acc.mul(self).expect("same dimension")
        })
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: point.len() });
        }
        Ok(self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mono = e
                .iter()
                .zip(point)
                .fold(Rational::one(), |m, (&k, x)| m * pow(x, u64::from(k)));
            acc + c * mono
        }))
    }

    /// `Σ_L h_L Π B_{L_i}`: the Bernoulli substitution evaluated at `a = 0`
    /// without expanding it.
    pub fn bernoulli_contraction(&self) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            acc + e.iter().fold(c.clone(), |m, &l| m * bernoulli_number(l as usize))
        })
    }

    /// Adds `c · Π_i f_i(a_i)`, one univariate factor per variable.
    pub fn add_separable(&mut self, factors: &[UniPoly], c: &Rational) -> Result<()> {
        if factors.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: factors.len() });
        }
        let factors: Vec<Vec<(u32, Rational)>> = factors
            .iter()
            .map(|f| {
                f.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(d, x)| (d as u32, x.clone()))
                    .collect()
            })
            .collect();
        expand_product(&factors, c, self);
        Ok(())
    }

    /// Replaces every monomial `Π a_i^{L_i}` by `Π B_{L_i}(a_i)`.
    pub fn bernoullize(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let factors: Vec<Vec<(u32, Rational)>> = e
                .iter()
                .map(|&l| {
                    bernoulli_polynomial(l as usize)
                        .coeffs()
                        .iter()
                        .enumerate()
                        .filter(|(_, b)| !b.is_zero())
                        .map(|(d, b)| (d as u32, b.clone()))
                        .collect()
                })
                .collect();
            expand_product(&factors, c, &mut out);
        }
        out
    }

    /// `P(a) = ∫_{[0,1]^n} Q(a + t) dt`, using
    /// `∫_0^1 (x + t)^e dt = Σ_{r=0}^{e} C(e+1, r) x^r / (e+1)`.
    pub fn cube_integrate_shifted(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let factors: Vec<Vec<(u32, Rational)>> = e
                .iter()
                .map(|&l| {
                    (0..=l)
                        .map(|r| {
                            let b = binomial(u64::from(l) + 1, u64::from(r));
                            (r, Rational::from_integer(b) / rat(i64::from(l) + 1))
                        })
                        .collect()
                })
                .collect();
            expand_product(&factors, c, &mut out);
        }
        out
    }
}

/// Adds `c · Π_i (Σ_d f_{i,d} a_i^d)` into `out`; each factor acts on its own variable.
fn expand_product(factors: &[Vec<(u32, Rational)>], c: &Rational, out: &mut MultiPoly) {
    fn go(
        factors: &[Vec<(u32, Rational)>],
        i: usize,
        exps: &mut Vec<u32>,
        acc: Rational,
        out: &mut MultiPoly,
    ) {
        if i == factors.len() {
            out.add_term(exps.clone(), acc);
            return;
        }
        for (d, f) in &factors[i] {
            exps.push(*d);
            go(factors, i + 1, exps, &acc * f, out);
            exps.pop();
        }
    }
    go(factors, 0, &mut Vec::with_capacity(factors.len()), c.clone(), out);
}

fn grlex_desc(a: &Exponents, b: &Exponents) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl fmt::Display for MultiPoly {
    /// Terms in descending graded-lex order, `coef * a1^e1 a2^e2` joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| grlex_desc(a, b));
        for (idx, e) in keys.into_iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", self.terms[e])?;
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, k)| format!("a{}^{}", i + 1, k))
                .collect();
            if !vars.is_empty() {
                write!(f, " * {}", vars.join(" "))?;
            }
        }
        Ok(())
    }
}
