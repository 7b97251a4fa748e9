use num_traits::{One, Zero};

use super::{binomial, pow, rat, Rational};

/// Dense univariate polynomial, coefficients in ascending degree.
/// The coefficient vector never ends in a zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(e: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = Rational::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> Rational {
        self.coeffs.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|e| self.coeff(e) + other.coeff(e)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `p(q(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(inner).add(&Self::constant(c.clone())))
    }

    /// `p(x + shift)`, expanded binomially.
    pub fn shift(&self, shift: &Rational) -> Self {
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (e, slot) in out.iter_mut().enumerate().take(i + 1) {
                let b = Rational::from_integer(binomial(i as u64, e as u64));
                *slot += c * b * pow(shift, (i - e) as u64);
            }
        }
        Self::new(out)
    }

    /// `∫_0^1 p(x) dx`.
    pub fn integrate_unit(&self) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (e, c)| acc + c / rat(e as i64 + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    #[test]
    fn canonical_trailing_zeros() {
        let p = UniPoly::new(vec![rat(1), rat(0), rat(0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(UniPoly::new(vec![rat(0)]).is_zero());
    }

    #[test]
    fn shift_matches_compose() {
        let p = UniPoly::new(vec![ratio(1, 3), rat(-2), rat(0), ratio(5, 7)]);
        let d = ratio(-3, 4);
        let lin = UniPoly::new(vec![d.clone(), rat(1)]);
        assert_eq!(p.shift(&d), p.compose(&lin));
        assert_eq!(p.shift(&d).eval(&rat(2)), p.eval(&(rat(2) + d)));
    }
}
