//! Exact scalar substrate: rationals, binomial coefficients, Bernoulli numbers
//! and Bernoulli polynomials.

mod bernoulli;
mod unipoly;

pub use bernoulli::{bernoulli_number, bernoulli_polynomial, global_cache, BernoulliCache};
pub use unipoly::UniPoly;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator by `num_rational`.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q` or a bare integer. Decimals are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::MalformedRational(s.to_string());
    let t = s.trim();
    let int = |part: &str| -> Result<BigInt> {
        let part = part.trim();
        if part.is_empty() || !part.trim_start_matches(['-', '+']).chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        part.parse::<BigInt>().map_err(|_| bad())
    };
    match t.split_once('/') {
        None => Ok(Rational::from_integer(int(t)?)),
        Some((p, q)) => {
            let den = int(q)?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(int(p)?, den))
        }
    }
}

/// `p/q`, or `p` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// `base^exp` with `0^0 = 1`.
pub fn pow(base: &Rational, exp: u64) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

/// C(n, k) over the integers; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    acc
}

/// Generalized binomial `r (r-1) ⋯ (r-k+1) / k!` for a rational top.
pub fn gen_binomial(r: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= r - rat(i as i64);
        acc /= rat(i as i64 + 1);
    }
    acc
}

/// Binomial with a possibly negative integer top, as used in guard checks.
pub fn binomial_signed(n: i64, k: u64) -> Rational {
    if n >= 0 {
        Rational::from_integer(binomial(n as u64, k))
    } else {
        gen_binomial(&rat(n), k)
    }
}

pub(crate) fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}
