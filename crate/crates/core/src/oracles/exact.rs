//! Iterated-limit oracle for `ζ_n(α; -N)`.
//!
//! The innermost index is summed first with
//! `Σ_{m≥0} (Y + m)^e = ζ(-e, Y) = -B_{e+1}(Y)/(e+1)`, which leaves a
//! polynomial in `Y = m_1 + … + m_{n-1} + α_n`. Rewriting it in
//! `X = Y - δ_n` merges it with the next factor `X^{N_{n-1}}`, and the
//! recursion repeats down to `ζ(-e, α_1)`.

use num_traits::Zero;

use crate::arith::{bernoulli_polynomial, rat, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::indexsets::{AlphaVec, MultiIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regularity {
    /// Refuse points on a singular hyperplane.
    Require,
    /// Compute the iterated-limit value anyway.
    Override,
}

/// Conservative regularity test: every tail sum `Σ_{i=j}^n N_i` with
/// `j < n` must be odd. For `n = 2` this is exactly `N_1 + N_2` odd.
pub fn is_regular(point: &MultiIndex) -> bool {
    let e = point.entries();
    (0..e.len().saturating_sub(1)).all(|j| e[j..].iter().map(|&x| u64::from(x)).sum::<u64>() % 2 == 1)
}

/// `Σ_e c_e ζ(-e, Y)` as a polynomial in `Y`.
fn sum_out(p: &UniPoly) -> UniPoly {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(UniPoly::zero(), |acc, (e, c)| {
            acc.add(&bernoulli_polynomial(e + 1).scale(&(-c / rat(e as i64 + 1))))
        })
}

pub fn oracle_zeta(alpha: &AlphaVec, point: &MultiIndex, regularity: Regularity) -> Result<Rational> {
    alpha.check_dim(point)?;
    if regularity == Regularity::Require && !is_regular(point) {
        return Err(Error::IrregularPoint(point.entries().to_vec()));
    }
    let n = point.dim();
    let entries = point.entries();
    let mut p = UniPoly::monomial(entries[n - 1] as usize);
    for level in (1..=n).rev() {
        let q = sum_out(&p);
        if level == 1 {
            return Ok(q.eval(alpha.alpha(1)));
        }
        let q = q.shift(&alpha.increment(level));
        p = q.mul(&UniPoly::monomial(entries[level - 2] as usize));
    }
    unreachable!("loop returns at level 1")
}
