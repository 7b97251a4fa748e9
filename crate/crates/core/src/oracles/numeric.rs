//! Floating-point checks in the region of absolute convergence. Every
//! estimate carries an explicit error bound covering truncation and
//! quadrature.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{SignatureS, Tolerance};
use crate::arith::bernoulli_number;
use crate::error::{Error, Result};
use crate::indexsets::{AlphaVec, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    /// Upper bound on `|value - exact|` from truncation and quadrature.
    pub error_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RaabeCheck {
    pub lhs: Estimate,
    pub rhs: Estimate,
    pub pass: bool,
}

fn alphas_f64(alpha: &AlphaVec) -> Vec<f64> {
    alpha.alphas().iter().map(|a| a.to_f64().expect("finite rational")).collect()
}

fn check_dims(alpha: &AlphaVec, s: &SignatureS, max_n: usize) -> Result<()> {
    if alpha.dim() != s.dim() {
        return Err(Error::DimensionMismatch { expected: s.dim(), found: alpha.dim() });
    }
    if s.dim() > max_n {
        return Err(Error::Precondition(format!("n = {} exceeds the supported n ≤ {max_n}", s.dim())));
    }
    Ok(())
}

/// Hurwitz zeta `ζ(s, q)` for real `s > 1`, `q > 0`, by Euler–Maclaurin
/// after shifting the argument past 12.
pub fn hurwitz_zeta(s: f64, q: f64) -> f64 {
    const SHIFT: usize = 12;
    const TERMS: usize = 10;
    let head: f64 = (0..SHIFT).map(|k| (q + k as f64).powf(-s)).sum();
    let w = q + SHIFT as f64;
    let mut tail = w.powf(1.0 - s) / (s - 1.0) + 0.5 * w.powf(-s);
    // B_{2j}/(2j)! · s(s+1)…(s+2j-2) · w^{-s-2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut wpow = w.powf(-s - 1.0);
    for j in 1..=TERMS {
        let b = bernoulli_number(2 * j).to_f64().expect("finite");
        tail += b / fact * rising * wpow;
        let (a, c) = ((2 * j) as f64, (2 * j + 1) as f64);
        rising *= (s + a - 1.0) * (s + a);
        fact *= a + 1.0;
        fact *= c + 1.0;
        wpow /= w * w;
    }
    head + tail
}

/// `∫_0^∞ (x + a)^{-s} dx`.
fn power_integral(a: f64, s: f64) -> f64 {
    a.powf(1.0 - s) / (s - 1.0)
}

/// Bound on the mass of `Π (x_i + a)^{-s_i}` outside `[0, R]^n`; the product
/// dominates the integrand since `x_1 + … + x_i ≥ x_i`.
fn outside_box_bound(r: f64, a: f64, s: &[f64]) -> f64 {
    (0..s.len())
        .map(|i| {
            let tail = (r + a).powf(1.0 - s[i]) / (s[i] - 1.0);
            let rest: f64 = (0..s.len()).filter(|&j| j != i).map(|j| power_integral(a, s[j])).product();
            tail * rest
        })
        .sum()
}

/// Truncated defining series over `{0..cutoff}^n` with a bound on the rest.
pub fn series_zeta_numeric(alpha: &AlphaVec, s: &SignatureS, tol: &Tolerance) -> Result<Estimate> {
    check_dims(alpha, s, 3)?;
    let al = alphas_f64(alpha);
    let sf = s.as_f64();
    let cutoff = tol.cutoff;

    fn go(level: usize, cum: u64, weight: f64, al: &[f64], sf: &[f64], cutoff: usize, acc: &mut f64) {
        if level == al.len() {
            let next = *acc + weight;
            assert!(next >= *acc, "partial sums must not decrease");
            *acc = next;
            return;
        }
        for m in 0..=cutoff as u64 {
            let c = cum + m;
            let w = weight * (c as f64 + al[level]).powf(-sf[level]);
            go(level + 1, c, w, al, sf, cutoff, acc);
        }
    }
    let mut value = 0.0;
    go(0, 0, 1.0, &al, &sf, cutoff, &mut value);

    let a = al.iter().cloned().fold(f64::INFINITY, f64::min);
    let full = |si: f64| a.powf(-si) + power_integral(a, si);
    let error_bound = (0..sf.len())
        .map(|i| {
            let tail = (cutoff as f64 + a).powf(1.0 - sf[i]) / (sf[i] - 1.0);
            let rest: f64 = (0..sf.len()).filter(|&j| j != i).map(|j| full(sf[j])).product();
            tail * rest
        })
        .sum();
    Ok(Estimate { value, error_bound })
}

/// Adaptive integral over `[lo, hi]` split at `lo + 1, lo + 2, lo + 4, …`.
fn integrate_split<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, target: f64) -> Estimate {
    let mut cuts = vec![lo];
    let mut step = 1.0;
    while lo + step < hi {
        cuts.push(lo + step);
        step *= 2.0;
    }
    cuts.push(hi);
    let per_piece = target / (cuts.len() - 1) as f64;
    let mut est = Estimate { value: 0.0, error_bound: 0.0 };
    for w in cuts.windows(2) {
        let out = quadrature::integrate(&f, w[0], w[1], per_piece);
        est.value += out.integral;
        est.error_bound += out.error_estimate;
    }
    est
}

/// `Y_n(α; s)` by iterated quadrature on `[0, R]^n`, `R` chosen so the mass
/// outside the box is below `eps / 10`.
pub fn y_numeric(alpha: &AlphaVec, s: &SignatureS, tol: &Tolerance) -> Result<Estimate> {
    check_dims(alpha, s, 2)?;
    let al = alphas_f64(alpha);
    let sf = s.as_f64();
    let a = al.iter().cloned().fold(f64::INFINITY, f64::min);
    let eps = tol.abs_eps;
    let mut r = 1.0;
    while outside_box_bound(r, a, &sf) > eps / 10.0 {
        r *= 2.0;
        if r > 1e15 {
            return Err(Error::NonConvergence("truncation radius exceeds 1e15".into()));
        }
    }
    let est = match al.len() {
        1 => {
            let mut e = integrate_split(|x| (x + al[0]).powf(-sf[0]), 0.0, r, eps / 100.0);
            // exact tail for one variable
            e.value += (r + al[0]).powf(1.0 - sf[0]) / (sf[0] - 1.0);
            e
        }
        _ => {
            let inner_target = eps / 1000.0;
            let inner_err = std::cell::Cell::new(0.0f64);
            let outer = integrate_split(
                |x1| {
                    let inner = integrate_split(|x2| (x1 + x2 + al[1]).powf(-sf[1]), 0.0, r, inner_target);
                    let w = (x1 + al[0]).powf(-sf[0]);
                    inner_err.set(inner_err.get().max(inner.error_bound));
                    w * inner.value
                },
                0.0,
                r,
                eps / 100.0,
            );
            Estimate {
                value: outer.value,
                error_bound: outer.error_bound
                    + inner_err.get() * power_integral(al[0], sf[0])
                    + outside_box_bound(r, a, &sf),
            }
        }
    };
    if !est.value.is_finite() || est.error_bound > eps {
        return Err(Error::NonConvergence(format!("quadrature error bound {:e} > {eps:e}", est.error_bound)));
    }
    Ok(est)
}

fn gen_binomial_f64(top: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (top - i as f64) / (i + 1) as f64)
}

/// Truncated `k`-series for `Y_n(α; s)` from the change of variables
/// `z_i = x_1 + … + x_i + α_1`:
///
/// ```text
/// Σ_k Π_{j≥2} C(-f_j, k_j) b_j^{k_j} · α_1^{-f_1} / Π_j f_j,
/// f_j = Σ_{i≥j} s_i - (n - j + 1) + Σ_{i>j} k_i
/// ```
///
/// with `b_j = δ_j` (corrected) or `α_j` (paper). Summed by shells of
/// constant `|k|` until the geometric tail estimate drops below `eps / 100`.
pub fn y_series_numeric(alpha: &AlphaVec, s: &SignatureS, variant: Variant, tol: &Tolerance) -> Result<f64> {
    if alpha.dim() != s.dim() {
        return Err(Error::DimensionMismatch { expected: s.dim(), found: alpha.dim() });
    }
    let n = s.dim();
    let al = alphas_f64(alpha);
    let sf = s.as_f64();
    // expansion base b_j and the lower bound of the quantity it is divided by
    let mut ratio: f64 = 0.0;
    let mut bases = vec![0.0; n + 1];
    for j in 2..=n {
        let (b, floor) = match variant {
            Variant::Corrected => (al[j - 1] - al[j - 2], al[j - 2]),
            Variant::Paper => (al[j - 1], al[0] + al[1..j - 1].iter().sum::<f64>()),
        };
        let r = b.abs() / floor;
        if r >= 1.0 {
            return Err(Error::Divergent(format!(
                "{variant} expansion base b_{j} = {b} is not below {floor} (ratio {r:.3})"
            )));
        }
        ratio = ratio.max(r);
        bases[j] = b;
    }

    let term = |k: &[usize]| -> f64 {
        // k[j] = k_j, indices 0 and 1 unused
        let f = |j: usize| -> f64 {
            sf[j - 1..].iter().sum::<f64>() - (n - j + 1) as f64 + k[j + 1..].iter().map(|&x| x as f64).sum::<f64>()
        };
        let mut t = al[0].powf(-f(1));
        for j in 1..=n {
            t /= f(j);
        }
        for j in 2..=n {
            t *= gen_binomial_f64(-f(j), k[j]) * bases[j].powi(k[j] as i32);
        }
        t
    };

    fn shell(n: usize, total: usize, j: usize, k: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if j > n {
            if total == 0 {
                out.push(k.clone());
            }
            return;
        }
        let range = if j == n { total..=total } else { 0..=total };
        for kj in range {
            k[j] = kj;
            shell(n, total - kj, j + 1, k, out);
        }
        k[j] = 0;
    }

    let mut sum = 0.0;
    for t in 0..=tol.cutoff {
        let mut ks = Vec::new();
        if n == 1 {
            if t > 0 {
                break;
            }
            ks.push(vec![0; 2]);
        } else {
            shell(n, t, 2, &mut vec![0; n + 1], &mut ks);
        }
        let contrib: Vec<f64> = ks.iter().map(|k| term(k)).collect();
        let shell_sum: f64 = contrib.iter().sum();
        let shell_abs: f64 = contrib.iter().map(|x| x.abs()).sum();
        sum += shell_sum;
        if n == 1 {
            return Ok(sum);
        }
        // shell sizes grow polynomially; (t + 2)^(n - 2) covers the growth
        let growth = ((t + 2) as f64).powi(n as i32 - 2);
        let tail = shell_abs * growth * ratio / (1.0 - ratio);
        if t > 0 && tail < tol.abs_eps / 100.0 {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence(format!("k-series not converged after cutoff {}", tol.cutoff)))
}

/// Compares `Y_n(α; s)` with the cube average `∫_{[0,1]^n} ζ_{n,t}(α; s) dt`.
pub fn raabe_numeric_check(alpha: &AlphaVec, s: &SignatureS, tol: &Tolerance) -> Result<RaabeCheck> {
    check_dims(alpha, s, 2)?;
    let lhs = y_numeric(alpha, s, tol)?;
    let al = alphas_f64(alpha);
    let sf = s.as_f64();
    let eps = tol.abs_eps;
    let rhs = match al.len() {
        1 => {
            let out = quadrature::integrate(|t| hurwitz_zeta(sf[0], t + al[0]), 0.0, 1.0, eps / 100.0);
            Estimate { value: out.integral, error_bound: out.error_estimate }
        }
        _ => {
            let a = al[0].min(al[1]);
            let (s1, s2) = (sf[0], sf[1]);
            // Σ_{m>C} (m+a)^{-s1} ζ(s2, m+a) with ζ(s2, q) ≤ q^{-s2} + q^{1-s2}/(s2-1)
            let bound = |c: f64| {
                (c + a).powf(1.0 - s1 - s2) / (s1 + s2 - 1.0)
                    + (c + a).powf(2.0 - s1 - s2) / ((s2 - 1.0) * (s1 + s2 - 2.0))
            };
            let mut cutoff = 16usize;
            while bound(cutoff as f64) > eps / 10.0 && cutoff < tol.cutoff {
                cutoff = (cutoff * 2).min(tol.cutoff);
            }
            let tail = bound(cutoff as f64);
            let shifted = |t1: f64, t2: f64| -> f64 {
                (0..=cutoff)
                    .map(|m| {
                        let m = m as f64;
                        (m + t1 + al[0]).powf(-s1) * hurwitz_zeta(s2, m + t1 + t2 + al[1])
                    })
                    .sum()
            };
            let inner_err = std::cell::Cell::new(0.0f64);
            let out = quadrature::integrate(
                |t1| {
                    let inner = quadrature::integrate(|t2| shifted(t1, t2), 0.0, 1.0, eps / 1000.0);
                    inner_err.set(inner_err.get().max(inner.error_estimate));
                    inner.integral
                },
                0.0,
                1.0,
                eps / 100.0,
            );
            Estimate { value: out.integral, error_bound: out.error_estimate + inner_err.get() + tail }
        }
    };
    let pass = (lhs.value - rhs.value).abs() <= eps + lhs.error_bound + rhs.error_bound;
    Ok(RaabeCheck { lhs, rhs, pass })
}
