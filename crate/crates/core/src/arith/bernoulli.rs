use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

use super::{binomial, parse_rational, rat, ratio, Rational, UniPoly};
use crate::error::{Error, Result};

/// Append-only table of Bernoulli numbers in the `B_1 = -1/2` convention.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliCache {
    table: Vec<Rational>,
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self { table: vec![Rational::one()] }
    }

    /// Highest index currently stored.
    pub fn highest(&self) -> usize {
        self.table.len() - 1
    }

    pub fn lookup(&self, m: usize) -> Option<&Rational> {
        self.table.get(m)
    }

    pub fn get(&mut self, m: usize) -> Rational {
        self.extend_to(m);
        self.table[m].clone()
    }

    /// Fills the table up to index `m` with `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
    pub fn extend_to(&mut self, m: usize) {
        while self.table.len() <= m {
            let next = self.table.len();
            let value = if next >= 3 && next % 2 == 1 {
                Rational::zero()
            } else {
                let mut acc = Rational::zero();
                for (j, b) in self.table.iter().enumerate() {
                    if !b.is_zero() {
                        acc += Rational::from_integer(binomial(next as u64 + 1, j as u64)) * b;
                    }
                }
                -acc / rat(next as i64 + 1)
            };
            self.table.push(value);
        }
    }

    /// Parses `m<TAB>p/q` records. Indices must start at 0 and be contiguous.
    pub fn from_records(text: &str) -> Result<Self> {
        let mut table = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let bad = |why: &str| Error::Cache(format!("line {}: {why}", lineno + 1));
            let (idx, value) = line.split_once('\t').ok_or_else(|| bad("missing tab"))?;
            let idx: usize = idx.parse().map_err(|_| bad("bad index"))?;
            if idx != table.len() {
                return Err(bad("indices must be contiguous from 0"));
            }
            table.push(parse_rational(value).map_err(|e| bad(&e.to_string()))?);
        }
        let cache = Self { table };
        cache.check()?;
        Ok(cache)
    }

    pub fn to_records(&self) -> String {
        let mut out = String::new();
        for (m, b) in self.table.iter().enumerate() {
            out.push_str(&format!("{m}\t{}/{}\n", b.numer(), b.denom()));
        }
        out
    }

    fn check(&self) -> Result<()> {
        let bad = |m: usize| Error::Cache(format!("entry {m} violates the Bernoulli table invariants"));
        if self.table.is_empty() || self.table[0] != Rational::one() {
            return Err(bad(0));
        }
        if self.table.len() > 1 && self.table[1] != ratio(-1, 2) {
            return Err(bad(1));
        }
        for m in (3..self.table.len()).step_by(2) {
            if !self.table[m].is_zero() {
                return Err(bad(m));
            }
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        Self::from_records(&text)
    }

    /// Writes to a sibling temp file and renames it over `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
        let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("bernoulli");
        let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
        let mut file = fs::File::create(&tmp).map_err(io)?;
        file.write_all(self.to_records().as_bytes()).map_err(io)?;
        file.sync_all().map_err(io)?;
        fs::rename(&tmp, path).map_err(io)
    }

    /// Adopts entries from `other` beyond our own table. Overlapping entries
    /// must agree.
    pub fn merge(&mut self, other: &BernoulliCache) -> Result<()> {
        for (m, (a, b)) in self.table.iter().zip(&other.table).enumerate() {
            if a != b {
                return Err(Error::Cache(format!("entry {m} disagrees with computed value")));
            }
        }
        if other.table.len() > self.table.len() {
            self.table.extend_from_slice(&other.table[self.table.len()..]);
        }
        Ok(())
    }
}

/// Process-wide cache shared by every evaluator.
pub fn global_cache() -> &'static RwLock<BernoulliCache> {
    static CACHE: OnceLock<RwLock<BernoulliCache>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(BernoulliCache::new()))
}

/// `B_m = B_m(0)`, so `B_1 = -1/2`.
pub fn bernoulli_number(m: usize) -> Rational {
    let cache = global_cache();
    if let Some(b) = cache.read().expect("bernoulli cache poisoned").lookup(m) {
        return b.clone();
    }
    cache.write().expect("bernoulli cache poisoned").get(m)
}

/// `B_m(x) = Σ_j C(m, j) B_j x^{m-j}`.
pub fn bernoulli_polynomial(m: usize) -> UniPoly {
    let coeffs = (0..=m)
        .map(|e| Rational::from_integer(binomial(m as u64, e as u64)) * bernoulli_number(m - e))
        .collect();
    UniPoly::new(coeffs)
}


#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn first_bernoulli_numbers() {
        assert_eq!(bernoulli_number(0), rat(1));
        assert_eq!(bernoulli_number(1), ratio(-1, 2));
        assert_eq!(bernoulli_number(2), ratio(1, 6));
        assert_eq!(bernoulli_number(4), ratio(-1, 30));
        assert_eq!(bernoulli_number(12), ratio(-691, 2730));
        assert_eq!(bernoulli_number(15), rat(0));
    }

    #[test]
    fn bernoulli_polynomials_low_degree() {
        assert_eq!(bernoulli_polynomial(0), UniPoly::new(vec![rat(1)]));
        assert_eq!(bernoulli_polynomial(1), UniPoly::new(vec![ratio(-1, 2), rat(1)]));
        assert_eq!(bernoulli_polynomial(2), UniPoly::new(vec![ratio(1, 6), rat(-1), rat(1)]));
    }

    #[test]
    fn bernoulli_polynomial_identities() {
        let one = UniPoly::new(vec![rat(1), rat(1)]);
        let x = UniPoly::monomial(1);
        for m in 0..=20usize {
            let b = bernoulli_polynomial(m);
            if m >= 1 {
                assert!(b.integrate_unit().is_zero(), "∫B_{m} != 0");
            }
            let diff = b.compose(&one).sub(&b);
            let expect = if m == 0 { UniPoly::zero() } else { x.pow(m - 1).scale(&rat(m as i64)) };
            assert_eq!(diff, expect, "difference identity, m={m}");
            let half = b.eval(&ratio(1, 2));
            let two_pow = if m == 0 { rat(2) } else { Rational::new(BigInt::one(), BigInt::one() << (m - 1)) };
            assert_eq!(half, (two_pow - rat(1)) * bernoulli_number(m), "B_{m}(1/2)");
        }
    }

    #[test]
    fn records_round_trip_and_validate() {
        let mut c = BernoulliCache::new();
        c.extend_to(14);
        let back = BernoulliCache::from_records(&c.to_records()).unwrap();
        assert_eq!(back, c);
        assert!(BernoulliCache::from_records("0\t1/1\n1\t1/2\n").is_err());
        assert!(BernoulliCache::from_records("0\t1/1\n2\t1/6\n").is_err());
        assert!(BernoulliCache::from_records("0 1\n").is_err());
    }

    #[test]
    fn save_is_atomic_rename() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bern.tsv");
        let mut c = BernoulliCache::new();
        c.extend_to(10);
        c.save(&path).unwrap();
        assert_eq!(BernoulliCache::load(&path).unwrap(), c);
        let leftovers: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(leftovers.len(), 1);
    }

    #[test]
    fn merge_rejects_conflicts() {
        let mut small = BernoulliCache::new();
        small.extend_to(4);
        let mut big = BernoulliCache::new();
        big.extend_to(10);
        small.merge(&big).unwrap();
        assert_eq!(small.highest(), 10);
        let forged = BernoulliCache::from_records("0\t1/1\n1\t-1/2\n2\t1/7\n").unwrap();
        assert!(small.merge(&forged).is_err());
    }

    #[test]
    fn concurrent_fill_is_idempotent() {
        let handles: Vec<_> = (0..8)
            .map(|t| std::thread::spawn(move || (0..40).map(|m| bernoulli_number((m * 7 + t) % 40)).collect::<Vec<_>>()))
            .collect();
        let mut fresh = BernoulliCache::new();
        for (t, h) in handles.into_iter().enumerate() {
            for (m, b) in h.join().unwrap().into_iter().enumerate() {
                assert_eq!(b, fresh.get((m * 7 + t) % 40));
            }
        }
    }
}
