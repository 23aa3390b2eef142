use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{ReductionKind, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::exact_arith::{is_prime, primes_up_to, FiniteField, FqElem};

/// Largest field size `p^k` accepted by [`count_points`].
pub const COUNT_BUDGET: u64 = 20_000_000;

fn residue(x: &BigInt, p: u64) -> u64 {
    let p = BigInt::from(p);
    (((x % &p) + &p) % &p).to_u64().unwrap()
}

/// `#E_ns(F_{p^k})`: all points of the reduction, minus the singular point at bad primes.
pub fn count_points(curve: &WeierstrassCurve, p: u64, k: usize) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{} is not prime", p)));
    }
    let q = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if k == 0 || q > COUNT_BUDGET as u128 {
        return Err(Error::Resource(format!("field of size {}^{} exceeds the enumeration budget {}", p, k, COUNT_BUDGET)));
    }
    let total = if k == 1 && p > 2 {
        let sum = legendre_sum_prime(curve, p);
        (p as i64 + 1 + sum) as u64
    } else {
        count_extension(curve, &FiniteField::new(p, k)?)
    };
    Ok(if curve.is_bad(p) { total - 1 } else { total })
}

/// `sum_x ((4x^3 + b2 x^2 + 2 b4 x + b6) / p)` by finite differences and a table of squares.
fn legendre_sum_prime(curve: &WeierstrassCurve, p: u64) -> i64 {
    let [b2, b4, b6, _] = curve.b_invariants();
    let c3 = 4 % p;
    let c2 = residue(&b2, p);
    let c1 = residue(&(2 * &b4), p);
    let c0 = residue(&b6, p);
    let f = |x: u64| -> u64 { (((c3 * x % p + c2) % p * x % p + c1) % p * x % p + c0) % p };
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    let mut sq = 0u64;
    for y in 0..(p + 1) / 2 {
        if y > 0 {
            chi[sq as usize] = 1;
        }
        sq += 2 * y + 1;
        while sq >= p {
            sq -= p;
        }
    }
    let (f0, f1, f2, f3) = (f(0), f(1 % p), f(2 % p), f(3 % p));
    let sub = |a: u64, b: u64| if a >= b { a - b } else { a + p - b };
    let mut v = f0;
    let mut d1 = sub(f1, f0);
    let mut d2 = sub(sub(f2, f1), d1);
    let d3 = sub(sub(sub(f3, f2), sub(f2, f1)), d2);
    let mut sum = 0i64;
    for _ in 0..p {
        sum += chi[v as usize] as i64;
        v += d1;
        if v >= p {
            v -= p;
        }
        d1 += d2;
        if d1 >= p {
            d1 -= p;
        }
        d2 += d3;
        if d2 >= p {
            d2 -= p;
        }
    }
    sum
}

fn count_extension(curve: &WeierstrassCurve, f: &FiniteField) -> u64 {
    let p = f.p;
    let q = f.q;
    let c = |x: i64| f.from_int(x.rem_euclid(p as i64));
    if p == 2 {
        let (a1, a2, a3, a4, a6) = (c(curve.a1), c(curve.a2), c(curve.a3), c(curve.a4), c(curve.a6));
        let mut n = 1u64;
        for i in 0..q {
            let x = f.element(i);
            let h = f.add(&f.mul(&a1, &x), &a3);
            let g = horner(f, &[a6, a4, a2, f.one()], &x);
            if f.is_zero(&h) {
                n += 1;
            } else {
                let hi = f.inv(&h).unwrap();
                let w = f.mul(&g, &f.mul(&hi, &hi));
                if f.trace(&w) == 0 {
                    n += 2;
                }
            }
        }
        return n;
    }
    let [b2, b4, b6, _] = curve.b_invariants();
    let r = |x: &BigInt| f.from_int(residue(x, p) as i64);
    let coeffs = [r(&b6), r(&(2 * &b4)), r(&b2), f.from_int(4)];
    let mut square = vec![false; q as usize];
    for i in 0..q {
        let a = f.element(i);
        square[f.index(&f.mul(&a, &a)) as usize] = true;
    }
    let mut n = 1u64;
    for i in 0..q {
        let v = horner(f, &coeffs, &f.element(i));
        if f.is_zero(&v) {
            n += 1;
        } else if square[f.index(&v) as usize] {
            n += 2;
        }
    }
    n
}

fn horner(f: &FiniteField, c: &[FqElem], x: &FqElem) -> FqElem {
    let mut acc = f.zero();
    for a in c.iter().rev() {
        acc = f.add(&f.mul(&acc, x), a);
    }
    acc
}

/// Frobenius trace: `p + 1 - #E(F_p)` at good primes, `+1`, `-1`, `0` at split, nonsplit
/// and additive primes.
pub fn trace_ap(curve: &WeierstrassCurve, p: u64) -> Result<i64> {
    match curve.reduction(p).kind {
        ReductionKind::Good => Ok(p as i64 + 1 - count_points(curve, p, 1)? as i64),
        ReductionKind::SplitMultiplicative => Ok(1),
        ReductionKind::NonsplitMultiplicative => Ok(-1),
        ReductionKind::Additive => Ok(0),
    }
}

/// Append-only table of `a_p`, optionally mirrored to a `p a_p` text file.
pub struct ApCache {
    path: Option<PathBuf>,
    table: RwLock<BTreeMap<u64, i64>>,
    covered: RwLock<u64>,
}

impl ApCache {
    pub fn in_memory() -> ApCache {
        ApCache { path: None, table: RwLock::new(BTreeMap::new()), covered: RwLock::new(1) }
    }

    pub fn file_name(curve: &WeierstrassCurve) -> String {
        let c = curve.coefficients();
        format!("ap_{}_{}_{}_{}_{}.txt", c[0], c[1], c[2], c[3], c[4])
    }

    /// Cache file for `curve` under `dir`, loading whatever it already holds.
    pub fn persistent(curve: &WeierstrassCurve, dir: &Path) -> Result<ApCache> {
        fs::create_dir_all(dir)?;
        let path = dir.join(ApCache::file_name(curve));
        let mut table = BTreeMap::new();
        let mut covered = 1;
        if let Ok(text) = fs::read_to_string(&path) {
            for line in text.lines() {
                let mut it = line.split_whitespace();
                let (Some(p), Some(a), None) = (it.next(), it.next(), it.next()) else { break };
                let (Ok(p), Ok(a)) = (p.parse::<u64>(), a.parse::<i64>()) else { break };
                if p <= covered {
                    break;
                }
                table.insert(p, a);
                covered = p;
            }
        }
        let cache = ApCache { path: Some(path), table: RwLock::new(table), covered: RwLock::new(covered) };
        cache.rewrite()?;
        Ok(cache)
    }

    /// Persistent cache in `$EBSD_CACHE_DIR` when set, else in memory.
    pub fn from_env(curve: &WeierstrassCurve) -> ApCache {
        match std::env::var_os("EBSD_CACHE_DIR") {
            Some(dir) => ApCache::persistent(curve, Path::new(&dir)).unwrap_or_else(|_| ApCache::in_memory()),
            None => ApCache::in_memory(),
        }
    }

    fn rewrite(&self) -> Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        let table = self.table.read().unwrap();
        let mut s = String::new();
        for (p, a) in table.iter() {
            s.push_str(&format!("{} {}\n", p, a));
        }
        fs::write(path, s)?;
        Ok(())
    }

    /// `(p, a_p)` for every prime `p <= bound`.
    pub fn up_to(&self, curve: &WeierstrassCurve, bound: u64) -> Result<Vec<(u64, i64)>> {
        let covered = *self.covered.read().unwrap();
        if bound > covered {
            let mut guard = self.covered.write().unwrap();
            let start = *guard;
            if bound > start {
                let fresh: Vec<u64> = primes_up_to(bound).into_iter().filter(|&p| p > start).collect();
                let values: Vec<(u64, i64)> = fresh
                    .par_iter()
                    .map(|&p| trace_ap(curve, p).map(|a| (p, a)))
                    .collect::<Result<_>>()?;
                {
                    let mut table = self.table.write().unwrap();
                    table.extend(values.iter().copied());
                }
                if let Some(path) = &self.path {
                    let mut f = OpenOptions::new().append(true).create(true).open(path)?;
                    let mut s = String::new();
                    for (p, a) in &values {
                        s.push_str(&format!("{} {}\n", p, a));
                    }
                    f.write_all(s.as_bytes())?;
                }
                *guard = bound;
            }
        }
        let table = self.table.read().unwrap();
        Ok(table.range(..=bound).map(|(&p, &a)| (p, a)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let e = WeierstrassCurve::eleven_a1();
        assert_eq!(count_points(&e, 2, 1).unwrap(), 5);
        assert_eq!(count_points(&e, 3, 1).unwrap(), 5);
        assert_eq!(count_points(&e, 11, 1).unwrap(), 10);
        assert_eq!(trace_ap(&e, 7).unwrap(), -2);
    }

    #[test]
    fn budget_enforced() {
        let e = WeierstrassCurve::eleven_a1();
        assert!(matches!(count_points(&e, 101, 4), Err(Error::Resource(_))));
    }

    #[test]
    fn cache_persists() {
        let dir = std::env::temp_dir().join(format!("ebsd-ap-test-{}", std::process::id()));
        let e = WeierstrassCurve::eleven_a1();
        let a = ApCache::persistent(&e, &dir).unwrap().up_to(&e, 200).unwrap();
        let b = ApCache::persistent(&e, &dir).unwrap().up_to(&e, 100).unwrap();
        assert_eq!(&a[..b.len()], &b[..]);
        let text = fs::read_to_string(dir.join(ApCache::file_name(&e))).unwrap();
        assert!(text.starts_with("2 -2\n3 -1\n5 1\n7 -2\n11 1\n"));
        fs::remove_dir_all(dir).ok();
    }
}
