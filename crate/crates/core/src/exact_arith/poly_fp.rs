//! Dense univariate polynomials over a prime field and their factorisation.

use std::fmt;

use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{mod_inv, Rational};
use crate::error::{domain, Result};

/// Polynomial over `F_p`, little-endian, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: &[i64]) -> FpPoly {
        let c = coeffs.iter().map(|&a| a.rem_euclid(p as i64) as u64).collect();
        FpPoly { p, c }.trimmed()
    }

    pub fn from_u64(p: u64, c: Vec<u64>) -> FpPoly {
        FpPoly { p, c: c.into_iter().map(|a| a % p).collect() }.trimmed()
    }

    /// Reduction of an integral rational polynomial; `None` if a denominator is divisible by `p`.
    pub fn from_rationals(p: u64, coeffs: &[Rational]) -> Option<FpPoly> {
        let mut c = Vec::with_capacity(coeffs.len());
        for q in coeffs {
            let n = (q.numer() % num_bigint::BigInt::from(p)).to_i64().unwrap();
            let d = (q.denom() % num_bigint::BigInt::from(p)).to_i64().unwrap();
            let di = mod_inv(d, p as i64)?;
            c.push(((n.rem_euclid(p as i64) * di) % p as i64) as u64);
        }
        Some(FpPoly { p, c }.trimmed())
    }

    pub fn zero(p: u64) -> FpPoly {
        FpPoly { p, c: vec![] }
    }

    pub fn one(p: u64) -> FpPoly {
        FpPoly { p, c: vec![1 % p] }.trimmed()
    }

    pub fn x(p: u64) -> FpPoly {
        FpPoly { p, c: vec![0, 1] }
    }

    fn trimmed(mut self) -> FpPoly {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    /// Degree, with `-1` for zero.
    pub fn degree(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    fn inv(&self, a: u64) -> u64 {
        mod_inv(a as i64, self.p as i64).expect("unit") as u64
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let li = self.inv(self.lead());
        self.scale(li)
    }

    pub fn scale(&self, k: u64) -> FpPoly {
        let p = self.p;
        FpPoly { p, c: self.c.iter().map(|&a| a * (k % p) % p).collect() }.trimmed()
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).copied().unwrap_or(0) + o.c.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        FpPoly { p: self.p, c }.trimmed()
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        let c = (0..n)
            .map(|i| (self.c.get(i).copied().unwrap_or(0) + p - o.c.get(i).copied().unwrap_or(0)) % p)
            .collect();
        FpPoly { p, c }.trimmed()
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % p;
            }
        }
        FpPoly { p, c }.trimmed()
    }

    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let p = self.p;
        let mut r = self.c.clone();
        let dd = d.c.len();
        if r.len() < dd {
            return (FpPoly::zero(p), self.clone());
        }
        let li = self.inv(d.lead());
        let mut q = vec![0u64; r.len() - dd + 1];
        for i in (0..q.len()).rev() {
            let coef = r[i + dd - 1] * li % p;
            q[i] = coef;
            if coef != 0 {
                for j in 0..dd {
                    r[i + j] = (r[i + j] + p - coef * d.c[j] % p) % p;
                }
            }
        }
        (FpPoly { p, c: q }.trimmed(), FpPoly { p, c: r }.trimmed())
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        let c = self.c.iter().enumerate().skip(1).map(|(i, &a)| (i as u64 % p) * a % p).collect();
        FpPoly { p, c }.trimmed()
    }

    pub fn powmod(&self, mut e: u128, m: &FpPoly) -> FpPoly {
        let mut result = FpPoly::one(self.p).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        result
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, &a| (acc * x + a) % self.p)
    }

    /// Irreducibility via distinct-degree factorisation.
    pub fn is_irreducible(&self) -> bool {
        if self.degree() < 1 {
            return false;
        }
        let f = self.monic();
        match poly_factor_mod_p(&f) {
            Ok(fs) => fs.len() == 1 && fs[0].1 == 1,
            Err(_) => false,
        }
    }

    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        let c = self.c.iter().step_by(p).copied().collect();
        FpPoly { p: self.p, c }.trimmed()
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{}", i),
            };
            terms.push(match (a, i) {
                (_, 0) => a.to_string(),
                (1, _) => mono,
                _ => format!("{}*{}", a, mono),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

fn squarefree(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    let fd = f.derivative();
    let mut c = f.gcd(&fd);
    let mut w = f.divrem(&c).0.monic();
    let mut i = 1;
    while !w.is_one() && w.degree() > 0 {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).0.monic();
        if fac.degree() > 0 {
            out.push((fac, i));
        }
        w = y;
        c = c.divrem(&w).0.monic();
        i += 1;
    }
    if c.degree() > 0 {
        let root = c.pth_root();
        for (g, m) in squarefree(&root) {
            out.push((g, m * p as u32));
        }
    }
    out
}

fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let x = FpPoly::x(p);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.degree() >= 2 * d as i64 {
        h = h.powmod(p as u128, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.degree() > 0 {
            out.push((g.clone(), d));
            rest = rest.divrem(&g).0.monic();
            h = h.rem(&rest);
        }
        d += 1;
    }
    if rest.degree() > 0 {
        out.push((rest.clone(), rest.degree() as u32));
    }
    out
}

fn equal_degree(f: &FpPoly, d: u32, rng: &mut StdRng) -> Vec<FpPoly> {
    let p = f.p;
    let n = f.degree() as u32;
    if n == d {
        return vec![f.clone()];
    }
    loop {
        let a = FpPoly::from_u64(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree() < 1 {
            continue;
        }
        let b = if p == 2 {
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = ((p as u128).pow(d) - 1) / 2;
            a.powmod(e, f).sub(&FpPoly::one(p))
        };
        let g = b.gcd(f);
        if g.degree() > 0 && g.degree() < f.degree() {
            let h = f.divrem(&g).0.monic();
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
pub fn poly_factor_mod_p(f: &FpPoly) -> Result<Vec<(FpPoly, u32)>> {
    if f.is_zero() {
        return domain("cannot factor the zero polynomial");
    }
    if !super::is_prime(f.p) {
        return domain(format!("modulus {} is not prime", f.p));
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0000 ^ f.p);
    let mut out = Vec::new();
    for (g, m) in squarefree(&f.monic()) {
        for (h, d) in distinct_degree(&g) {
            for k in equal_degree(&h, d, &mut rng) {
                out.push((k, m));
            }
        }
    }
    out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then(a.0.c.cmp(&b.0.c)));
    Ok(out)
}

/// Discriminant of a cubic `c0 + c1 x + c2 x^2 + c3 x^3`.
pub fn poly_discriminant(coeffs: &[Rational]) -> Result<Rational> {
    use num_traits::Zero;
    if coeffs.len() != 4 || coeffs[3].is_zero() {
        return domain("discriminant implemented for cubics only");
    }
    let a = &coeffs[3];
    let b = &coeffs[2];
    let c = &coeffs[1];
    let d = &coeffs[0];
    let k = |n: i64| Rational::from_integer(n.into());
    Ok(b * b * c * c - k(4) * a * c * c * c - k(4) * b * b * b * d - k(27) * a * a * d * d
        + k(18) * a * b * c * d)
}
