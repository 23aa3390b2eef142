//! Extension fields `F_{p^k}` for small `k`, elements stored inline.

use super::poly_fp::FpPoly;
use super::{is_prime, mod_inv};
use crate::error::{domain, Result};

pub const MAX_DEGREE: usize = 6;

/// Coordinates of an element with respect to the power basis of the modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FqElem(pub [u32; MAX_DEGREE]);

#[derive(Clone, Debug)]
pub struct FiniteField {
    pub p: u64,
    pub k: usize,
    /// Monic irreducible modulus, little-endian, length `k + 1`.
    pub modulus: FpPoly,
    pub q: u64,
}

impl FiniteField {
    /// `F_{p^k}` with the lexicographically first monic irreducible modulus.
    pub fn new(p: u64, k: usize) -> Result<FiniteField> {
        if !is_prime(p) || p >= 1 << 31 {
            return domain(format!("characteristic {} must be a prime below 2^31", p));
        }
        if k == 0 || k > MAX_DEGREE {
            return domain(format!("extension degree {} outside 1..={}", k, MAX_DEGREE));
        }
        let q = (p as u128).pow(k as u32);
        if q > u64::MAX as u128 / 4 {
            return domain("field too large");
        }
        let q = q as u64;
        let modulus = if k == 1 {
            FpPoly::x(p)
        } else {
            let mut found = None;
            for idx in 0..q {
                let mut c = Vec::with_capacity(k + 1);
                let mut t = idx;
                for _ in 0..k {
                    c.push(t % p);
                    t /= p;
                }
                c.push(1);
                let f = FpPoly::from_u64(p, c);
                if f.c[0] != 0 && f.is_irreducible() {
                    found = Some(f);
                    break;
                }
            }
            found.expect("an irreducible polynomial of every degree exists")
        };
        Ok(FiniteField { p, k, modulus, q })
    }

    pub fn zero(&self) -> FqElem {
        FqElem([0; MAX_DEGREE])
    }

    pub fn one(&self) -> FqElem {
        self.from_int(1)
    }

    pub fn from_int(&self, a: i64) -> FqElem {
        let mut e = [0u32; MAX_DEGREE];
        e[0] = a.rem_euclid(self.p as i64) as u32;
        FqElem(e)
    }

    /// Element with base-`p` digits of `idx` as coordinates.
    pub fn element(&self, mut idx: u64) -> FqElem {
        let mut e = [0u32; MAX_DEGREE];
        for slot in e.iter_mut().take(self.k) {
            *slot = (idx % self.p) as u32;
            idx /= self.p;
        }
        FqElem(e)
    }

    pub fn index(&self, a: &FqElem) -> u64 {
        a.0[..self.k].iter().rev().fold(0u64, |acc, &c| acc * self.p + c as u64)
    }

    pub fn is_zero(&self, a: &FqElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.p as u32;
        let mut e = [0u32; MAX_DEGREE];
        for i in 0..self.k {
            let s = a.0[i] + b.0[i];
            e[i] = if s >= p { s - p } else { s };
        }
        FqElem(e)
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        let p = self.p as u32;
        let mut e = [0u32; MAX_DEGREE];
        for i in 0..self.k {
            e[i] = if a.0[i] == 0 { 0 } else { p - a.0[i] };
        }
        FqElem(e)
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.p;
        let k = self.k;
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..k {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + a.0[i] as u64 * b.0[j] as u64) % p;
            }
        }
        let m = &self.modulus.c;
        for d in (k..(2 * k).saturating_sub(1)).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for j in 0..k {
                prod[d - k + j] = (prod[d - k + j] + p - c * m[j] % p) % p;
            }
        }
        let mut e = [0u32; MAX_DEGREE];
        for i in 0..k {
            e[i] = prod[i] as u32;
        }
        FqElem(e)
    }

    pub fn scale(&self, a: &FqElem, s: i64) -> FqElem {
        self.mul(a, &self.from_int(s))
    }

    pub fn pow(&self, a: &FqElem, mut e: u128) -> FqElem {
        let mut r = self.one();
        let mut b = *a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            return None;
        }
        if self.k == 1 {
            let i = mod_inv(a.0[0] as i64, self.p as i64)?;
            return Some(self.from_int(i));
        }
        Some(self.pow(a, self.q as u128 - 2))
    }

    /// Absolute trace to `F_p`.
    pub fn trace(&self, a: &FqElem) -> u64 {
        let mut t = *a;
        let mut acc = *a;
        for _ in 1..self.k {
            t = self.pow(&t, self.p as u128);
            acc = self.add(&acc, &t);
        }
        acc.0[0] as u64
    }

    /// Quadratic character (`0`, `1` or `-1`); odd characteristic only.
    pub fn quadratic_character(&self, a: &FqElem) -> i64 {
        if self.is_zero(a) {
            return 0;
        }
        let r = self.pow(a, (self.q as u128 - 1) / 2);
        if r == self.one() {
            1
        } else {
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.q, 9);
        for i in 1..9 {
            let a = f.element(i);
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), f.one());
        }
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let f = FiniteField::new(11, 3).unwrap();
        let a = f.from_int(7);
        assert_eq!(f.pow(&a, 11), a);
        let x = f.element(11);
        assert_ne!(f.pow(&x, 11), x);
        assert_eq!(f.pow(&x, 1331), x);
    }

    #[test]
    fn index_roundtrip() {
        let f = FiniteField::new(5, 3).unwrap();
        for i in [0u64, 1, 17, 124] {
            assert_eq!(f.index(&f.element(i)), i);
        }
    }
}
