//! Exact and certified arithmetic kernel.

mod finite_field;
mod linalg;
mod period;
mod poly_fp;
mod real;
mod roots;

pub use finite_field::{FiniteField, FqElem};
pub use linalg::{det, hnf_rows, inverse, rank, rref, solve_left_kernel, QMatrix};
pub use period::{recognize_period_value, recognize_rational, PeriodBasis, PeriodValue, Recognition};
pub use poly_fp::{poly_discriminant, poly_factor_mod_p, FpPoly};
pub use real::{bernoulli, parse_decimal, Mag, Real};
pub use roots::real_cubic_roots;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Canonical reduced rational with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `v_l(n)` for a nonzero integer.
pub fn int_valuation(n: &BigInt, l: u64) -> u32 {
    let l = BigInt::from(l);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&l);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `v_l(x)`; `None` stands for `+infinity` at zero.
pub fn l_adic_valuation(x: &Rational, l: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(int_valuation(x.numer(), l) as i64 - int_valuation(x.denom(), l) as i64)
}

/// The `l`-power part `l^{v_l(x)}` as a rational.
pub fn l_part(x: &Rational, l: u64) -> Rational {
    let v = l_adic_valuation(x, l).expect("l-part of zero");
    pow_rat(&int(l as i64), v)
}

/// `|x|_l = l^{-v_l(x)}`.
pub fn l_adic_abs(x: &Rational, l: u64) -> Rational {
    match l_adic_valuation(x, l) {
        None => Rational::zero(),
        Some(v) => pow_rat(&int(l as i64), -v),
    }
}

pub fn pow_rat(x: &Rational, e: i64) -> Rational {
    let mut r = Rational::one();
    for _ in 0..e.unsigned_abs() {
        r *= x;
    }
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

/// Prime factorisation by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

pub fn mod_inv(a: i64, m: i64) -> Option<i64> {
    let g = num_integer::Integer::extended_gcd(&a.rem_euclid(m), &m);
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m))
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: i64, p: u64) -> i64 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if mod_pow(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Kronecker symbol `(d/n)` for a discriminant `d` and `n > 0`.
pub fn kronecker(d: i64, n: u64) -> i64 {
    let mut result = 1;
    for (p, e) in factorize(n) {
        let s = if p == 2 {
            if d % 2 == 0 {
                0
            } else if d.rem_euclid(8) == 1 || d.rem_euclid(8) == 7 {
                1
            } else {
                -1
            }
        } else {
            legendre(d, p)
        };
        for _ in 0..e {
            result *= s;
        }
    }
    result
}

pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    } else {
        Some(Rational::from_integer(s.parse().ok()?))
    }
}


