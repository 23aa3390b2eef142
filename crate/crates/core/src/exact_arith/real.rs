//! Certified ball arithmetic over arbitrary-precision binary mantissas.
//!
//! A [`Real`] is a midpoint `mid * 2^exp` together with a radius `rad`; every
//! operation returns a ball that contains the exact result for every choice of
//! inputs inside the argument balls.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const UP: f64 = 1.0 + 8.0 * f64::EPSILON;
const DOWN: f64 = 1.0 - 8.0 * f64::EPSILON;

fn frexp(x: f64) -> (f64, i64) {
    let bits = x.to_bits();
    let e = ((bits >> 52) & 0x7ff) as i64;
    if e == 0 {
        let (f, k) = frexp(x * 2f64.powi(64));
        return (f, k - 64);
    }
    let f = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (f, e - 1022)
}

/// Upper bound `m * 2^e` on a nonnegative quantity, `m` in `[1, 2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mag {
    m: f64,
    e: i64,
}

impl Mag {
    pub const ZERO: Mag = Mag { m: 0.0, e: 0 };
    pub const INF: Mag = Mag { m: f64::INFINITY, e: 0 };

    fn norm(m: f64, e: i64) -> Mag {
        if m.is_nan() || m.is_infinite() {
            return Mag::INF;
        }
        if m <= 0.0 {
            return Mag::ZERO;
        }
        let (f, k) = frexp(m);
        Mag { m: f * 2.0, e: e + k - 1 }
    }

    pub fn pow2(e: i64) -> Mag {
        Mag { m: 1.0, e }
    }

    pub fn from_f64(x: f64) -> Mag {
        Mag::norm(x.abs() * UP, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.m == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.m.is_finite()
    }

    /// Floor of log2, or `i64::MIN` for zero.
    pub fn log2_floor(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.e
        }
    }

    pub fn from_bigint_up(x: &BigInt) -> Mag {
        let n = x.bits() as i64;
        if n == 0 {
            return Mag::ZERO;
        }
        if n <= 53 {
            return Mag::norm(x.abs().to_f64().unwrap() * UP, 0);
        }
        let top = (x.abs() >> (n - 53) as usize).to_f64().unwrap() + 1.0;
        Mag::norm(top * UP, n - 53)
    }

    pub fn from_bigint_down(x: &BigInt) -> Mag {
        let n = x.bits() as i64;
        if n == 0 {
            return Mag::ZERO;
        }
        if n <= 53 {
            return Mag::norm(x.abs().to_f64().unwrap() * DOWN, 0);
        }
        let top = (x.abs() >> (n - 53) as usize).to_f64().unwrap();
        Mag::norm(top * DOWN, n - 53)
    }

    pub fn add(self, o: Mag) -> Mag {
        if !self.is_finite() || !o.is_finite() {
            return Mag::INF;
        }
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (hi, lo) = if self.e >= o.e { (self, o) } else { (o, self) };
        let d = hi.e - lo.e;
        let v = if d > 60 {
            hi.m + 2f64.powi(-58)
        } else {
            hi.m + lo.m * 2f64.powi(-(d as i32))
        };
        Mag::norm(v * UP, hi.e)
    }

    pub fn mul(self, o: Mag) -> Mag {
        if !self.is_finite() || !o.is_finite() {
            return Mag::INF;
        }
        if self.is_zero() || o.is_zero() {
            return Mag::ZERO;
        }
        Mag::norm(self.m * o.m * UP, self.e + o.e)
    }

    /// Upper bound on `self / o` given a lower bound `o`.
    pub fn div_lower(self, o: Mag) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        if o.is_zero() || !self.is_finite() {
            return Mag::INF;
        }
        if !o.is_finite() {
            return Mag::ZERO;
        }
        Mag::norm(self.m / o.m * UP, self.e - o.e)
    }

    pub fn sqrt(self) -> Mag {
        if self.is_zero() || !self.is_finite() {
            return self;
        }
        let (m, e) = if self.e.rem_euclid(2) == 1 { (self.m * 2.0, self.e - 1) } else { (self.m, self.e) };
        Mag::norm(m.sqrt() * UP, e / 2)
    }

    pub fn mul_2exp(self, k: i64) -> Mag {
        if self.is_zero() || !self.is_finite() {
            return self;
        }
        Mag { m: self.m, e: self.e + k }
    }

    /// Lower bound on `self - o` when `self` is a lower bound and `o` an upper bound.
    pub fn sub_lower(self, o: Mag) -> Mag {
        if o.is_zero() {
            return self;
        }
        if self.is_zero() || !o.is_finite() || cmp_mag(&self, &o) != Ordering::Greater {
            return Mag::ZERO;
        }
        let d = self.e - o.e;
        let v = if d > 60 { self.m - 2f64.powi(-58) } else { self.m - o.m * 2f64.powi(-(d as i32)) };
        Mag::norm(v * DOWN, self.e)
    }

    pub fn to_f64(self) -> f64 {
        if !self.is_finite() {
            return f64::INFINITY;
        }
        if self.e > 1023 {
            return f64::INFINITY;
        }
        if self.e < -1074 {
            return 0.0;
        }
        self.m * 2f64.powi(self.e as i32)
    }

    pub fn max(self, o: Mag) -> Mag {
        if cmp_mag(&self, &o) == Ordering::Less {
            o
        } else {
            self
        }
    }

    pub fn le(&self, o: &Mag) -> bool {
        cmp_mag(self, o) != Ordering::Greater
    }
}

fn cmp_mag(a: &Mag, b: &Mag) -> Ordering {
    match (a.is_finite(), b.is_finite()) {
        (false, false) => return Ordering::Equal,
        (false, true) => return Ordering::Greater,
        (true, false) => return Ordering::Less,
        _ => {}
    }
    match (a.is_zero(), b.is_zero()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => a.e.cmp(&b.e).then(a.m.partial_cmp(&b.m).unwrap()),
    }
}

/// A ball `[mid*2^exp - rad, mid*2^exp + rad]` carried at `prec` bits.
#[derive(Clone, Debug)]
pub struct Real {
    mid: BigInt,
    exp: i64,
    rad: Mag,
    prec: u32,
}

impl Real {
    pub fn zero(prec: u32) -> Real {
        Real { mid: BigInt::zero(), exp: 0, rad: Mag::ZERO, prec }
    }

    pub fn one(prec: u32) -> Real {
        Real::from_int(1, prec)
    }

    pub fn from_int(x: impl Into<BigInt>, prec: u32) -> Real {
        Real { mid: x.into(), exp: 0, rad: Mag::ZERO, prec }.normalized()
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Real {
        let (n, d) = (q.numer(), q.denom());
        if d.is_one() {
            return Real::from_int(n.clone(), prec);
        }
        let k = (prec as i64 + 4 + d.bits() as i64 - n.bits() as i64).max(0);
        let (quo, rem) = (n << k as usize).div_rem(d);
        let rad = if rem.is_zero() { Mag::ZERO } else { Mag::pow2(-k) };
        Real { mid: quo, exp: -k, rad, prec }.normalized()
    }

    pub fn from_ratio(n: i64, d: i64, prec: u32) -> Real {
        Real::from_rational(&BigRational::new(n.into(), d.into()), prec)
    }

    /// Exact value of a finite `f64`.
    pub fn from_f64(x: f64, prec: u32) -> Real {
        let q = BigRational::from_float(x).expect("finite float");
        Real::from_rational(&q, prec)
    }

    /// Parses `[-]digits[.digits][e[-]exp]` exactly and rounds to `prec`.
    pub fn from_decimal_str(s: &str, prec: u32) -> Real {
        Real::from_rational(&parse_decimal(s).expect("malformed decimal literal"), prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn mid_mag(&self) -> Mag {
        Mag::from_bigint_up(&self.mid).mul_2exp(self.exp)
    }

    /// Upper bound on `|x|` over the ball.
    pub fn mag_up(&self) -> Mag {
        self.mid_mag().add(self.rad)
    }

    /// Lower bound on `|x|` over the ball.
    pub fn mag_low(&self) -> Mag {
        Mag::from_bigint_down(&self.mid).mul_2exp(self.exp).sub_lower(self.rad)
    }

    pub fn is_finite(&self) -> bool {
        self.rad.is_finite()
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.mag_low().is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mid.is_positive() && !self.contains_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mid.is_negative() && !self.contains_zero()
    }

    /// Midpoint as an exact rational.
    pub fn mid_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mid << self.exp as usize)
        } else {
            BigRational::new(self.mid.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let n = self.mid.bits() as i64;
        if n == 0 {
            return 0.0;
        }
        let sh = (n - 60).max(0);
        let top = (&self.mid >> sh as usize).to_f64().unwrap();
        let e = self.exp + sh;
        if e > 2000 {
            return if top > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if e < -2000 {
            return 0.0;
        }
        top * 2f64.powi(e as i32)
    }

    /// Radius as `f64` (rounded up, may be `inf`).
    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64()
    }

    /// Number of correct bits relative to the magnitude (crude).
    pub fn rel_accuracy_bits(&self) -> i64 {
        if self.rad.is_zero() {
            return i64::MAX;
        }
        if !self.rad.is_finite() || self.mid.is_zero() {
            return i64::MIN;
        }
        self.mid.bits() as i64 + self.exp - self.rad.e - 1
    }

    pub fn with_prec(&self, prec: u32) -> Real {
        Real { mid: self.mid.clone(), exp: self.exp, rad: self.rad, prec }.normalized()
    }

    /// The centre of the ball as an exact value.
    pub fn midpoint(&self) -> Real {
        Real { mid: self.mid.clone(), exp: self.exp, rad: Mag::ZERO, prec: self.prec }
    }

    pub fn add_error(&self, err: Mag) -> Real {
        Real { mid: self.mid.clone(), exp: self.exp, rad: self.rad.add(err), prec: self.prec }
    }

    /// Ball containing both arguments.
    pub fn hull(a: &Real, b: &Real) -> Real {
        let mid = (a + b).mul_2exp(-1);
        let half = (a - b).mul_2exp(-1).mag_up();
        let r = half.add(a.rad.max(b.rad));
        Real { rad: r, ..mid.midpoint_only() }
    }

    fn midpoint_only(&self) -> Real {
        Real { mid: self.mid.clone(), exp: self.exp, rad: Mag::ZERO, prec: self.prec }
    }

    fn normalized(mut self) -> Real {
        if self.mid.is_zero() {
            self.exp = 0;
            return self;
        }
        let bits = self.mid.bits() as i64;
        let mut sh = bits - self.prec as i64;
        if self.rad.is_finite() && !self.rad.is_zero() {
            sh = sh.max(self.rad.e - 40 - self.exp);
        }
        if sh > 0 {
            if sh >= bits {
                let m = self.mid_mag();
                return Real { mid: BigInt::zero(), exp: 0, rad: self.rad.add(m), prec: self.prec };
            }
            self.mid >>= sh as usize;
            self.exp += sh;
            self.rad = self.rad.add(Mag::pow2(self.exp));
        }
        self
    }

    pub fn neg(&self) -> Real {
        Real { mid: -&self.mid, exp: self.exp, rad: self.rad, prec: self.prec }
    }

    pub fn abs(&self) -> Real {
        Real { mid: self.mid.abs(), exp: self.exp, rad: self.rad, prec: self.prec }
    }

    pub fn mul_2exp(&self, k: i64) -> Real {
        Real { mid: self.mid.clone(), exp: self.exp + k, rad: self.rad.mul_2exp(k), prec: self.prec }
    }

    fn add_impl(a: &Real, b: &Real) -> Real {
        let prec = a.prec.max(b.prec);
        if b.mid.is_zero() {
            return Real { mid: a.mid.clone(), exp: a.exp, rad: a.rad.add(b.rad), prec }.normalized();
        }
        if a.mid.is_zero() {
            return Real { mid: b.mid.clone(), exp: b.exp, rad: a.rad.add(b.rad), prec }.normalized();
        }
        let top_a = a.exp + a.mid.bits() as i64;
        let top_b = b.exp + b.mid.bits() as i64;
        if top_b < top_a - prec as i64 - 4 {
            return Real { mid: a.mid.clone(), exp: a.exp, rad: a.rad.add(b.rad).add(b.mid_mag()), prec }
                .normalized();
        }
        if top_a < top_b - prec as i64 - 4 {
            return Real { mid: b.mid.clone(), exp: b.exp, rad: a.rad.add(b.rad).add(a.mid_mag()), prec }
                .normalized();
        }
        let e = a.exp.min(b.exp);
        let mid = (&a.mid << (a.exp - e) as usize) + (&b.mid << (b.exp - e) as usize);
        Real { mid, exp: e, rad: a.rad.add(b.rad), prec }.normalized()
    }

    fn mul_impl(a: &Real, b: &Real) -> Real {
        let prec = a.prec.max(b.prec);
        let rad = a.mid_mag().mul(b.rad).add(b.mid_mag().mul(a.rad)).add(a.rad.mul(b.rad));
        Real { mid: &a.mid * &b.mid, exp: a.exp + b.exp, rad, prec }.normalized()
    }

    fn div_impl(a: &Real, b: &Real) -> Real {
        let prec = a.prec.max(b.prec);
        let blow = b.mag_low();
        if blow.is_zero() {
            return Real { mid: BigInt::zero(), exp: 0, rad: Mag::INF, prec };
        }
        let k = (prec as i64 + 4 + b.mid.bits() as i64 - a.mid.bits() as i64).max(0);
        let (q, r) = (&a.mid << k as usize).div_rem(&b.mid);
        let exp = a.exp - b.exp - k;
        let trunc = if r.is_zero() { Mag::ZERO } else { Mag::pow2(exp) };
        let qmag = Mag::from_bigint_up(&q).add(Mag::from_f64(1.0)).mul_2exp(exp);
        let prop = a.rad.add(qmag.mul(b.rad)).div_lower(blow);
        Real { mid: q, exp, rad: trunc.add(prop), prec }.normalized()
    }

    pub fn mul_int(&self, k: i64) -> Real {
        let rad = self.rad.mul(Mag::from_f64(k as f64));
        Real { mid: &self.mid * k, exp: self.exp, rad, prec: self.prec }.normalized()
    }

    pub fn div_int(&self, k: i64) -> Real {
        assert!(k != 0, "division by zero integer");
        let extra = 64 - (k.unsigned_abs().leading_zeros() as i64);
        let sh = (self.prec as i64 + 4 + extra - self.mid.bits() as i64).max(0);
        let (q, r) = (&self.mid << sh as usize).div_rem(&BigInt::from(k));
        let exp = self.exp - sh;
        let trunc = if r.is_zero() { Mag::ZERO } else { Mag::pow2(exp) };
        let prop = self.rad.div_lower(Mag::norm(k.unsigned_abs() as f64 * DOWN, 0));
        Real { mid: q, exp, rad: trunc.add(prop), prec: self.prec }.normalized()
    }

    pub fn sqr(&self) -> Real {
        self * self
    }

    pub fn inv(&self) -> Real {
        &Real::one(self.prec) / self
    }

    pub fn powi(&self, n: i64) -> Real {
        if n < 0 {
            return self.powi(-n).inv();
        }
        let mut result = Real::one(self.prec);
        let mut base = self.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr();
            }
        }
        result
    }

    pub fn sqrt(&self) -> Real {
        let prec = self.prec;
        if self.mid.is_zero() && self.rad.is_zero() {
            return Real::zero(prec);
        }
        if self.mid.is_negative() || !self.rad.is_finite() {
            return Real { mid: BigInt::zero(), exp: 0, rad: Mag::INF, prec };
        }
        let bits = self.mid.bits() as i64;
        let mut k = (2 * (prec as i64 + 4) - bits).max(0);
        if (self.exp - k).rem_euclid(2) != 0 {
            k += 1;
        }
        let s = (&self.mid << k as usize).sqrt();
        let exp = (self.exp - k) / 2;
        let exact = &s * &s == (&self.mid << k as usize);
        let trunc = if exact { Mag::ZERO } else { Mag::pow2(exp) };
        let prop = if self.rad.is_zero() {
            Mag::ZERO
        } else {
            let low = self.mag_low();
            let a = self.rad.sqrt();
            if low.is_zero() {
                a
            } else {
                let b = self.rad.div_lower(low.sqrt());
                if a.le(&b) {
                    a
                } else {
                    b
                }
            }
        };
        Real { mid: s, exp, rad: trunc.add(prop), prec }.normalized()
    }

    /// Certified comparison: `Some(ordering)` only when the balls are disjoint.
    pub fn cmp_certified(&self, o: &Real) -> Option<Ordering> {
        let d = self - o;
        if d.contains_zero() {
            None
        } else if d.mid.is_positive() {
            Some(Ordering::Greater)
        } else {
            Some(Ordering::Less)
        }
    }

    /// True if `|self - o| <= tol` for every point of both balls.
    pub fn within(&self, o: &Real, tol: f64) -> bool {
        let d = self - o;
        d.mag_up().le(&Mag::from_f64(tol))
    }

    /// Decimal rendering of the midpoint with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let q = self.mid_rational();
        if q.is_zero() {
            return "0".to_string();
        }
        let neg = q.is_negative();
        let q = q.abs();
        let f = self.to_f64().abs();
        let mut e10 = if f > 0.0 && f.is_finite() { f.log10().floor() as i64 } else { 0 };
        let ten = BigInt::from(10);
        let scaled = |e10: i64| -> BigInt {
            let shift = digits as i64 - 1 - e10;
            let v = if shift >= 0 {
                &q * BigRational::from_integer(ten.pow(shift as u32))
            } else {
                &q / BigRational::from_integer(ten.pow((-shift) as u32))
            };
            v.round().to_integer()
        };
        let mut n = scaled(e10);
        if n.to_string().len() > digits {
            e10 += 1;
            n = scaled(e10);
        }
        let s = n.to_string();
        let (head, tail) = s.split_at(1);
        let sign = if neg { "-" } else { "" };
        if tail.is_empty() {
            format!("{}{}e{}", sign, head, e10)
        } else {
            format!("{}{}.{}e{}", sign, head, tail, e10)
        }
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $imp:expr) => {
        impl<'a, 'b> $tr<&'b Real> for &'a Real {
            type Output = Real;
            fn $f(self, o: &'b Real) -> Real {
                $imp(self, o)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $f(self, o: Real) -> Real {
                $imp(&self, &o)
            }
        }
        impl<'b> $tr<&'b Real> for Real {
            type Output = Real;
            fn $f(self, o: &'b Real) -> Real {
                $imp(&self, o)
            }
        }
        impl<'a> $tr<Real> for &'a Real {
            type Output = Real;
            fn $f(self, o: Real) -> Real {
                $imp(self, &o)
            }
        }
    };
}

binop!(Add, add, Real::add_impl);
binop!(Sub, sub, |a: &Real, b: &Real| Real::add_impl(a, &b.neg()));
binop!(Mul, mul, Real::mul_impl);
binop!(Div, div, Real::div_impl);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::neg(&self)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::neg(self)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec as f64) * 0.30103) as usize;
        write!(f, "{} +/- {:.3e}", self.to_decimal(digits.clamp(3, 40)), self.rad_f64())
    }
}

// Constants, cached per precision.

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Const {
    Pi,
    Ln2,
    EulerGamma,
}

fn const_cache() -> &'static Mutex<HashMap<(Const, u32), Real>> {
    static CACHE: OnceLock<Mutex<HashMap<(Const, u32), Real>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(c: Const, prec: u32, build: impl FnOnce(u32) -> Real) -> Real {
    let bucket = prec.div_ceil(64) * 64;
    if let Some(v) = const_cache().lock().unwrap().get(&(c, bucket)) {
        return v.with_prec(prec);
    }
    let v = build(bucket + 16).with_prec(bucket);
    const_cache().lock().unwrap().insert((c, bucket), v.clone());
    v.with_prec(prec)
}

/// `2^w * atan(1/k)` (or `atanh` when `hyperbolic`) in fixed point, with error in ulps.
fn arctan_inv_fixed(k: u64, w: u32, hyperbolic: bool) -> (BigInt, u64) {
    let k2 = BigInt::from(k * k);
    let mut power = (BigInt::one() << w as usize) / k;
    let mut sum = power.clone();
    let mut i: u64 = 1;
    loop {
        power /= &k2;
        if power.is_zero() {
            break;
        }
        let t = &power / (2 * i + 1);
        if !hyperbolic && i % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        i += 1;
    }
    (sum, 2 * i + 2)
}

impl Real {
    pub fn pi(prec: u32) -> Real {
        cached(Const::Pi, prec, |p| {
            let w = p + 24;
            let (a, ea) = arctan_inv_fixed(5, w, false);
            let (b, eb) = arctan_inv_fixed(239, w, false);
            let mid = a * 16 - b * 4;
            let err = (16 * ea + 4 * eb) as f64;
            Real { mid, exp: -(w as i64), rad: Mag::from_f64(err).mul_2exp(-(w as i64)), prec: p }.normalized()
        })
    }

    pub fn ln2(prec: u32) -> Real {
        cached(Const::Ln2, prec, |p| {
            let w = p + 24;
            let (a, ea) = arctan_inv_fixed(3, w, true);
            Real { mid: a * 2, exp: -(w as i64), rad: Mag::from_f64(2.0 * ea as f64).mul_2exp(-(w as i64)), prec: p }
                .normalized()
        })
    }

    /// Euler's constant via the Brent-McMillan formula.
    pub fn euler_gamma(prec: u32) -> Real {
        cached(Const::EulerGamma, prec, |p| {
            let wp = p + 40;
            let n = ((p as f64 + 10.0) * std::f64::consts::LN_2 / 4.0).ceil() as i64 + 1;
            let ln_n = Real::from_int(n, wp).ln();
            let n2 = Real::from_int(n * n, wp);
            let mut u = Real::one(wp);
            let mut h = Real::zero(wp);
            let mut a = -&ln_n;
            let mut b = Real::one(wp);
            let tiny = Mag::pow2(-(wp as i64) - 8);
            let mut k: i64 = 1;
            loop {
                u = (&u * &n2).div_int(k * k);
                h = &h + &Real::one(wp).div_int(k);
                let t = &u * &(&h - &ln_n);
                a = &a + &t;
                b = &b + &u;
                if k > 2 * n && u.mag_up().le(&tiny) {
                    let tail = t.mag_up().add(u.mag_up()).mul_2exp(1);
                    a = a.add_error(tail);
                    b = b.add_error(u.mag_up().mul_2exp(1));
                    break;
                }
                k += 1;
            }
            let trunc = Mag::from_f64(std::f64::consts::PI * (-4.0 * n as f64).exp());
            (&a / &b).add_error(trunc)
        })
    }

    pub fn exp(&self) -> Real {
        let prec = self.prec;
        if !self.is_finite() {
            return self.clone();
        }
        if self.mid.is_zero() && self.rad.is_zero() {
            return Real::one(prec);
        }
        let xf = self.to_f64();
        if xf.abs() > 1e15 {
            return Real { mid: BigInt::zero(), exp: 0, rad: Mag::INF, prec };
        }
        let n = (xf / std::f64::consts::LN_2).round() as i64;
        let nbits = 64 - n.unsigned_abs().leading_zeros() as u32;
        let j: i64 = 8 + (prec as i64 / 64).min(12);
        let wp = prec + 24 + 2 * j as u32 + nbits;
        let r = &self.with_prec(wp) - &Real::ln2(wp + nbits).mul_int(n);
        let y = r.mul_2exp(-j);
        let mut sum = Real::one(wp);
        let mut term = Real::one(wp);
        let tiny = Mag::pow2(-(wp as i64) - 8);
        let mut k = 1;
        loop {
            term = (&term * &y).div_int(k);
            sum = &sum + &term;
            if term.mag_up().le(&tiny) {
                sum = sum.add_error(term.mag_up());
                break;
            }
            k += 1;
        }
        for _ in 0..j {
            sum = sum.sqr();
        }
        sum.mul_2exp(n).with_prec(prec)
    }

    /// Natural logarithm; infinite radius when the ball is not strictly positive.
    pub fn ln(&self) -> Real {
        let prec = self.prec;
        if !self.is_positive() {
            return Real { mid: BigInt::zero(), exp: 0, rad: Mag::INF, prec };
        }
        let k = self.exp + self.mid.bits() as i64;
        let j = 5u32;
        let wp = prec + 24 + 2 * j;
        let mut y = self.with_prec(wp).mul_2exp(-k);
        for _ in 0..j {
            y = y.sqrt();
        }
        let one = Real::one(wp);
        let z = &(&y - &one) / &(&y + &one);
        let z2 = z.sqr();
        let mut pw = z.clone();
        let mut sum = z.clone();
        let tiny = Mag::pow2(-(wp as i64) - 8);
        let mut i = 1;
        loop {
            pw = &pw * &z2;
            let t = pw.div_int(2 * i + 1);
            sum = &sum + &t;
            if t.mag_up().le(&tiny) {
                sum = sum.add_error(t.mag_up().mul_2exp(1));
                break;
            }
            i += 1;
        }
        let lny = sum.mul_2exp(1 + j as i64);
        (&Real::ln2(wp + 64).mul_int(k) + &lny).with_prec(prec)
    }

    /// `(cos x, sin x)`.
    pub fn cos_sin(&self) -> (Real, Real) {
        let prec = self.prec;
        let j: i64 = 10;
        let xf = self.to_f64();
        let turns = (xf / (2.0 * std::f64::consts::PI)).round() as i64;
        let wp = prec + 40 + 2 * j as u32;
        let x = &self.with_prec(wp) - &Real::pi(wp + 64).mul_int(2 * turns);
        let y = x.mul_2exp(-j);
        let y2 = y.sqr();
        let tiny = Mag::pow2(-(wp as i64) - 8);
        let mut c = Real::one(wp);
        let mut s = y.clone();
        let mut tc = Real::one(wp);
        let mut ts = y.clone();
        let mut k: i64 = 1;
        loop {
            tc = (&tc * &y2).div_int(-(2 * k - 1) * (2 * k));
            ts = (&ts * &y2).div_int(-(2 * k) * (2 * k + 1));
            c = &c + &tc;
            s = &s + &ts;
            if tc.mag_up().le(&tiny) && ts.mag_up().le(&tiny) {
                c = c.add_error(tc.mag_up());
                s = s.add_error(ts.mag_up());
                break;
            }
            k += 1;
        }
        for _ in 0..j {
            let s2 = (&s * &c).mul_2exp(1);
            let c2 = &c.sqr() - &s.sqr();
            s = s2;
            c = c2;
        }
        (c.with_prec(prec), s.with_prec(prec))
    }

    /// `self^y` for positive `self`.
    pub fn pow(&self, y: &Real) -> Real {
        (y * &self.ln()).exp()
    }

    /// Arithmetic-geometric mean of two positive balls.
    pub fn agm(a: &Real, b: &Real) -> Real {
        let prec = a.prec.max(b.prec);
        let wp = prec + 32;
        let mut x = a.with_prec(wp);
        let mut y = b.with_prec(wp);
        for _ in 0..(4 * wp) {
            let d = (&x - &y).mid_mag();
            let scale = x.mag_low();
            if d.le(&scale.mul_2exp(-(wp as i64) + 4)) {
                break;
            }
            let nx = (&x + &y).mul_2exp(-1);
            let ny = (&x * &y).sqrt();
            x = nx;
            y = ny;
        }
        Real::hull(&x, &y).with_prec(prec)
    }

    /// `ln Gamma(x)` for a positive ball.
    pub fn ln_gamma(&self) -> Real {
        let prec = self.prec;
        let wp = prec + 40;
        let x0 = (wp as f64) / 8.0 + 10.0;
        let xf = self.to_f64();
        let shift = if xf < x0 { (x0 - xf).ceil() as i64 } else { 0 };
        let x = self.with_prec(wp);
        let mut prod = Real::one(wp);
        for i in 0..shift {
            prod = &prod * &(&x + &Real::from_int(i, wp));
        }
        let y = &x + &Real::from_int(shift, wp);
        let half = Real::from_ratio(1, 2, wp);
        let ln_2pi = (Real::pi(wp).mul_int(2)).ln();
        let mut s = &(&(&y - &half) * &y.ln()) - &y;
        s = &s + &ln_2pi.mul_2exp(-1);
        let yinv = y.inv();
        let yinv2 = yinv.sqr();
        let mut ypow = yinv.clone();
        let tiny = Mag::pow2(-(wp as i64) - 8);
        let mut k = 1usize;
        loop {
            let b = bernoulli(2 * k);
            let c = &b / BigRational::from_integer(BigInt::from((2 * k) * (2 * k - 1)));
            let t = &Real::from_rational(&c, wp) * &ypow;
            if t.mag_up().le(&tiny) {
                s = s.add_error(t.mag_up());
                break;
            }
            s = &s + &t;
            ypow = &ypow * &yinv2;
            k += 1;
            if k > 400 {
                s = s.add_error(Mag::INF);
                break;
            }
        }
        (&s - &prod.ln()).with_prec(prec)
    }

    pub fn gamma(&self) -> Real {
        self.ln_gamma().exp()
    }
}

/// Bernoulli number `B_n` (with `B_1 = -1/2`).
pub fn bernoulli(n: usize) -> BigRational {
    static TABLE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(vec![BigRational::one()]));
    let mut t = table.lock().unwrap();
    while t.len() <= n {
        let m = t.len();
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in t.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        let bm = -acc / BigRational::from_integer(BigInt::from(m + 1));
        t.push(bm);
    }
    t[n].clone()
}

impl PartialEq for Real {
    /// Structural equality of midpoint and radius, not numeric certainty.
    fn eq(&self, o: &Real) -> bool {
        self.mid_rational() == o.mid_rational() && self.rad == o.rad
    }
}

pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    let digits = format!("{}{}", ip, fp);
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut n: BigInt = digits.parse().ok()?;
    if neg {
        n = -n;
    }
    let e = exp - fp.len() as i64;
    let ten = BigInt::from(10);
    Some(if e >= 0 {
        BigRational::from_integer(n * ten.pow(e as u32))
    } else {
        BigRational::new(n, ten.pow((-e) as u32))
    })
}
