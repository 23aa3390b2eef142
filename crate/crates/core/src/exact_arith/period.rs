//! Period expressions `q * Omega_+^a * (Omega_-/i)^b * sqrt(D)^c` and their
//! recognition from certified numerical approximations.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::real::{Mag, Real};
use super::{pow_rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodValue {
    pub q: Rational,
    pub a: i32,
    pub b: i32,
    pub c: u8,
    pub d: u64,
}

impl PeriodValue {
    pub fn new(q: Rational, a: i32, b: i32, c: i64, d: u64) -> PeriodValue {
        let mut q = q;
        let cc = c.rem_euclid(2) as u8;
        let folds = (c - cc as i64) / 2;
        q *= pow_rat(&Rational::from_integer(BigInt::from(d)), folds);
        PeriodValue { q, a, b, c: cc, d }
    }

    pub fn rational(q: Rational, d: u64) -> PeriodValue {
        PeriodValue::new(q, 0, 0, 0, d)
    }

    pub fn mul(&self, o: &PeriodValue) -> PeriodValue {
        assert_eq!(self.d, o.d, "period values over different square roots");
        PeriodValue::new(&self.q * &o.q, self.a + o.a, self.b + o.b, self.c as i64 + o.c as i64, self.d)
    }

    pub fn inv(&self) -> PeriodValue {
        PeriodValue::new(self.q.recip(), -self.a, -self.b, -(self.c as i64), self.d)
    }

    pub fn evaluate(&self, basis: &PeriodBasis) -> Real {
        let prec = basis.omega_plus.prec();
        let mut v = Real::from_rational(&self.q, prec);
        v = &v * &basis.omega_plus.powi(self.a as i64);
        v = &v * &basis.omega_minus_over_i.powi(self.b as i64);
        if self.c == 1 {
            v = &v * &basis.sqrt_d;
        }
        v
    }
}

impl fmt::Display for PeriodValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = super::fmt_rational(&self.q);
        if self.a != 0 {
            s.push_str(&format!(" * Omega+^{}", self.a));
        }
        if self.b != 0 {
            s.push_str(&format!(" * (Omega-/i)^{}", self.b));
        }
        if self.c == 1 {
            s.push_str(&format!(" * sqrt({})", self.d));
        }
        write!(f, "{}", s)
    }
}

impl Serialize for PeriodValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PeriodValue {
    fn deserialize<D: serde::Deserializer<'de>>(_d: D) -> Result<PeriodValue, D::Error> {
        Err(serde::de::Error::custom("period values are output only"))
    }
}

#[derive(Clone, Debug)]
pub struct PeriodBasis {
    pub omega_plus: Real,
    pub omega_minus_over_i: Real,
    pub d: u64,
    pub sqrt_d: Real,
}

impl PeriodBasis {
    pub fn new(omega_plus: Real, omega_minus_over_i: Real, d: u64) -> PeriodBasis {
        let sqrt_d = Real::from_int(d, omega_plus.prec()).sqrt();
        PeriodBasis { omega_plus, omega_minus_over_i, d, sqrt_d }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Recognition {
    Found(PeriodValue),
    NotFound,
    Ambiguous(Vec<PeriodValue>),
}

/// Rational of height at most `height` within `tol * max(1, |y|)` of every point of `y`.
pub fn recognize_rational(y: &Real, height: u64, tol: f64) -> Option<Rational> {
    if !y.is_finite() {
        return None;
    }
    let h = BigInt::from(height);
    let x = y.mid_rational();
    let scale = y.mag_up().to_f64().max(1.0);
    let bound = tol * scale;
    if y.rad().to_f64() > bound {
        return None;
    }
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut r = x.clone();
    for _ in 0..200 {
        let a = r.floor().to_integer();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > h || p2.abs() > h {
            break;
        }
        let cand = Rational::new(p2.clone(), q2.clone());
        let diff = y - &Real::from_rational(&cand, y.prec());
        if diff.mag_up().le(&Mag::from_f64(bound)) {
            return Some(cand);
        }
        let frac = &r - Rational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        r = frac.recip();
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    None
}

/// Searches exponents `a, b` in `[-2, 2]` and `c` in `{0, 1}` for a rational `q` of height
/// at most `height` with `x = q * Omega_+^a * (Omega_-/i)^b * sqrt(D)^c`.
pub fn recognize_period_value(x: &Real, basis: &PeriodBasis, height: u64) -> Recognition {
    let digits = (x.prec() as f64 * std::f64::consts::LOG10_2).floor();
    let tol = 10f64.powf(-(digits - 10.0));
    if x.contains_zero() {
        return Recognition::NotFound;
    }
    let mut found = Vec::new();
    for a in -2..=2 {
        for b in -2..=2 {
            for c in 0..=1 {
                let probe = PeriodValue::new(Rational::one(), a, b, c, basis.d);
                let y = x / &probe.evaluate(basis);
                if let Some(q) = recognize_rational(&y, height, tol) {
                    if !q.is_zero() {
                        found.push(PeriodValue::new(q, a, b, c, basis.d));
                    }
                }
            }
        }
    }
    match found.len() {
        0 => Recognition::NotFound,
        1 => Recognition::Found(found.pop().unwrap()),
        _ => Recognition::Ambiguous(found),
    }
}
