//! Weierstrass curves over Q: reduction data, point counts over finite
//! fields, Frobenius traces, torsion and real periods.

mod counting;
mod periods;
mod points;

pub use counting::{count_points, trace_ap, ApCache, COUNT_BUDGET};
pub use periods::{real_periods, LatticeShape, PeriodPair};
pub use points::{torsion_bound, Point};

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::config::{parse_list, KeyValues};
use crate::error::{Error, Result};
use crate::exact_arith::{factorize, int_valuation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ReductionKind {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ReductionKind::Good => "good",
            ReductionKind::SplitMultiplicative => "split",
            ReductionKind::NonsplitMultiplicative => "nonsplit",
            ReductionKind::Additive => "additive",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionInfo {
    pub p: u64,
    pub kind: ReductionKind,
    pub tamagawa: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
    pub conductor: u64,
    pub label: String,
    /// Configured reduction type and Tamagawa number at each bad prime.
    pub bad: BTreeMap<u64, ReductionInfo>,
}

impl WeierstrassCurve {
    /// Curve with the given coefficients; bad-prime data must be attached by the caller
    /// or come from a config file.
    pub fn new(a: [i64; 5], conductor: u64, label: &str) -> WeierstrassCurve {
        WeierstrassCurve {
            a1: a[0],
            a2: a[1],
            a3: a[2],
            a4: a[3],
            a6: a[4],
            conductor,
            label: label.to_string(),
            bad: BTreeMap::new(),
        }
    }

    /// `y^2 + y = x^3 - x^2 - 10x - 20` with split multiplicative reduction and `c_11 = 5`.
    pub fn eleven_a1() -> WeierstrassCurve {
        let mut e = WeierstrassCurve::new([0, -1, 1, -10, -20], 11, "11A1");
        e.bad.insert(11, ReductionInfo { p: 11, kind: ReductionKind::SplitMultiplicative, tamagawa: 5 });
        e
    }

    pub fn from_config(kv: &KeyValues) -> Result<WeierstrassCurve> {
        let coeffs: Vec<i64> = if let Some(v) = kv.get("a1,a2,a3,a4,a6") {
            parse_list(v).ok_or_else(|| Error::Config(format!("{}: bad coefficient list", kv.source)))?
        } else {
            ["a1", "a2", "a3", "a4", "a6"].iter().map(|k| kv.parse_value(k)).collect::<Result<_>>()?
        };
        if coeffs.len() != 5 {
            return Err(Error::Config(format!("{}: expected five coefficients", kv.source)));
        }
        let conductor: u64 = kv.parse_value("conductor")?;
        let label = kv.get("label").unwrap_or("").to_string();
        let mut e = WeierstrassCurve::new([coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4]], conductor, &label);
        for (p, v) in kv.with_prefix("reduction") {
            let p: u64 = p.parse().map_err(|_| Error::Config(format!("bad prime in reduction.{}", p)))?;
            let kind = match v {
                "split" => ReductionKind::SplitMultiplicative,
                "nonsplit" => ReductionKind::NonsplitMultiplicative,
                "additive" => ReductionKind::Additive,
                _ => return Err(Error::Config(format!("reduction.{}: unknown kind `{}`", p, v))),
            };
            let tamagawa: u64 = kv.parse_value(&format!("tamagawa.{}", p))?;
            e.bad.insert(p, ReductionInfo { p, kind, tamagawa });
        }
        e.validate()?;
        Ok(e)
    }

    pub fn load(path: &Path) -> Result<WeierstrassCurve> {
        WeierstrassCurve::from_config(&KeyValues::load(path)?)
    }

    pub fn coefficients(&self) -> [i64; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a6]
    }

    pub fn b_invariants(&self) -> [BigInt; 4] {
        let [a1, a2, a3, a4, a6] = self.coefficients().map(BigInt::from);
        let b2 = &a1 * &a1 + 4 * &a2;
        let b4 = 2 * &a4 + &a1 * &a3;
        let b6 = &a3 * &a3 + 4 * &a6;
        let b8 = &a1 * &a1 * &a6 + 4 * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
        [b2, b4, b6, b8]
    }

    pub fn c4(&self) -> BigInt {
        let [b2, b4, _, _] = self.b_invariants();
        &b2 * &b2 - 24 * &b4
    }

    pub fn c6(&self) -> BigInt {
        let [b2, b4, b6, _] = self.b_invariants();
        -&b2 * &b2 * &b2 + 36 * &b2 * &b4 - 216 * &b6
    }

    pub fn discriminant(&self) -> BigInt {
        let [b2, b4, b6, b8] = self.b_invariants();
        -&b2 * &b2 * &b8 - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }

    pub fn is_bad(&self, p: u64) -> bool {
        (self.discriminant() % BigInt::from(p)).is_zero()
    }

    pub fn reduction(&self, p: u64) -> ReductionInfo {
        if let Some(r) = self.bad.get(&p) {
            return *r;
        }
        if self.is_bad(p) {
            // bad prime without configured data: classify from the point count
            let n = count_points(self, p, 1).unwrap_or(p);
            let kind = if n + 1 == p {
                ReductionKind::SplitMultiplicative
            } else if n == p + 1 {
                ReductionKind::NonsplitMultiplicative
            } else {
                ReductionKind::Additive
            };
            return ReductionInfo { p, kind, tamagawa: 0 };
        }
        ReductionInfo { p, kind: ReductionKind::Good, tamagawa: 1 }
    }

    /// Checks nonsingularity, the bad-prime set against the conductor, and every
    /// configured reduction type and Tamagawa number that can be checked cheaply.
    pub fn validate(&self) -> Result<()> {
        let fail = |detail: String| Err(Error::Validation { hypothesis: "curve".into(), detail });
        let disc = self.discriminant();
        if disc.is_zero() {
            return fail("singular Weierstrass equation".into());
        }
        let Some(d) = disc.abs().to_u64() else {
            return fail("discriminant too large for trial division".into());
        };
        let disc_primes: Vec<u64> = factorize(d).into_iter().map(|(p, _)| p).collect();
        let cond_primes: Vec<u64> = factorize(self.conductor).into_iter().map(|(p, _)| p).collect();
        if disc_primes != cond_primes {
            return fail(format!(
                "primes dividing the discriminant {:?} differ from those dividing the conductor {:?}",
                disc_primes, cond_primes
            ));
        }
        let configured: Vec<u64> = self.bad.keys().copied().collect();
        if configured != cond_primes {
            return fail(format!("reduction data given for {:?}, bad primes are {:?}", configured, cond_primes));
        }
        for (&p, info) in &self.bad {
            let vn = int_valuation(&BigInt::from(self.conductor), p);
            let vd = int_valuation(&disc, p) as u64;
            let n = count_points(self, p, 1)?;
            let multiplicative = !(self.c4() % BigInt::from(p)).is_zero();
            let observed = if !multiplicative {
                ReductionKind::Additive
            } else if n + 1 == p {
                ReductionKind::SplitMultiplicative
            } else {
                ReductionKind::NonsplitMultiplicative
            };
            if observed != info.kind {
                return fail(format!("reduction at {} is {}, configured {}", p, observed, info.kind));
            }
            let ok = match info.kind {
                ReductionKind::SplitMultiplicative => vn == 1 && info.tamagawa == vd,
                ReductionKind::NonsplitMultiplicative => vn == 1 && info.tamagawa == if vd % 2 == 0 { 2 } else { 1 },
                ReductionKind::Additive => vn >= 2 && (1..=4).contains(&info.tamagawa),
                ReductionKind::Good => false,
            };
            if !ok {
                return fail(format!(
                    "conductor exponent {} or Tamagawa number {} inconsistent with {} reduction at {} (v(disc) = {})",
                    vn, info.tamagawa, info.kind, p, vd
                ));
            }
        }
        Ok(())
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{},{},{},{},{}]", self.label, self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}
