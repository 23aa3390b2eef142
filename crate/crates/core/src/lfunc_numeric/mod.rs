//! Twisted L-functions of the curve over the sextic field: local factors, Dirichlet
//! coefficients and values at `s = 1` from the functional-equation sum.

mod euler;
mod gamma;
mod lvalue;

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::elliptic_curve::{ApCache, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::exact_arith::{primes_up_to, Real};
use crate::number_field::{splitting_type, SexticField};
use crate::s3_algebra::Character;

pub use euler::{
    artin_conductor, artin_factorization_check, conductor, conductor_discriminant_check, twist_euler_factor, ArtinCheck,
    EulerFactor,
};
pub use gamma::{bessel_k0, bessel_k1, GammaTransform};
pub use lvalue::{lvalue, lvalue_truncated, required_cutoff, sign_determination, tail_bound, LValue, SignCheck};

/// Completed L-function `Lhat(s) = A^s gamma(s) L(s)` with `Lhat(s) = w Lhat(2 - s)`.
#[derive(Clone, Debug, Serialize)]
pub struct LSeriesSpec {
    pub eta: Character,
    pub degree: u32,
    pub conductor: u64,
    /// `None` until fixed by [`sign_determination`] or by the caller.
    pub sign: Option<i32>,
    #[serde(skip)]
    coefficients: Vec<i64>,
}

impl LSeriesSpec {
    /// `L(E (x) eta, s)` with coefficients up to `cutoff`.
    pub fn twist(
        curve: &WeierstrassCurve,
        field: &SexticField,
        eta: Character,
        cache: &ApCache,
        cutoff: usize,
    ) -> Result<LSeriesSpec> {
        let conductor = conductor(curve, field, eta)?;
        let factors = euler_factors(curve, field, eta, cache, cutoff as u64)?;
        let coefficients = dirichlet_coefficients(&factors, cutoff)?;
        Ok(LSeriesSpec { eta, degree: eta.dim() as u32, conductor, sign: None, coefficients })
    }

    /// Series with explicit data; `coefficients[n - 1] = a_n`.
    pub fn from_coefficients(eta: Character, degree: u32, conductor: u64, coefficients: Vec<i64>) -> Result<LSeriesSpec> {
        if coefficients.first() != Some(&1) {
            return Err(Error::Domain("a_1 must be 1".into()));
        }
        if !(1..=2).contains(&degree) || conductor == 0 {
            return Err(Error::Domain(format!("degree {} / conductor {} not supported", degree, conductor)));
        }
        Ok(LSeriesSpec { eta, degree, conductor, sign: None, coefficients })
    }

    pub fn with_sign(mut self, w: i32) -> LSeriesSpec {
        self.sign = Some(w);
        self
    }

    pub fn cutoff(&self) -> usize {
        self.coefficients.len()
    }

    /// `a_n` for `1 <= n <= cutoff`.
    pub fn a(&self, n: usize) -> i64 {
        self.coefficients[n - 1]
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    /// `A = sqrt(N) / pi^d`.
    pub fn a_scale(&self, prec: u32) -> Real {
        Real::from_int(self.conductor, prec).sqrt() / Real::pi(prec).powi(self.degree as i64)
    }

    /// Lines `n a_n`.
    pub fn dump_coefficients(&self, out: &mut dyn Write) -> Result<()> {
        let mut s = String::new();
        for (i, a) in self.coefficients.iter().enumerate() {
            s.push_str(&format!("{} {}\n", i + 1, a));
        }
        out.write_all(s.as_bytes())?;
        Ok(())
    }
}

/// Euler factors of `E (x) eta` at every prime up to `bound`.
pub fn euler_factors(
    curve: &WeierstrassCurve,
    field: &SexticField,
    eta: Character,
    cache: &ApCache,
    bound: u64,
) -> Result<Vec<EulerFactor>> {
    let aps = cache.up_to(curve, bound)?;
    let primes = primes_up_to(bound);
    if aps.len() != primes.len() {
        return Err(Error::Numeric("a_p table incomplete".into()));
    }
    aps.par_iter()
        .map(|&(p, a)| {
            if curve.is_bad(p) || field.d % p == 0 {
                return twist_euler_factor(curve, field, eta, p);
            }
            // good for both: companion of x^2 - a x + p tensored with rho(Frob)
            let place = splitting_type(field, p)?;
            let t = eta.value(place.frobenius_class.representative());
            let p = p as i64;
            let coeffs: Vec<i64> = match eta {
                Character::Chi0 | Character::Chi => vec![1, -a * t, p],
                Character::Psi => match t {
                    2 => vec![1, -2 * a, a * a + 2 * p, -2 * a * p, p * p],
                    0 => vec![1, 0, 2 * p - a * a, 0, p * p],
                    _ => vec![1, a, a * a - p, a * p, p * p],
                },
            };
            Ok(EulerFactor { p: p as u64, coeffs: coeffs.into_iter().map(crate::exact_arith::int).collect() })
        })
        .collect()
}

/// `a_1 .. a_B` of `prod_p 1 / P_p(p^-s)`; one factor per prime up to `cutoff`, in order.
pub fn dirichlet_coefficients(factors: &[EulerFactor], cutoff: usize) -> Result<Vec<i64>> {
    let mut a = vec![0i64; cutoff + 1];
    if cutoff == 0 {
        return Ok(vec![]);
    }
    a[1] = 1;
    let mut spf = vec![0u32; cutoff + 1];
    let mut it = factors.iter();
    for p in 2..=cutoff {
        if spf[p] != 0 {
            continue;
        }
        let f = it.next().filter(|f| f.p == p as u64).ok_or_else(|| {
            Error::Domain(format!("missing Euler factor at {}", p))
        })?;
        let mut q = p;
        loop {
            if spf[q] == 0 {
                spf[q] = p as u32;
            }
            match q.checked_add(p) {
                Some(n) if n <= cutoff => q = n,
                _ => break,
            }
        }
        // 1 / P as a power series in p^-s
        let c = f.integer_coeffs()?;
        let mut series: Vec<i64> = vec![1];
        let mut pk = p;
        let mut k = 1;
        loop {
            let mut b: i128 = 0;
            for j in 1..c.len().min(k + 1) {
                b -= c[j] as i128 * series[k - j] as i128;
            }
            let b = i64::try_from(b).map_err(|_| Error::Numeric("coefficient overflow".into()))?;
            series.push(b);
            a[pk] = b;
            match pk.checked_mul(p) {
                Some(n) if n <= cutoff => pk = n,
                _ => break,
            }
            k += 1;
        }
    }
    for n in 2..=cutoff {
        let p = spf[n] as usize;
        let mut q = p;
        while (n / q) % p == 0 {
            q *= p;
        }
        if q != n {
            a[n] = a[q].checked_mul(a[n / q]).ok_or_else(|| Error::Numeric("coefficient overflow".into()))?;
        }
    }
    a.remove(0);
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::int;

    #[test]
    fn zeta_squared_gives_divisor_counts() {
        let factors: Vec<EulerFactor> = primes_up_to(30)
            .into_iter()
            .map(|p| EulerFactor { p, coeffs: vec![int(1), int(-2), int(1)] })
            .collect();
        let a = dirichlet_coefficients(&factors, 30).unwrap();
        let tau: Vec<i64> = (1..=30).map(|n: i64| (1..=n).filter(|d| n % d == 0).count() as i64).collect();
        assert_eq!(a, tau);
    }

    #[test]
    fn missing_factor_is_reported() {
        let factors = vec![EulerFactor::one(2)];
        assert!(matches!(dirichlet_coefficients(&factors, 10), Err(Error::Domain(_))));
    }
}
