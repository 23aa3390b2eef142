use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::exact_arith::{real_cubic_roots, Rational, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LatticeShape {
    Rectangular,
    NonRectangular,
}

/// `omega_plus` is the integral of the Neron differential over the whole real locus;
/// `omega_minus_over_i` is the imaginary period with the analogous normalisation.
#[derive(Clone, Debug)]
pub struct PeriodPair {
    pub omega_plus: Real,
    pub omega_minus_over_i: Real,
    pub shape: LatticeShape,
}

pub(crate) fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

/// Real roots of `4x^3 + b2 x^2 + 2 b4 x + b6`, descending.
fn real_two_division_values(curve: &WeierstrassCurve, prec: u32, count: usize) -> Result<Vec<Real>> {
    let [b2, b4, b6, _] = curve.b_invariants();
    let c = [
        Rational::from_integer(b6),
        Rational::from_integer(2 * b4),
        Rational::from_integer(b2),
        Rational::from_integer(BigInt::from(4)),
    ];
    let mut roots = real_cubic_roots(&c, count, prec)?;
    roots.reverse();
    Ok(roots)
}

/// Periods by the arithmetic-geometric mean on the real two-division values.
pub fn real_periods(curve: &WeierstrassCurve, digits: u32) -> Result<PeriodPair> {
    if digits > 300 {
        return Err(Error::Domain(format!("precision {} digits exceeds 300", digits)));
    }
    let prec = digits_to_bits(digits) + 32;
    let [b2, b4, _, _] = curve.b_invariants();
    let b2 = Real::from_int(b2, prec);
    let b4 = Real::from_int(b4, prec);
    let pi = Real::pi(prec);
    let disc = curve.discriminant();
    let roots = real_two_division_values(curve, prec, if disc.is_negative() { 1 } else { 3 })?;
    let out_prec = digits_to_bits(digits);
    if disc.is_negative() {
        let e1 = &roots[0];
        let beta = &e1.mul_int(3) + &b2.mul_2exp(-2);
        let alpha = (&(&e1.sqr().mul_int(3) + &(&b2 * e1).mul_2exp(-1)) + &b4.mul_2exp(-1)).sqrt();
        let agm_plus = Real::agm(&alpha.sqrt().mul_2exp(1), &(&alpha.mul_2exp(1) + &beta).sqrt());
        let agm_minus = Real::agm(&alpha.sqrt().mul_2exp(1), &(&alpha.mul_2exp(1) - &beta).sqrt());
        let wp = (&pi.mul_2exp(1) / &agm_plus).with_prec(out_prec);
        let wm = (&pi.mul_2exp(1) / &agm_minus).with_prec(out_prec);
        if !wp.is_finite() || !wm.is_finite() {
            return Err(Error::Numeric("AGM did not converge".into()));
        }
        Ok(PeriodPair { omega_plus: wp, omega_minus_over_i: wm, shape: LatticeShape::NonRectangular })
    } else {
        let (e1, e2, e3) = (&roots[0], &roots[1], &roots[2]);
        let w1 = &pi / &Real::agm(&(e1 - e3).sqrt(), &(e1 - e2).sqrt());
        let w2 = &pi / &Real::agm(&(e1 - e3).sqrt(), &(e2 - e3).sqrt());
        Ok(PeriodPair {
            omega_plus: w1.mul_2exp(1).with_prec(out_prec),
            omega_minus_over_i: w2.mul_2exp(1).with_prec(out_prec),
            shape: LatticeShape::Rectangular,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_plus_of_11a1() {
        let pp = real_periods(&WeierstrassCurve::eleven_a1(), 50).unwrap();
        let want = Real::from_decimal_str("1.26920930427955342168879461675", 200);
        assert!(pp.omega_plus.within(&want, 1e-28));
        assert_eq!(pp.shape, LatticeShape::NonRectangular);
        assert!(pp.omega_plus.rad_f64() < 1e-48);
    }
}
