use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact_arith::{Mag, Rational, Real};

const LOG2_E: f64 = std::f64::consts::LOG2_E;

/// Extra working bits beyond the target before a series evaluation is refused.
const SERIES_BUDGET: u32 = 20_000;

/// Inverse Mellin transform `phi` of `gamma(s) = Gamma(s/2)^d Gamma((s+1)/2)^d` and its
/// incomplete transforms `G_s(t) = t^-s int_t^inf phi(x) x^s dx / x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaTransform {
    pub d: u32,
    /// Target precision in bits.
    pub prec: u32,
}

fn mag_ok(x: &Real, bound: &Mag) -> bool {
    x.mag_up().le(bound)
}

/// Least `z` from which the asymptotic expansion of `K_nu` reaches `prec` bits.
fn asymptotic_threshold(prec: u32) -> f64 {
    (prec as f64 + 16.0) * std::f64::consts::LN_2 / 2.0 + 2.0
}

/// `sqrt(pi / 2z) e^-z sum_k c_k z^-k`, truncated at the first term below `2^-prec`;
/// for real `z` and `nu` in `{0, 1}` the remainder is bounded by the first omitted term.
fn bessel_k_asymptotic(nu: i64, z: &Real, prec: u32) -> Option<Real> {
    let wp = prec + 24;
    let z = z.with_prec(wp);
    let mu = 4 * nu * nu;
    let tiny = Mag::pow2(-(prec as i64) - 8);
    let mut term = Real::one(wp);
    let mut sum = Real::one(wp);
    let mut k: i64 = 1;
    loop {
        let next = (&term.mul_int(mu - (2 * k - 1) * (2 * k - 1)) / &z).div_int(8 * k);
        if mag_ok(&next, &tiny) {
            sum = sum.add_error(next.mag_up());
            break;
        }
        if k > 1 && term.mag_up().le(&next.mag_low()) {
            return None;
        }
        sum = &sum + &next;
        term = next;
        k += 1;
    }
    let scale = (Real::pi(wp) / z.mul_2exp(1)).sqrt() * (-&z).exp();
    Some((scale * sum).with_prec(prec))
}

/// Power series of `K_0` or `K_1` around `0` at a working precision covering the
/// `e^{2z}` cancellation.
fn bessel_k_series(nu: i64, z: &Real, prec: u32) -> Real {
    let zf = z.to_f64();
    let wp = prec + (2.0 * zf * LOG2_E).ceil() as u32 + 32;
    let z = z.with_prec(wp);
    let q = z.sqr().mul_2exp(-2);
    let qf = zf * zf / 4.0;
    let gamma = Real::euler_gamma(wp);
    let log_half = z.mul_2exp(-1).ln();
    let tiny = Mag::pow2(-(wp as i64));
    // u_k = q^k / (k! (k + nu)!)
    let mut u = Real::one(wp);
    let mut h = Real::zero(wp);
    let mut sa = u.clone();
    let mut sb = Real::zero(wp);
    let mut k: i64 = 0;
    loop {
        let h_next = &h + &Real::one(wp).div_int(k + 1);
        // weight H_k for K_0, H_k + H_{k+1} for K_1
        let w = if nu == 0 { h.clone() } else { &h + &h_next };
        if k > 0 {
            sb = &sb + &(&u * &w);
        } else if nu == 1 {
            sb = w.clone();
        }
        let ratio = qf / ((k + 1) as f64 * (k + 1 + nu) as f64);
        let weight = 2.0 * (w.to_f64().abs() + 2.0);
        if ratio <= 0.5 && mag_ok(&u.mul_int(weight.ceil() as i64), &tiny) {
            sa = sa.add_error(u.mag_up());
            sb = sb.add_error(u.mag_up().mul(Mag::from_f64(weight)));
            break;
        }
        k += 1;
        u = (&u * &q).div_int(k * (k + nu));
        h = h_next;
        sa = &sa + &u;
    }
    let out = if nu == 0 {
        &sb - &(&(&log_half + &gamma) * &sa)
    } else {
        let half_z = z.mul_2exp(-1);
        let s2 = &sb - &(&gamma.mul_2exp(1) * &sa);
        &(&z.inv() + &(&log_half * &(&half_z * &sa))) - &(&z.mul_2exp(-2) * &s2)
    };
    out.with_prec(prec)
}

/// Evaluated at the centre of `z`; the radius enters through `|K_nu'| <= (1 + 2/z) K_nu`.
fn bessel_k(nu: i64, z: &Real) -> Real {
    let prec = z.prec();
    if !z.is_positive() {
        return Real::zero(prec).add_error(Mag::INF);
    }
    let mid = z.midpoint();
    let v = match z.to_f64() >= asymptotic_threshold(prec) {
        true => bessel_k_asymptotic(nu, &mid, prec).unwrap_or_else(|| bessel_k_series(nu, &mid, prec)),
        false => bessel_k_series(nu, &mid, prec),
    };
    if z.rad().is_zero() {
        return v;
    }
    let slope = 1.0 + 2.0 / z.mag_low().to_f64();
    v.add_error(v.mag_up().mul(Mag::from_f64(slope)).mul(z.rad()))
}

/// Modified Bessel function `K_0(z)` for `z > 0`, at the precision of `z`.
pub fn bessel_k0(z: &Real) -> Real {
    bessel_k(0, z)
}

/// Modified Bessel function `K_1(z)` for `z > 0`, at the precision of `z`.
pub fn bessel_k1(z: &Real) -> Real {
    bessel_k(1, z)
}

impl GammaTransform {
    pub fn new(d: u32, prec: u32) -> Result<GammaTransform> {
        if !(1..=2).contains(&d) {
            return Err(Error::Unsupported(format!("gamma factor of degree {}", d)));
        }
        Ok(GammaTransform { d, prec })
    }

    /// `gamma(s)`, via duplication `Gamma(s/2) Gamma((s+1)/2) = 2^{1-s} sqrt(pi) Gamma(s)`.
    pub fn gamma_factor(&self, s: &Real) -> Real {
        let wp = self.prec + 16;
        let s = s.with_prec(wp);
        let one_minus = &Real::one(wp) - &s;
        let base = Real::pi(wp).sqrt() * (Real::ln2(wp) * one_minus).exp() * s.gamma();
        base.powi(self.d as i64).with_prec(self.prec)
    }

    /// `phi(t)`: `2 sqrt(pi) e^{-2t}` for `d = 1`, `8 pi K_0(4 sqrt t)` for `d = 2`.
    pub fn phi(&self, t: &Real) -> Real {
        let wp = self.prec + 16;
        let t = t.with_prec(wp);
        let v = match self.d {
            1 => Real::pi(wp).sqrt().mul_2exp(1) * (-t.mul_2exp(1)).exp(),
            _ => Real::pi(wp).mul_2exp(3) * bessel_k0(&t.sqrt().mul_2exp(2)),
        };
        v.with_prec(self.prec)
    }

    /// `G_1(t)`: `sqrt(pi) e^{-2t} / t` for `d = 1`, `pi z K_1(z) / t` with `z = 4 sqrt t` for `d = 2`.
    pub fn g1(&self, t: &Real) -> Real {
        let wp = self.prec + 16;
        let t = t.with_prec(wp);
        let v = match self.d {
            1 => Real::pi(wp).sqrt() * (-t.mul_2exp(1)).exp() / &t,
            _ => {
                let z = t.sqrt().mul_2exp(2);
                Real::pi(wp) * &z * bessel_k1(&z) / &t
            }
        };
        v.with_prec(self.prec)
    }

    /// `G_s(t)` for rational `s > 0` and `t > 0`; `s = 1` uses the closed forms, other `s`
    /// the expansion `t^-s (gamma(s) - int_0^t phi(x) x^s dx/x)` at escalated precision.
    pub fn incomplete_mellin(&self, s: &Rational, t: &Real) -> Result<Real> {
        if !t.is_positive() {
            return Err(Error::Domain("G_s(t) needs t > 0".into()));
        }
        if !s.is_positive() {
            return Err(Error::Domain(format!("G_s(t) needs s > 0, got {}", s)));
        }
        if s.is_one() {
            return Ok(self.g1(t));
        }
        let tf = t.to_f64();
        let growth = match self.d {
            1 => 4.0 * tf * LOG2_E,
            _ => 8.0 * tf.sqrt() * LOG2_E,
        };
        let extra = growth.ceil() as u32 + 40 + (tf.ln().abs().log2().max(0.0)) as u32;
        if extra > SERIES_BUDGET {
            return Err(Error::Precision(format!("G_s({}) needs {} extra bits", tf, extra)));
        }
        let wp = self.prec + extra;
        let t_in = t;
        let t = t.midpoint().with_prec(wp);
        let sr = Real::from_rational(s, wp);
        let ln_t = t.ln();
        let t_pow_minus_s = (-(&sr * &ln_t)).exp();
        let head = &t_pow_minus_s * &GammaTransform { d: self.d, prec: wp }.gamma_factor(&sr);
        let tiny = Mag::pow2(-(wp as i64));
        let v = match self.d {
            1 => {
                // 2 sqrt(pi) 2^-s x^s sum (-x)^k / (k! (s+k)), x = 2t
                let x = t.mul_2exp(1);
                let xf = 2.0 * tf;
                let mut term = Real::one(wp);
                let mut sum = Real::zero(wp);
                let mut k: i64 = 0;
                loop {
                    sum = &sum + &(&term / &(&sr + &Real::from_int(k, wp)));
                    if (xf / (k + 1) as f64) <= 0.5 && mag_ok(&term, &tiny) {
                        sum = sum.add_error(term.mag_up());
                        break;
                    }
                    k += 1;
                    term = (&term * &x).div_int(-k);
                }
                // x^s t^-s = 2^s
                let lower = Real::pi(wp).sqrt().mul_2exp(1) * sum;
                &head - &lower
            }
            _ => {
                let q = t.mul_2exp(2);
                let qf = 4.0 * tf;
                let c0 = &(&Real::euler_gamma(wp) + &Real::ln2(wp)) + &ln_t.mul_2exp(-1);
                let mut u = Real::one(wp);
                let mut h = Real::zero(wp);
                let mut sum = Real::zero(wp);
                let mut k: i64 = 0;
                loop {
                    let ks = &sr + &Real::from_int(k, wp);
                    let bracket = &(&(&h - &c0) / &ks) + &ks.sqr().mul_2exp(1).inv();
                    sum = &sum + &(&u * &bracket);
                    let ratio = qf / ((k + 1) as f64 * (k + 1) as f64);
                    let weight = h.to_f64() + c0.to_f64().abs() + 2.0;
                    if ratio <= 0.25 && mag_ok(&u.mul_int(weight.ceil() as i64), &tiny) {
                        sum = sum.add_error(u.mag_up().mul(Mag::from_f64(weight)));
                        break;
                    }
                    k += 1;
                    u = (&u * &q).div_int(k * k);
                    h = &h + &Real::one(wp).div_int(k);
                }
                &head - &(Real::pi(wp).mul_2exp(3) * sum)
            }
        };
        if t_in.rad().is_zero() {
            return Ok(v.with_prec(self.prec));
        }
        // |d/dt G_s| <= (s G_s + phi(t)) / t
        let slope = (Real::from_rational(s, wp) * v.abs() + self.phi(&t).abs()) / t_in.abs();
        Ok(v.add_error(slope.mag_up().mul(t_in.rad())).with_prec(self.prec))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn bessel_regimes_overlap() {
        for z in [0.5f64, 3.0, 17.0, 55.0, 70.0] {
            let zr = Real::from_f64(z, 128);
            let s1 = bessel_k_series(1, &zr, 128);
            let s0 = bessel_k_series(0, &zr, 128);
            if z >= 55.0 {
                let a1 = bessel_k_asymptotic(1, &zr, 128).unwrap();
                let a0 = bessel_k_asymptotic(0, &zr, 128).unwrap();
                assert!(s1.within(&a1, 1e-34) && s0.within(&a0, 1e-34), "z = {}", z);
            }
            // Wronskian I_0 K_1 + I_1 K_0 = 1/z
            let (mut i0, mut i1) = (Real::zero(128), Real::zero(128));
            let mut t = Real::one(128);
            let half = zr.mul_2exp(-1);
            for k in 0..200i64 {
                i0 = &i0 + &t;
                i1 = &i1 + &(&t * &half).div_int(k + 1);
                t = (&t * &half.sqr()).div_int((k + 1) * (k + 1));
            }
            let w = &(&i0 * &s1) + &(&i1 * &s0);
            assert!(w.within(&zr.inv(), 1e-30), "z = {}", z);
        }
        let one = Real::from_int(1, 200);
        assert!(bessel_k1(&one).within(&Real::from_decimal_str("0.60190723019723457", 200), 1e-16));
        assert!(bessel_k0(&one).within(&Real::from_decimal_str("0.42102443824070833", 200), 1e-16));
    }

    #[test]
    fn closed_form_matches_series_at_s_near_one() {
        for d in [1, 2] {
            let g = GammaTransform::new(d, 120).unwrap();
            let t = Real::from_ratio(3, 4, 120);
            let a = g.incomplete_mellin(&rat(1000001, 1000000), &t).unwrap();
            let b = g.g1(&t);
            assert!((a.to_f64() - b.to_f64()).abs() < 1e-4 * b.to_f64(), "d = {}", d);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let g = GammaTransform::new(2, 64).unwrap();
        assert!(g.incomplete_mellin(&rat(1, 2), &Real::zero(64)).is_err());
        assert!(GammaTransform::new(3, 64).is_err());
        assert!(matches!(
            g.incomplete_mellin(&rat(1, 2), &Real::from_int(10_000_000_000i64, 64)),
            Err(Error::Precision(_))
        ));
    }
}
