#![allow(dead_code)]

use std::path::PathBuf;

use ebsd::elliptic_curve::WeierstrassCurve;
use ebsd::exact_arith::{Rational, Real};
use ebsd::number_field::SexticField;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn curve() -> WeierstrassCurve {
    WeierstrassCurve::load(&data("curve.cfg")).unwrap()
}

pub fn field() -> SexticField {
    SexticField::load(&data("field.cfg")).unwrap()
}

/// `K_0(z) = int_0^inf exp(-z cosh u) du` by the trapezoidal rule, which converges
/// geometrically for this entire, even integrand.
pub fn k0_quadrature(z: &Real, prec: u32) -> Real {
    let h = Real::from_ratio(1, 8, prec);
    let eh = h.exp();
    let eh_inv = eh.inv();
    let mut up = Real::one(prec);
    let mut down = Real::one(prec);
    let mut sum = (-z).exp().mul_2exp(-1);
    let cut = prec as f64 * std::f64::consts::LN_2 + 10.0;
    loop {
        up = &up * &eh;
        down = &down * &eh_inv;
        let arg = z * &(&up + &down).mul_2exp(-1);
        if arg.to_f64() > cut {
            break;
        }
        sum = &sum + &(-arg).exp();
    }
    &sum * &h
}

/// `phi` of degree `d`, the `d = 2` case through [`k0_quadrature`].
pub fn phi_oracle(d: u32, x: &Real, prec: u32) -> Real {
    match d {
        1 => Real::pi(prec).sqrt().mul_2exp(1) * (-x.mul_2exp(1)).exp(),
        _ => Real::pi(prec).mul_2exp(3) * k0_quadrature(&x.sqrt().mul_2exp(2), prec),
    }
}

/// `int_t^inf phi(x) x^{s-1} dx` by exp-sinh quadrature in `w = sqrt x - sqrt t` (d = 2)
/// or `w = x - t` (d = 1).
pub fn mellin_tail(d: u32, s: &Rational, t: &Real, prec: u32) -> Real {
    let sr = Real::from_rational(s, prec);
    let h = Real::from_ratio(1, 40, prec);
    let half_pi = Real::pi(prec).mul_2exp(-1);
    let root_t = t.sqrt();
    let tiny = -(prec as f64) * std::f64::consts::LN_2 - 20.0;
    let integrand = |w: &Real| -> Real {
        match d {
            1 => {
                let x = t + w;
                let pow = if x.is_positive() { (&(&sr - &Real::one(prec)) * &x.ln()).exp() } else { Real::one(prec) };
                phi_oracle(1, &x, prec) * pow
            }
            _ => {
                let r = &root_t + w;
                let x = r.sqr();
                let pow = (&(&sr.mul_2exp(1) - &Real::one(prec)) * &r.ln()).exp();
                phi_oracle(2, &x, prec) * pow.mul_2exp(1)
            }
        }
    };
    let mut total = Real::zero(prec);
    for dir in [1i64, -1] {
        let mut k: i64 = if dir == 1 { 0 } else { -1 };
        loop {
            let tau = h.mul_int(k);
            let et = tau.exp();
            let et_inv = et.inv();
            let sinh = (&et - &et_inv).mul_2exp(-1);
            let cosh = (&et + &et_inv).mul_2exp(-1);
            let log_w = &half_pi * &sinh;
            let lw = log_w.to_f64();
            if dir == -1 && lw < tiny {
                break;
            }
            let w = log_w.exp();
            let f = integrand(&w);
            let term = &(&f * &w) * &(&half_pi * &cosh);
            total = &total + &term;
            if dir == 1 && lw > 2.0 && (term.to_f64().abs() < 1e-300 || term.to_f64().abs().ln() < tiny) {
                break;
            }
            k += dir;
        }
    }
    &total * &h
}

/// `G_s(t)` from [`mellin_tail`].
pub fn g_oracle(d: u32, s: &Rational, t: &Real, prec: u32) -> Real {
    let sr = Real::from_rational(s, prec);
    mellin_tail(d, s, t, prec) * (-(&sr * &t.ln())).exp()
}
