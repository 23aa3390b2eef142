use rayon::prelude::*;
use serde::Serialize;

use super::{GammaTransform, LSeriesSpec};
use crate::error::{Error, Result};
use crate::exact_arith::{Mag, Real};

const CHUNK: usize = 512;

/// `L(E (x) eta, 1)` with its completed value and error budget.
#[derive(Clone, Debug, Serialize)]
pub struct LValue {
    pub degree: u32,
    pub conductor: u64,
    pub sign: i32,
    pub digits: u32,
    pub terms: usize,
    #[serde(serialize_with = "ser_real")]
    pub value: Real,
    #[serde(serialize_with = "ser_real")]
    pub completed: Real,
    /// Certified bound on the discarded terms `n > terms`, already included in `value`.
    pub tail_bound: f64,
    /// Accumulated error of the evaluated terms.
    pub series_error: f64,
}

impl LValue {
    pub fn error_bound(&self) -> f64 {
        self.value.rad_f64()
    }
}

fn ser_real<S: serde::Serializer>(x: &Real, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_decimal(30))
}

/// Upper bound for `|sum_{n > b} a_n (1 + w) G_1(n/A)| / (A gamma(1))`, using
/// `|a_n| <= tau(n) sqrt(n) <= 2n` for `d = 1` and `|a_n| <= tau(n)^3 sqrt(n) <= 8 n^2`
/// for `d = 2`, with `z K_1(z) <= 1.2 sqrt(pi z / 2) e^-z` for `z >= 2`.
pub fn tail_bound(degree: u32, conductor: u64, b: usize) -> f64 {
    let pi = std::f64::consts::PI;
    let a = (conductor as f64).sqrt() / pi.powi(degree as i32);
    let b = b as f64;
    let ln_bound = match degree {
        1 => {
            // 2 sum 2 e^{-2n/A} <= 4 int_b^inf e^{-2x/A} dx
            (2.0 * a).ln() - 2.0 * b / a
        }
        _ => {
            // 2 sum 8 n z K_1(z) <= C A^2 / 128 Gamma(4.5, z_b)
            let z = 4.0 * (b / a).sqrt();
            if z <= 8.0 {
                return f64::INFINITY;
            }
            let c = 16.0 * 1.2 * (pi / 2.0).sqrt();
            (c * a * a / 128.0).ln() + 3.5 * z.ln() - z - (1.0 - 3.5 / z).ln()
        }
    };
    ln_bound.exp()
}

/// Cutoff `ceil(2 A digits ln 10 / (2 pi)) + 50`, grown until [`tail_bound`] is below
/// `10^-digits`.
pub fn required_cutoff(degree: u32, conductor: u64, digits: u32) -> usize {
    let pi = std::f64::consts::PI;
    let a = (conductor as f64).sqrt() / pi.powi(degree as i32);
    let mut b = (2.0 * a * digits as f64 * std::f64::consts::LN_10 / (2.0 * pi)).ceil() as usize + 50;
    let tol = 10f64.powi(-(digits as i32));
    while tail_bound(degree, conductor, b) >= tol {
        b += b / 8 + 1;
    }
    b
}

fn working_prec(digits: u32, terms: usize) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32 + (terms as f64).log2().ceil() as u32
}

/// Deterministic parallel `sum_{n <= terms} a_n f(n)`: fixed chunks, reduced in order.
fn chunked_sum(spec: &LSeriesSpec, terms: usize, prec: u32, f: &(dyn Fn(usize) -> Real + Sync)) -> Real {
    let chunks: Vec<Real> = (0..terms.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut acc = Real::zero(prec);
            for n in c * CHUNK + 1..=((c + 1) * CHUNK).min(terms) {
                let a = spec.a(n);
                if a != 0 {
                    acc = &acc + &f(n).mul_int(a);
                }
            }
            acc
        })
        .collect();
    chunks.iter().fold(Real::zero(prec), |acc, x| &acc + x)
}

/// `L(1)` to `digits` digits, using the least certified cutoff.
pub fn lvalue(spec: &LSeriesSpec, digits: u32) -> Result<LValue> {
    let b = required_cutoff(spec.degree, spec.conductor, digits);
    if spec.cutoff() < b {
        return Err(Error::Resource(format!(
            "{} digits at conductor {} need B = {} coefficients, have {}",
            digits,
            spec.conductor,
            b,
            spec.cutoff()
        )));
    }
    lvalue_truncated(spec, digits, b)
}

/// `L(1)` summed over `n <= terms`, with the tail bound for that cutoff.
pub fn lvalue_truncated(spec: &LSeriesSpec, digits: u32, terms: usize) -> Result<LValue> {
    let w = spec.sign.ok_or_else(|| Error::Domain("sign of the functional equation not set".into()))?;
    if terms > spec.cutoff() {
        return Err(Error::Resource(format!("{} terms requested, {} available", terms, spec.cutoff())));
    }
    let prec = working_prec(digits, terms);
    let g = GammaTransform::new(spec.degree, prec)?;
    let a = spec.a_scale(prec + 16);
    let a_inv = a.inv();
    let sum = chunked_sum(spec, terms, prec, &|n| g.g1(&a_inv.mul_int(n as i64)));
    let series_error = sum.rad_f64();
    let completed = sum.mul_int(1 + w as i64);
    let norm = &a * &g.gamma_factor(&Real::one(prec));
    let tail = if w == -1 { 0.0 } else { tail_bound(spec.degree, spec.conductor, terms) };
    let value = (&completed / &norm).add_error(Mag::from_f64(tail));
    let completed = completed.add_error(Mag::from_f64(tail * norm.to_f64() * 1.01));
    Ok(LValue {
        degree: spec.degree,
        conductor: spec.conductor,
        sign: w,
        digits,
        terms,
        value: value.with_prec(prec),
        completed,
        tail_bound: tail,
        series_error,
    })
}

/// Outcome of the theta-function test `theta(1/y) = w y^2 theta(y)`.
#[derive(Clone, Debug, Serialize)]
pub struct SignCheck {
    pub sign: i32,
    pub y: f64,
    pub residual_accepted: f64,
    pub residual_rejected: f64,
}

/// Sign `w` of the functional equation from `theta(y) = sum a_n phi(n y / A)` at
/// `y = 11/10`: only the true sign makes `theta(1/y) - w y^2 theta(y)` vanish.
pub fn sign_determination(spec: &LSeriesSpec) -> Result<SignCheck> {
    let prec = 96;
    let g = GammaTransform::new(spec.degree, prec)?;
    let a_inv = spec.a_scale(prec + 16).inv();
    let y = Real::from_ratio(11, 10, prec);
    let y_inv = y.inv();
    // drop terms below 2^-(prec + 16) at the slower of the two arguments
    let af = 1.0 / a_inv.to_f64();
    let cut_exp = (prec as f64 + 16.0) * std::f64::consts::LN_2;
    let n_max = match spec.degree {
        1 => 1.1 * af * cut_exp / 2.0,
        _ => 1.1 * af * (cut_exp / 4.0).powi(2),
    }
    .ceil() as usize;
    let terms = n_max.min(spec.cutoff());
    let theta = |scale: &Real| chunked_sum(spec, terms, prec, &|n| g.phi(&(&a_inv * scale).mul_int(n as i64)));
    let t_y = theta(&y);
    let t_inv = theta(&y_inv);
    let y2 = y.sqr();
    let denom = t_inv.abs().to_f64();
    if denom == 0.0 {
        return Err(Error::Numeric("theta vanishes at the test point".into()));
    }
    let residual = |w: i64| (&t_inv - &(&y2 * &t_y).mul_int(w)).abs().to_f64() / denom;
    let (plus, minus) = (residual(1), residual(-1));
    let tol = 1e-8;
    match (plus < tol, minus < tol) {
        (true, false) => Ok(SignCheck { sign: 1, y: 1.1, residual_accepted: plus, residual_rejected: minus }),
        (false, true) => Ok(SignCheck { sign: -1, y: 1.1, residual_accepted: minus, residual_rejected: plus }),
        _ => Err(Error::Numeric(format!(
            "AMBIGUOUS sign: residuals {:.3e} (w = +1) and {:.3e} (w = -1) with {} terms",
            plus, minus, terms
        ))),
    }
}
