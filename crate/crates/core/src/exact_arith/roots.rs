use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::real::Real;
use super::Rational;
use crate::error::{Error, Result};

fn eval(c: &[Rational; 4], x: &Rational) -> Rational {
    ((&c[3] * x + &c[2]) * x + &c[1]) * x + &c[0]
}

fn cubic_roots_f64(c: &[f64; 4]) -> Vec<f64> {
    let (a, b, cc) = (c[2] / c[3], c[1] / c[3], c[0] / c[3]);
    let f = |x: f64| ((x + a) * x + b) * x + cc;
    let df = |x: f64| (3.0 * x + 2.0 * a) * x + b;
    // Newton from above the Cauchy bound descends monotonically onto the largest root
    let mut x = 1.0 + a.abs().max(b.abs()).max(cc.abs());
    for _ in 0..500 {
        let dx = f(x) / df(x);
        x -= dx;
        if dx.abs() < 1e-15 * x.abs().max(1.0) {
            break;
        }
    }
    let mut roots = vec![x];
    let p = a + x;
    let q = b + p * x;
    let disc = p * p - 4.0 * q;
    if disc >= 0.0 {
        let s = disc.sqrt();
        roots.push((-p + s) / 2.0);
        roots.push((-p - s) / 2.0);
    }
    roots
}

/// The `count` largest real roots of `c0 + c1 x + c2 x^2 + c3 x^3`, ascending, each enclosed
/// in a ball whose endpoints give an exact sign change.
pub fn real_cubic_roots(c: &[Rational; 4], count: usize, prec: u32) -> Result<Vec<Real>> {
    if c[3].is_zero() {
        return Err(Error::Domain("leading coefficient of the cubic is zero".into()));
    }
    let cf: [f64; 4] = std::array::from_fn(|i| c[i].to_f64().unwrap());
    let mut guesses = cubic_roots_f64(&cf);
    if guesses.len() < count {
        return Err(Error::Numeric(format!("expected {} real roots", count)));
    }
    guesses.sort_by(|a, b| b.partial_cmp(a).unwrap());
    guesses.truncate(count);
    guesses.reverse();
    let three = Rational::from_integer(BigInt::from(3));
    let two = Rational::from_integer(BigInt::from(2));
    let scale = BigInt::from(1) << (prec as usize + 16);
    let mut roots = Vec::new();
    for g in guesses {
        let mut x = Rational::from_float(g).ok_or_else(|| Error::Numeric("non-finite root guess".into()))?;
        let mut step = Rational::new(BigInt::from(1), BigInt::from(1) << (prec as usize + 8));
        for _ in 0..64 {
            let fx = eval(c, &x);
            let dfx = (&three * &c[3] * &x + &two * &c[2]) * &x + &c[1];
            if dfx.is_zero() {
                break;
            }
            let nx = &x - fx / dfx;
            let nx = Rational::new((nx * Rational::from_integer(scale.clone())).round().to_integer(), scale.clone());
            let moved = (&nx - &x).abs();
            x = nx;
            if moved < step {
                break;
            }
        }
        let mut certified = false;
        for _ in 0..8 {
            let lo = eval(c, &(&x - &step));
            let hi = eval(c, &(&x + &step));
            if (lo.is_negative() && hi.is_positive()) || (lo.is_positive() && hi.is_negative()) {
                certified = true;
                break;
            }
            step *= Rational::from_integer(BigInt::from(16));
        }
        if !certified {
            return Err(Error::Numeric("could not isolate a real root".into()));
        }
        let rad = Real::from_rational(&step, prec).mag_up();
        roots.push(Real::from_rational(&x, prec).add_error(rad));
    }
    Ok(roots)
}
