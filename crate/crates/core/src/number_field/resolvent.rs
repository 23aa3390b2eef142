use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{KElem, SexticField};
use crate::error::{Error, Result};
use crate::exact_arith::{det, l_adic_valuation, recognize_rational, PeriodValue, QMatrix, Rational, Real};
use crate::s3_algebra::{Character, S3};

/// Rows `g(alpha)` for `g` in [`S3::all`] order, in integral-basis coordinates.
pub fn resolvent_matrix(field: &SexticField, alpha: &KElem) -> QMatrix {
    S3::all().iter().map(|&g| field.to_basis_coords(&field.galois_apply(g, alpha))).collect()
}

/// Whether `alpha` generates `O_K (x) Z_l` freely over `Z_l[G]`.
pub fn local_generator_test(field: &SexticField, alpha: &KElem, l: u64) -> Result<bool> {
    if !field.is_integral(alpha) {
        return Err(Error::Domain("element is not integral".into()));
    }
    let d = det(&resolvent_matrix(field, alpha));
    Ok(l_adic_valuation(&d, l) == Some(0))
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolventDet {
    pub eta: Character,
    #[serde(serialize_with = "ser_real")]
    pub numeric: Real,
    pub exact: PeriodValue,
}

fn ser_real<S: serde::Serializer>(x: &Real, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_decimal(40))
}

/// `det(sum_g g(alpha) rho_eta(g^-1))` in the base embedding.
pub fn resolvent_numeric(field: &SexticField, alpha: &KElem, eta: Character, prec: u32) -> Result<Real> {
    let conj: Vec<Real> = S3::all().iter().map(|&g| field.embed(g, alpha, prec)).collect::<Result<_>>()?;
    Ok(match eta {
        Character::Chi0 | Character::Chi => {
            let mut acc = Real::zero(prec);
            for g in S3::all() {
                acc = &acc + &conj[g.index()].mul_int(eta.value(g.inv()));
            }
            acc
        }
        Character::Psi => {
            let mut m: [[Real; 2]; 2] = std::array::from_fn(|_| std::array::from_fn(|_| Real::zero(prec)));
            for g in S3::all() {
                let r = g.inv().rho();
                for i in 0..2 {
                    for j in 0..2 {
                        m[i][j] = &m[i][j] + &conj[g.index()].mul_int(r[i][j]);
                    }
                }
            }
            &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
        }
    })
}

/// Resolvent determinant, computed at `digits` decimal digits and recognised as
/// `q * sqrt(D)^c` with `q` of height at most `height`.
pub fn resolvent_det(field: &SexticField, alpha: &KElem, eta: Character, digits: u32, height: u64) -> Result<ResolventDet> {
    let prec = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16;
    let x = resolvent_numeric(field, alpha, eta, prec + 32)?.with_prec(prec);
    let sq = Real::from_int(field.d, prec + 32).sqrt();
    let tol = 10f64.powi(-(digits as i32 - 10));
    let plain = recognize_rational(&x, height, tol).filter(|q| !q.is_zero());
    let with_root = recognize_rational(&(&x / &sq).with_prec(prec), height, tol).filter(|q| !q.is_zero());
    let exact = match (plain, with_root) {
        (Some(q), None) => PeriodValue::new(q, 0, 0, 0, field.d),
        (None, Some(q)) => PeriodValue::new(q, 0, 0, 1, field.d),
        (Some(a), Some(b)) => {
            return Err(Error::Recognition(format!(
                "resolvent determinant {} for {} matches both {} and {}*sqrt({})",
                x, eta, a, b, field.d
            )))
        }
        (None, None) => {
            return Err(Error::Recognition(format!("resolvent determinant {} for {} not recognised", x, eta)))
        }
    };
    Ok(ResolventDet { eta, numeric: x, exact })
}

fn bareiss(m: &[[i64; 6]; 6]) -> i128 {
    let mut a: [[i128; 6]; 6] = std::array::from_fn(|i| std::array::from_fn(|j| m[i][j] as i128));
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..6 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..6).find(|&i| a[i][k] != 0) else { return 0 };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..6 {
            for j in k + 1..6 {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[5][5]
}

fn signs(field: &SexticField, alpha: &KElem) -> Result<[i64; 3]> {
    let mut out = [0; 3];
    for eta in Character::all() {
        let v = resolvent_numeric(field, alpha, eta, 64)?;
        out[eta.index()] = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
    }
    Ok(out)
}

/// First element of the box `[-3, 3]^6` in integral-basis coordinates (ordered by
/// maximum norm, then lexicographically) whose resolvent matrix is unimodular, adjusted
/// by `-1` and `r` so that all three resolvent determinants are positive.
/// Falls back to local freeness at every prime in `primes` when no unimodular element exists.
pub fn search_alpha0(field: &SexticField, primes: &[u64]) -> Result<KElem> {
    let mats: Vec<[[i64; 6]; 6]> = S3::all()
        .iter()
        .map(|&g| {
            let m = field.galois_matrix(g);
            let mut out = [[0i64; 6]; 6];
            for i in 0..6 {
                for j in 0..6 {
                    out[i][j] = m[i][j].to_integer().to_i64().expect("integral Galois action");
                }
            }
            out
        })
        .collect();
    let mut fallback = None;
    for bound in 1..=3i64 {
        let side = (2 * bound + 1) as usize;
        for idx in 0..side.pow(6) {
            let mut a = [0i64; 6];
            let mut t = idx;
            for c in a.iter_mut() {
                *c = (t % side) as i64 - bound;
                t /= side;
            }
            if a.iter().map(|x| x.abs()).max() != Some(bound) {
                continue;
            }
            let rows: [[i64; 6]; 6] = std::array::from_fn(|g| {
                std::array::from_fn(|j| (0..6).map(|i| a[i] * mats[g][i][j]).sum())
            });
            let d = bareiss(&rows);
            let coords: Vec<Rational> = a.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect();
            if d.abs() == 1 {
                return orient(field, field.from_basis_coords(&coords));
            }
            if fallback.is_none() && d != 0 {
                let dd = BigInt::from(d);
                if primes.iter().all(|&l| (&dd % BigInt::from(l)) != BigInt::zero()) {
                    fallback = Some(field.from_basis_coords(&coords));
                }
            }
        }
    }
    match fallback {
        Some(x) => orient(field, x),
        None => Err(Error::Validation {
            hypothesis: "O_K is a free Z[G]-module".into(),
            detail: "no local generator in the search box".into(),
        }),
    }
}

fn orient(field: &SexticField, alpha: KElem) -> Result<KElem> {
    let candidates = [
        alpha.clone(),
        field.neg(&alpha),
        field.galois_apply(S3::R, &alpha),
        field.neg(&field.galois_apply(S3::R, &alpha)),
    ];
    for c in candidates {
        if signs(field, &c)? == [1, 1, 1] {
            return Ok(c);
        }
    }
    Ok(alpha)
}
