use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::elliptic_curve::{trace_ap, ReductionKind, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::exact_arith::{fmt_rational, int, rat, solve_left_kernel, QMatrix, Rational};
use crate::number_field::{splitting_type, PlaceData, SexticField};
use crate::s3_algebra::{Character, ConjugacyClass, S3};

/// Polynomial `P(X) = sum c_k X^k` in `X = p^-s`; the local factor is `1 / P(p^-s)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerFactor {
    pub p: u64,
    #[serde(serialize_with = "ser_poly")]
    pub coeffs: Vec<Rational>,
}

fn ser_poly<S: serde::Serializer>(c: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(fmt_rational))
}

impl EulerFactor {
    pub fn one(p: u64) -> EulerFactor {
        EulerFactor { p, coeffs: vec![Rational::one()] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `P(1/p)`, the reciprocal of the local L-value at `s = 1`.
    pub fn value_at_one(&self) -> Rational {
        self.eval(&rat(1, self.p as i64))
    }

    /// Integer coefficients, as every factor here has.
    pub fn integer_coeffs(&self) -> Result<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().to_i64().ok_or_else(|| Error::Numeric("Euler coefficient overflow".into()))
                } else {
                    Err(Error::Numeric(format!("non-integral Euler coefficient {} at {}", c, self.p)))
                }
            })
            .collect()
    }
}

impl fmt::Display for EulerFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", fmt_rational(c))?,
                1 => write!(f, "({})X", fmt_rational(c))?,
                _ => write!(f, "({})X^{}", fmt_rational(c), k)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

pub(crate) fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_pow(a: &[Rational], e: usize) -> Vec<Rational> {
    (0..e).fold(vec![Rational::one()], |acc, _| poly_mul(&acc, a))
}

fn trim(mut c: Vec<Rational>) -> Vec<Rational> {
    while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

/// `det(1 - X m)` by Faddeev-LeVerrier.
fn reversed_charpoly(m: &QMatrix) -> Vec<Rational> {
    let n = m.len();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut mk: QMatrix = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        let mut next = mat_mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        mk = next;
        let am = mat_mul(m, &mk);
        let tr: Rational = (0..n).map(|i| am[i][i].clone()).sum();
        c[n - k] = -tr / int(k as i64);
    }
    c.reverse();
    c
}

fn mat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n).map(|i| (0..m).map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
}

fn kron(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let (ra, rb) = (a.len(), b.len());
    (0..ra * rb)
        .map(|i| (0..ra * rb).map(|j| &a[i / rb][j / rb] * &b[i % rb][j % rb]).collect())
        .collect()
}

fn rep_matrix(eta: Character, g: S3) -> QMatrix {
    match eta {
        Character::Chi0 | Character::Chi => vec![vec![int(eta.value(g))]],
        Character::Psi => g.rho().iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(),
    }
}

/// Matrix of `frob` on the fixed space of `inertia` (both acting on the right of row vectors).
fn restrict_to_invariants(frob: &QMatrix, inertia: &QMatrix) -> QMatrix {
    let n = inertia.len();
    let shifted: QMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { &inertia[i][j] - Rational::one() } else { inertia[i][j].clone() }).collect())
        .collect();
    let basis = solve_left_kernel(&shifted);
    if basis.is_empty() {
        return vec![];
    }
    let images = mat_mul(&basis, frob);
    let gram = mat_mul(&basis, &transpose(&basis));
    let inv = crate::exact_arith::inverse(&gram).expect("kernel basis is independent");
    mat_mul(&mat_mul(&images, &transpose(&basis)), &inv)
}

fn transpose(m: &QMatrix) -> QMatrix {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Frobenius on the inertia invariants of `V_E` at `p`.
fn curve_frobenius(curve: &WeierstrassCurve, p: u64) -> Result<QMatrix> {
    Ok(match curve.reduction(p).kind {
        ReductionKind::Good => {
            let a = trace_ap(curve, p)?;
            vec![vec![int(0), int(-(p as i64))], vec![int(1), int(a)]]
        }
        ReductionKind::SplitMultiplicative => vec![vec![int(1)]],
        ReductionKind::NonsplitMultiplicative => vec![vec![int(-1)]],
        ReductionKind::Additive => vec![],
    })
}

/// `det(1 - Frob_p X | (V_E (x) W_eta)^{I_p})`.
pub fn twist_euler_factor(curve: &WeierstrassCurve, field: &SexticField, eta: Character, p: u64) -> Result<EulerFactor> {
    let place = splitting_type(field, p)?;
    twist_factor_at(curve, &place, eta)
}

fn twist_factor_at(curve: &WeierstrassCurve, place: &PlaceData, eta: Character) -> Result<EulerFactor> {
    let p = place.p;
    let frob = rep_matrix(eta, place.frobenius_class.representative());
    let w: QMatrix = match place.inertia_class {
        None => frob,
        Some(inertia) => {
            if eta != Character::Chi0 && curve.is_bad(p) {
                return Err(Error::Unsupported(format!(
                    "{} is bad for the curve and ramified in the field; excluded by hypothesis",
                    p
                )));
            }
            if place.frobenius_class != ConjugacyClass::Identity {
                return Err(Error::Unsupported(format!("decomposition group at {} larger than inertia", p)));
            }
            restrict_to_invariants(&frob, &rep_matrix(eta, inertia.representative()))
        }
    };
    let v = curve_frobenius(curve, p)?;
    if v.is_empty() || w.is_empty() {
        return Ok(EulerFactor::one(p));
    }
    Ok(EulerFactor { p, coeffs: trim(reversed_charpoly(&kron(&v, &w))) })
}

/// Both sides of the induction identity at `p`.
#[derive(Clone, Debug, Serialize)]
pub struct ArtinCheck {
    pub p: u64,
    #[serde(serialize_with = "ser_poly")]
    pub lhs: Vec<Rational>,
    #[serde(serialize_with = "ser_poly")]
    pub rhs: Vec<Rational>,
    pub holds: bool,
}

/// `a_{p^f}` for the good prime `p`: `alpha^f + beta^f`.
fn power_trace(a: i64, p: u64, f: u32) -> BigInt {
    let (a, p) = (BigInt::from(a), BigInt::from(p));
    let (mut prev, mut cur) = (BigInt::from(2), a.clone());
    for _ in 1..f {
        let next = &a * &cur - &p * &prev;
        prev = cur;
        cur = next;
    }
    if f == 0 {
        prev
    } else {
        cur
    }
}

/// Local factor of `E/K` at the places over `p`, against the product of the twist
/// factors raised to the character degrees.
pub fn artin_factorization_check(curve: &WeierstrassCurve, field: &SexticField, p: u64) -> Result<ArtinCheck> {
    let place = splitting_type(field, p)?;
    let f = place.f as usize;
    let mut local = vec![Rational::zero(); 2 * f + 1];
    local[0] = Rational::one();
    match curve.reduction(p).kind {
        ReductionKind::Good => {
            let a = trace_ap(curve, p)?;
            local[f] = -Rational::from_integer(power_trace(a, p, place.f));
            local[2 * f] = Rational::from_integer(BigInt::from(p).pow(place.f));
        }
        ReductionKind::SplitMultiplicative => local[f] = int(-1),
        ReductionKind::NonsplitMultiplicative => local[f] = int(if f % 2 == 0 { -1 } else { 1 }),
        ReductionKind::Additive => {}
    }
    let lhs = trim(poly_pow(&trim(local), place.g as usize));
    let mut rhs = vec![Rational::one()];
    for eta in Character::all() {
        let factor = twist_factor_at(curve, &place, eta)?;
        rhs = poly_mul(&rhs, &poly_pow(&factor.coeffs, eta.dim()));
    }
    let rhs = trim(rhs);
    let holds = lhs == rhs;
    Ok(ArtinCheck { p, lhs, rhs, holds })
}

/// Exponent of `p` in the Artin conductor of `eta` (tame ramification only).
fn artin_exponent(place: &PlaceData, eta: Character) -> Result<u32> {
    let Some(inertia) = place.inertia_class else { return Ok(0) };
    if place.e as u64 % place.p == 0 {
        return Err(Error::Unsupported(format!("wild ramification at {}", place.p)));
    }
    let frob = rep_matrix(eta, S3::ONE);
    let fixed = restrict_to_invariants(&frob, &rep_matrix(eta, inertia.representative())).len();
    Ok((eta.dim() - fixed) as u32)
}

/// Artin conductor of `eta`.
pub fn artin_conductor(field: &SexticField, eta: Character) -> Result<u64> {
    let mut n = 1u64;
    for (q, _) in crate::exact_arith::factorize(field.d) {
        let place = splitting_type(field, q)?;
        n *= q.pow(artin_exponent(&place, eta)?);
    }
    Ok(n)
}

/// `N(E)^dim(eta) N(eta)^2`.
pub fn conductor(curve: &WeierstrassCurve, field: &SexticField, eta: Character) -> Result<u64> {
    let n_eta = artin_conductor(field, eta)?;
    if num_integer::gcd(n_eta, curve.conductor) != 1 {
        return Err(Error::Unsupported(format!(
            "bad primes of {} and of {} (conductor {}) intersect",
            curve.label, eta, n_eta
        )));
    }
    curve
        .conductor
        .checked_pow(eta.dim() as u32)
        .and_then(|x| x.checked_mul(n_eta * n_eta))
        .ok_or_else(|| Error::Resource("conductor overflows u64".into()))
}

/// `N(chi_0) N(chi) N(psi)^2 = |disc K|`.
pub fn conductor_discriminant_check(field: &SexticField) -> Result<bool> {
    let mut prod = Rational::one();
    for eta in Character::all() {
        let n = artin_conductor(field, eta)?;
        prod *= int(n.pow(eta.dim() as u32) as i64);
    }
    let disc = field.discriminant();
    Ok(prod == if disc < Rational::zero() { -disc } else { disc })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn faddeev_leverrier() {
        let m = vec![vec![int(0), int(-11)], vec![int(1), int(1)]];
        assert_eq!(reversed_charpoly(&m), vec![int(1), int(-1), int(11)]);
    }

    #[test]
    fn power_traces() {
        // alpha, beta = 1, 2 for x^2 - 3x + 2
        assert_eq!(power_trace(3, 2, 3), BigInt::from(9));
        assert_eq!(power_trace(3, 2, 0), BigInt::from(2));
    }
}
