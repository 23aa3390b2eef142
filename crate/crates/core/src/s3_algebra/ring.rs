use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use super::group::S3;
use super::CentralVector;
use crate::error::{Error, Result};
use crate::exact_arith::{det, fmt_rational, inverse, l_adic_valuation, Rational};

/// `sum_g c_g g` with coefficients indexed as in [`S3`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingElement(pub [Rational; 6]);

fn q(n: i64, d: i64) -> Rational {
    crate::exact_arith::rat(n, d)
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement(std::array::from_fn(|_| Rational::zero()))
    }

    pub fn one() -> Self {
        GroupRingElement::group(S3::ONE)
    }

    pub fn group(g: S3) -> Self {
        let mut x = GroupRingElement::zero();
        x.0[g.index()] = Rational::one();
        x
    }

    pub fn from_ints(c: [i64; 6]) -> Self {
        GroupRingElement(c.map(|n| q(n, 1)))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        GroupRingElement(std::array::from_fn(|i| &self.0[i] * k))
    }

    pub fn coeff(&self, g: S3) -> &Rational {
        &self.0[g.index()]
    }

    /// `chi_0`, sign character and the 2x2 block `rho(x)`.
    pub fn chi0(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn chi(&self) -> Rational {
        S3::all().iter().map(|g| &self.0[g.index()] * q(g.sign(), 1)).sum()
    }

    pub fn rho(&self) -> [[Rational; 2]; 2] {
        let mut m: [[Rational; 2]; 2] = Default::default();
        for g in S3::all() {
            let r = g.rho();
            for i in 0..2 {
                for j in 0..2 {
                    m[i][j] += &self.0[g.index()] * q(r[i][j], 1);
                }
            }
        }
        m
    }

    pub fn is_central(&self) -> bool {
        S3::all().iter().all(|&g| {
            let gx = &GroupRingElement::group(g) * self;
            let xg = self * &GroupRingElement::group(g);
            gx == xg
        })
    }

    pub fn is_l_integral(&self, l: u64) -> bool {
        self.0.iter().all(|c| l_adic_valuation(c, l).map_or(true, |v| v >= 0))
    }

    /// Matrix of `y -> y x` on the basis `S3::all()` (rows are images of basis vectors).
    pub fn right_multiplication_matrix(&self) -> Vec<Vec<Rational>> {
        S3::all()
            .iter()
            .map(|&g| (&GroupRingElement::group(g) * self).0.to_vec())
            .collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        let m = self.right_multiplication_matrix();
        let inv = inverse(&m).ok_or_else(|| Error::Singular(format!("{} is not invertible", self)))?;
        // the image of 1 under right multiplication by x^-1 is x^-1
        Ok(GroupRingElement(std::array::from_fn(|j| inv[0][j].clone())))
    }

    pub fn regular_determinant(&self) -> Rational {
        det(&self.right_multiplication_matrix())
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, o: &GroupRingElement) -> GroupRingElement {
        GroupRingElement(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, o: &GroupRingElement) -> GroupRingElement {
        GroupRingElement(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement(std::array::from_fn(|i| -&self.0[i]))
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, o: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for g in S3::all() {
            if self.0[g.index()].is_zero() {
                continue;
            }
            for h in S3::all() {
                out.0[g.mul(h).index()] += &self.0[g.index()] * &o.0[h.index()];
            }
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for g in S3::all() {
            let c = &self.0[g.index()];
            if !c.is_zero() {
                terms.push(if g == S3::ONE { fmt_rational(c) } else { format!("({})*{}", fmt_rational(c), g) });
            }
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

impl Serialize for GroupRingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(fmt_rational))
    }
}

/// `(e_chi0, e_chi, e_psi)`.
pub fn central_idempotents() -> [GroupRingElement; 3] {
    let e0 = GroupRingElement([q(1, 6), q(1, 6), q(1, 6), q(1, 6), q(1, 6), q(1, 6)]);
    let e1 = GroupRingElement([q(1, 6), q(1, 6), q(1, 6), q(-1, 6), q(-1, 6), q(-1, 6)]);
    let e2 = GroupRingElement([q(2, 3), q(-1, 3), q(-1, 3), q(0, 1), q(0, 1), q(0, 1)]);
    [e0, e1, e2]
}

/// Element mapping to the matrix unit `E_ij` under `rho` and to zero under both
/// one-dimensional characters: `(1/3) sum_g rho(g^-1)_ji g`.
pub fn psi_matrix_unit(i: usize, j: usize) -> GroupRingElement {
    GroupRingElement(std::array::from_fn(|k| {
        let g = S3(k as u8);
        q(g.inv().rho()[j][i], 3)
    }))
}

/// Components of a central element (the `psi` entry is the scalar by which `rho(x)` acts).
pub fn central_components(x: &GroupRingElement) -> Result<CentralVector> {
    let m = x.rho();
    if !m[0][1].is_zero() || !m[1][0].is_zero() || m[0][0] != m[1][1] {
        return Err(Error::Domain(format!("{} is not central", x)));
    }
    Ok(CentralVector::new(x.chi0(), x.chi(), m[0][0].clone()))
}

/// `(chi_0(x), chi(x), det rho(x))`; errors on a vanishing component.
pub fn reduced_norm(x: &GroupRingElement) -> Result<CentralVector> {
    let m = x.rho();
    let d = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    let v = CentralVector::new(x.chi0(), x.chi(), d);
    for (name, c) in ["chi0", "chi", "psi"].iter().zip(v.components()) {
        if c.is_zero() {
            return Err(Error::Singular(format!("reduced norm of {} vanishes at {}", x, name)));
        }
    }
    Ok(v)
}

pub fn from_central(v: &CentralVector) -> GroupRingElement {
    let [e0, e1, e2] = central_idempotents();
    let [a, b, c] = v.components();
    &(&e0.scale(a) + &e1.scale(b)) + &e2.scale(c)
}

/// Order `l^k` of `Z_(l)[G] / Z_(l)[G] theta`, or `None` when `theta` is a zero divisor.
pub fn quotient_order(theta: &GroupRingElement, l: u64) -> Result<Option<u64>> {
    if !theta.is_l_integral(l) {
        return Err(Error::Domain(format!("{} is not {}-integral", theta, l)));
    }
    let d = theta.regular_determinant();
    Ok(l_adic_valuation(&d, l).map(|v| l.pow(v as u32)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotents() {
        let [e0, e1, e2] = central_idempotents();
        let one = GroupRingElement::one();
        assert_eq!(&(&e0 + &e1) + &e2, one);
        assert!((&e0 * &e1).0.iter().all(|c| c.is_zero()));
        assert_eq!(&e1 * &e1, e1);
        assert_eq!(&e2 * &e2, e2);
        assert!(e0.is_central() && e1.is_central() && e2.is_central());
        assert_eq!(&psi_matrix_unit(0, 0) + &psi_matrix_unit(1, 1), e2);
    }

    #[test]
    fn matrix_units() {
        for i in 0..2 {
            for j in 0..2 {
                let e = psi_matrix_unit(i, j);
                let m = e.rho();
                for a in 0..2 {
                    for b in 0..2 {
                        assert_eq!(m[a][b], q((a == i && b == j) as i64, 1));
                    }
                }
                assert!(e.chi0().is_zero() && e.chi().is_zero());
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let x = GroupRingElement::from_ints([2, 1, 0, 0, 1, 0]);
        let y = x.inverse().unwrap();
        assert_eq!(&x * &y, GroupRingElement::one());
        assert_eq!(&y * &x, GroupRingElement::one());
    }
}
