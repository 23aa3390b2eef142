use std::fmt;

use serde::Serialize;

use super::group::S3;
use super::ring::{from_central, psi_matrix_unit, quotient_order, reduced_norm, GroupRingElement};
use super::CentralVector;
use crate::error::{Error, Result};
use crate::exact_arith::{fmt_rational, l_adic_valuation, Rational};

/// `epsilon(N)` for a finite module `N`, as the reduced norm of a presentation
/// `0 -> Z_l[G] --(.theta)--> Z_l[G] -> N -> 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EpsilonFactor {
    pub l: u64,
    pub value: CentralVector,
    pub theta: Option<GroupRingElement>,
    pub module_order: u64,
}

/// Reduced norm of `theta`, after checking that the quotient it presents has the claimed order.
pub fn epsilon_from_presentation(theta: &GroupRingElement, l: u64, expected_order: u64) -> Result<EpsilonFactor> {
    let order = quotient_order(theta, l)?
        .ok_or_else(|| Error::Presentation(format!("{} is a zero divisor", theta)))?;
    if order != expected_order {
        return Err(Error::Presentation(format!(
            "{} presents a module of order {}, expected {}",
            theta, order, expected_order
        )));
    }
    Ok(EpsilonFactor { l, value: reduced_norm(theta)?, theta: Some(theta.clone()), module_order: order })
}

/// `epsilon(Phi_l)` for `Phi_l = Ind_D^G` of the `l`-part of the reduction, `D` the
/// decomposition group of residue degree `f` and `lpart = |E(F_(l^f))[l^oo]|` on the
/// relevant `D`-isotypic piece.
pub fn phi_l_epsilon(l: u64, f: u32, lpart: u64) -> Result<EpsilonFactor> {
    if lpart == 1 {
        return Ok(EpsilonFactor { l, value: CentralVector::one(), theta: Some(GroupRingElement::one()), module_order: 1 });
    }
    let m = Rational::from_integer((lpart - 1).into());
    let one = GroupRingElement::one();
    let (theta, order) = match f {
        2 => {
            let r = GroupRingElement::group(S3::R);
            let half = (&one - &r).scale(&crate::exact_arith::rat(1, 2));
            (&one + &half.scale(&m), lpart.pow(3))
        }
        3 => (&one + &psi_matrix_unit(0, 0).scale(&m), lpart.pow(2)),
        _ => {
            return Err(Error::Domain(format!(
                "residue degree {} with nontrivial {}-part {} cannot occur for l > 5",
                f, l, lpart
            )))
        }
    };
    epsilon_from_presentation(&theta, l, order)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    PassViaTorsionUnit(String),
    Inconclusive(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        !matches!(self, Verdict::Inconclusive(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("PASS"),
            Verdict::PassViaTorsionUnit(g) => write!(f, "PASS_VIA_TORSION_UNIT({})", g),
            Verdict::Inconclusive(w) => write!(f, "INCONCLUSIVE({})", w),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Sufficient test for `x` to lie in `nr(K_1(Z_l[S3]))`.
pub fn k1_membership(x: &CentralVector, l: u64) -> Result<Verdict> {
    if !x.is_invertible() {
        return Err(Error::Domain(format!("{} has a zero component", x)));
    }
    let vals = x.valuations(l);
    let witness = || format!("v_{} = ({}, {}, {})", l, vals[0].unwrap(), vals[1].unwrap(), vals[2].unwrap());
    if l != 2 && l != 3 {
        return Ok(if x.is_l_unit(l) { Verdict::Pass } else { Verdict::Inconclusive(witness()) });
    }
    let twists = [
        ("1", CentralVector::from_ints(1, 1, 1)),
        ("r", CentralVector::from_ints(1, -1, -1)),
        ("-1", CentralVector::from_ints(-1, -1, 1)),
        ("-r", CentralVector::from_ints(-1, 1, -1)),
    ];
    for (name, t) in twists {
        let y = t.mul(x);
        if from_central(&y).is_l_integral(l) && from_central(&y.inv()?).is_l_integral(l) {
            return Ok(if name == "1" { Verdict::Pass } else { Verdict::PassViaTorsionUnit(name.to_string()) });
        }
    }
    let residues: Vec<String> = x
        .0
        .iter()
        .map(|c| {
            if l_adic_valuation(c, l) == Some(0) {
                let m = num_bigint::BigInt::from(l);
                format!("{}/{} mod {}", c.numer() % &m, c.denom() % &m, l)
            } else {
                fmt_rational(c)
            }
        })
        .collect();
    Ok(Verdict::Inconclusive(format!("{}; components {}", witness(), residues.join(", "))))
}
