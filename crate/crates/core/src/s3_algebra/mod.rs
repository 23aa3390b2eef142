//! The rational group ring of S3, its centre `Q x Q x Q` indexed by the
//! characters `(chi_0, chi, psi)`, reduced norms and epsilon-classes of
//! finite modules.

mod epsilon;
mod group;
mod ring;

pub use epsilon::{epsilon_from_presentation, k1_membership, phi_l_epsilon, EpsilonFactor, Verdict};
pub use group::{Character, ConjugacyClass, Mat2, S3, RHO_R, RHO_S};
pub use ring::{
    central_components, central_idempotents, from_central, psi_matrix_unit, quotient_order, reduced_norm,
    GroupRingElement,
};

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_arith::{fmt_rational, l_adic_valuation, Rational};

/// An element of the centre, by its scalar components at `chi_0`, `chi` and `psi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CentralVector(pub [Rational; 3]);

impl CentralVector {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        CentralVector([a, b, c])
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        CentralVector([a, b, c].map(|n| Rational::from_integer(n.into())))
    }

    pub fn one() -> Self {
        CentralVector::from_ints(1, 1, 1)
    }

    pub fn components(&self) -> [&Rational; 3] {
        [&self.0[0], &self.0[1], &self.0[2]]
    }

    pub fn mul(&self, o: &CentralVector) -> CentralVector {
        CentralVector(std::array::from_fn(|i| &self.0[i] * &o.0[i]))
    }

    pub fn is_invertible(&self) -> bool {
        self.0.iter().all(|c| !c.is_zero())
    }

    pub fn inv(&self) -> Result<CentralVector> {
        if !self.is_invertible() {
            return Err(Error::Singular(format!("central vector {} has a zero component", self)));
        }
        Ok(CentralVector(std::array::from_fn(|i| self.0[i].recip())))
    }

    pub fn pow(&self, e: i64) -> Result<CentralVector> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = CentralVector::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// `v_l` of each component; `None` marks a zero component.
    pub fn valuations(&self, l: u64) -> [Option<i64>; 3] {
        std::array::from_fn(|i| l_adic_valuation(&self.0[i], l))
    }

    pub fn is_l_unit(&self, l: u64) -> bool {
        self.valuations(l).iter().all(|v| *v == Some(0))
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|c| c.is_one())
    }

    pub fn to_strings(&self) -> [String; 3] {
        std::array::from_fn(|i| fmt_rational(&self.0[i]))
    }
}

impl fmt::Display for CentralVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.to_strings();
        write!(f, "({}, {}, {})", a, b, c)
    }
}

impl Serialize for CentralVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.to_strings())
    }
}
