use serde::Serialize;

use super::SexticField;
use crate::error::{Error, Result};
use crate::exact_arith::{int_valuation, is_prime};
use crate::s3_algebra::ConjugacyClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceData {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    pub g: u32,
    /// Class of a Frobenius element; at ramified primes, of its image modulo inertia.
    pub frobenius_class: ConjugacyClass,
    pub inertia_class: Option<ConjugacyClass>,
}

impl PlaceData {
    pub fn is_ramified(&self) -> bool {
        self.e > 1
    }

    /// Order of a decomposition group.
    pub fn decomposition_order(&self) -> u32 {
        self.e * self.f
    }
}

/// Splitting of `p` in `K` from the factorisation of the cubic mod `p`.
pub fn splitting_type(field: &SexticField, p: u64) -> Result<PlaceData> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{} is not prime", p)));
    }
    let mut pattern = field.cubic_factor_degrees(p)?;
    pattern.sort();
    let place = |e, f, g, frob, inertia| PlaceData { p, e, f, g, frobenius_class: frob, inertia_class: inertia };
    if field.d % p != 0 {
        return Ok(match pattern.as_slice() {
            [(1, 1), (1, 1), (1, 1)] => place(1, 1, 6, ConjugacyClass::Identity, None),
            [(1, 1), (2, 1)] => place(1, 2, 3, ConjugacyClass::Transposition, None),
            [(3, 1)] => place(1, 3, 2, ConjugacyClass::ThreeCycle, None),
            other => return Err(Error::Numeric(format!("unexpected factorisation pattern {:?} mod {}", other, p))),
        });
    }
    if int_valuation(&field.d.into(), p) > 1 {
        return Err(Error::Unsupported(format!(
            "{} divides the discriminant to a higher power; the splitting needs the integral basis path",
            p
        )));
    }
    match pattern.as_slice() {
        [(1, 1), (1, 2)] | [(1, 2), (1, 1)] => Ok(place(2, 1, 3, ConjugacyClass::Identity, Some(ConjugacyClass::Transposition))),
        [(1, 3)] => Ok(place(3, 1, 2, ConjugacyClass::Identity, Some(ConjugacyClass::ThreeCycle))),
        other => Err(Error::Numeric(format!("unexpected ramified pattern {:?} mod {}", other, p))),
    }
}
