//! The element `xi_l` of the centre of `Q_l[S3]` attached to the finite cohomology at `l`.

use num_traits::One;
use serde::Serialize;

use crate::elliptic_curve::{count_points, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::exact_arith::{int, l_adic_valuation, l_part, rat, Rational};
use crate::lfunc_numeric::twist_euler_factor;
use crate::number_field::{splitting_type, PlaceData, SexticField};
use crate::s3_algebra::{
    epsilon_from_presentation, phi_l_epsilon, reduced_norm, CentralVector, Character, ConjugacyClass, EpsilonFactor,
    GroupRingElement, S3,
};

/// One factor of `xi_l`: the class `epsilon`, raised to `exponent`.
#[derive(Clone, Debug, Serialize)]
pub struct XiFactor {
    pub name: String,
    pub source: String,
    pub epsilon: CentralVector,
    pub exponent: i32,
    pub contribution: CentralVector,
}

#[derive(Clone, Debug, Serialize)]
pub struct DoubleEntry {
    /// `2 v_l(|E(Q)_tors|) - sum_q v_l(c_q)`.
    pub expected: i64,
    pub found: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct XiAssembly {
    pub l: u64,
    pub place: PlaceData,
    pub factors: Vec<XiFactor>,
    pub product: CentralVector,
    pub valuations: [i64; 3],
    pub double_entry: DoubleEntry,
}

impl XiAssembly {
    /// Product after multiplying factor `i` by `nr(g)`.
    pub fn with_twisted_factor(&self, i: usize, g: S3) -> Result<CentralVector> {
        let t = reduced_norm(&GroupRingElement::group(g))?;
        let mut p = CentralVector::one();
        for (j, f) in self.factors.iter().enumerate() {
            let c = if j == i { f.contribution.mul(&t) } else { f.contribution.clone() };
            p = p.mul(&c);
        }
        Ok(p)
    }
}

/// Data shared by the assemblies at every `l`.
#[derive(Clone, Debug)]
pub struct XiInputs<'a> {
    pub curve: &'a WeierstrassCurve,
    pub field: &'a SexticField,
    pub torsion_k: u64,
    pub torsion_q: u64,
    pub assume_sha_trivial: bool,
}

impl XiInputs<'_> {
    /// Bad primes of the curve together with the primes ramified in the field.
    pub fn finite_bad_set(&self) -> Vec<u64> {
        let mut s: Vec<u64> = self.curve.bad.keys().copied().collect();
        for (p, _) in crate::exact_arith::factorize(self.field.d) {
            if !s.contains(&p) {
                s.push(p);
            }
        }
        s.sort();
        s
    }
}

fn idempotent(elements: &[S3]) -> GroupRingElement {
    let mut x = GroupRingElement::zero();
    for &g in elements {
        x = &x + &GroupRingElement::group(g);
    }
    x.scale(&rat(1, elements.len() as i64))
}

/// `e_H` for the subgroup generated by a representative of `class`.
fn cyclic_idempotent(class: Option<ConjugacyClass>) -> GroupRingElement {
    match class {
        None | Some(ConjugacyClass::Identity) => GroupRingElement::one(),
        Some(ConjugacyClass::Transposition) => idempotent(&[S3::ONE, S3::R]),
        Some(ConjugacyClass::ThreeCycle) => idempotent(&[S3::ONE, S3::S, S3::S2]),
    }
}

fn decomposition_idempotent(place: &PlaceData) -> GroupRingElement {
    match (place.e, place.f) {
        (1, _) => cyclic_idempotent(Some(place.frobenius_class)),
        (e, 1) => cyclic_idempotent(place.inertia_class.or(Some(if e == 2 {
            ConjugacyClass::Transposition
        } else {
            ConjugacyClass::ThreeCycle
        }))),
        _ => idempotent(&S3::all()),
    }
}

/// `epsilon(Ind_H^G Z/m)` from `1 + (m - 1) e_H`.
fn induced_trivial(l: u64, m: u64, e_h: &GroupRingElement, index: u32) -> Result<EpsilonFactor> {
    let theta = &GroupRingElement::one() + &e_h.scale(&int(m as i64 - 1));
    epsilon_from_presentation(&theta, l, m.pow(index))
}

fn lpart_u64(n: u64, l: u64) -> u64 {
    let mut m = 1;
    let mut n = n;
    while n % l == 0 {
        n /= l;
        m *= l;
    }
    m
}

/// `epsilon(+_{v | l} k_v)`: the residue fields form `Ind_I^G F_l`, presented by `1 + (l - 1) e_I`.
pub fn epsilon_residue_fields(field: &SexticField, l: u64) -> Result<EpsilonFactor> {
    let place = splitting_type(field, l)?;
    let e_i = if place.is_ramified() { cyclic_idempotent(place.inertia_class) } else { GroupRingElement::one() };
    induced_trivial(l, l, &e_i, 6 / place.e)
}

/// `u_l = epsilon(E(K)[l^oo])^2` for torsion with trivial Galois action.
pub fn torsion_term(inputs: &XiInputs, l: u64) -> Result<EpsilonFactor> {
    let m = lpart_u64(inputs.torsion_k, l);
    if m != lpart_u64(inputs.torsion_q, l) {
        return Err(Error::Unsupported(format!("{}-torsion over the field is not rational", l)));
    }
    let eps = induced_trivial(l, m, &idempotent(&S3::all()), 1)?;
    Ok(EpsilonFactor { value: eps.value.mul(&eps.value), ..eps })
}

/// `epsilon(Ind_D^G E(k_v)[l^oo])` over the places `v` above `place.p`, split into the
/// `D`-invariant piece and its complement.
fn reduction_epsilon(inputs: &XiInputs, l: u64, place: &PlaceData) -> Result<(CentralVector, String)> {
    let p = place.p;
    let n1 = count_points(inputs.curve, p, 1)?;
    let m1 = lpart_u64(n1, l);
    let mf = if place.f > 1 {
        let nf = count_points(inputs.curve, p, place.f as usize)?;
        lpart_u64(nf / n1, l)
    } else {
        1
    };
    let source = format!("|E_ns(F_{})| = {}, residue degree {}, {}-parts {} and {}", p, n1, place.f, l, m1, mf);
    if m1 == 1 && mf == 1 {
        return Ok((CentralVector::one(), source));
    }
    if place.is_ramified() {
        return Err(Error::Unsupported(format!("nontrivial reduction module at ramified {} ({})", p, source)));
    }
    let trivial = induced_trivial(l, m1, &decomposition_idempotent(place), 6 / place.decomposition_order())?;
    let rest = if place.f > 1 { phi_l_epsilon(l, place.f, mf)?.value } else { CentralVector::one() };
    Ok((trivial.value.mul(&rest), source))
}

/// `epsilon(Phi_l)` for the places above `l`.
pub fn phi_tilde(inputs: &XiInputs, l: u64, place: &PlaceData) -> Result<(CentralVector, String)> {
    let (eps, source) = reduction_epsilon(inputs, l, place)?;
    if l <= 3 && !eps.is_one() {
        return Err(Error::Validation {
            hypothesis: "finite projective dimension".into(),
            detail: format!("Phi_{} is nontrivial ({})", l, source),
        });
    }
    Ok((eps, source))
}

/// `epsilon` of the component modules above a bad prime `q`, `(Z/m)[G]` for `m` the
/// `l`-part of `c_q`.
pub fn component_term(inputs: &XiInputs, l: u64, q: u64) -> Result<EpsilonFactor> {
    let c = inputs.curve.bad.get(&q).map(|r| r.tamagawa).unwrap_or(1);
    let m = lpart_u64(c, l);
    let theta = GroupRingElement::one().scale(&int(m as i64));
    epsilon_from_presentation(&theta, l, m.pow(6))
}

/// The same modules in the extended form `(Z/m)[G] + Ind_D^G E(k_v)[l^oo]`.
pub fn component_term_extended(inputs: &XiInputs, l: u64, q: u64) -> Result<CentralVector> {
    let base = component_term(inputs, l, q)?.value;
    let place = splitting_type(inputs.field, q)?;
    let (reduction, _) = reduction_epsilon(inputs, l, &place)?;
    Ok(base.mul(&reduction))
}

/// `sum_eta P_q(E (x) eta, 1/q) e_eta`, the inverse local L-vector.
pub fn local_l_inverse(inputs: &XiInputs, q: u64) -> Result<CentralVector> {
    let mut v: [Rational; 3] = std::array::from_fn(|_| Rational::one());
    for eta in Character::all() {
        v[eta.index()] = twist_euler_factor(inputs.curve, inputs.field, eta, q)?.value_at_one();
    }
    Ok(CentralVector(v))
}

fn lpart_vector(v: &CentralVector, l: u64) -> CentralVector {
    CentralVector(std::array::from_fn(|i| l_part(&v.0[i], l)))
}

fn factor(name: &str, source: String, epsilon: CentralVector, exponent: i32) -> Result<XiFactor> {
    let contribution = epsilon.pow(exponent as i64)?;
    Ok(XiFactor { name: name.into(), source, epsilon, exponent, contribution })
}

pub fn assemble_xi(inputs: &XiInputs, l: u64) -> Result<XiAssembly> {
    if !inputs.assume_sha_trivial {
        return Err(Error::Config(format!("the assembly at l = {} needs the Sha assumption", l)));
    }
    let place = splitting_type(inputs.field, l)?;
    let s_f = inputs.finite_bad_set();
    let mut factors = Vec::new();

    let k = epsilon_residue_fields(inputs.field, l)?;
    factors.push(factor(
        "residue_fields",
        format!("1 + (l - 1) e_I, (e, f, g) = ({}, {}, {})", place.e, place.f, place.g),
        k.value,
        1,
    )?);
    let u = torsion_term(inputs, l)?;
    factors.push(factor("torsion", format!("|E(K)_tors| = {}", inputs.torsion_k), u.value, 1)?);
    let (phi, src) = phi_tilde(inputs, l, &place)?;
    factors.push(factor("phi_l", src, phi, -1)?);

    for &q in s_f.iter().filter(|&&q| q != l) {
        let c = component_term(inputs, l, q)?;
        let cq = inputs.curve.bad.get(&q).map(|r| r.tamagawa).unwrap_or(1);
        factors.push(factor(&format!("components_{}", q), format!("c_{} = {}", q, cq), c.value, -1)?);
        let lq = local_l_inverse(inputs, q)?.inv()?;
        let qplace = splitting_type(inputs.field, q)?;
        let (rg, src) = if qplace.e as u64 % l == 0 {
            (CentralVector::one(), format!("l divides |I_{}| = {}", q, qplace.e))
        } else {
            (lpart_vector(&lq, l), format!("l-parts of L_{}(E (x) eta, 1)", q))
        };
        factors.push(factor(&format!("local_finite_{}", q), src, rg, 1)?);
    }

    let mut l_set: Vec<u64> = s_f.clone();
    if !l_set.contains(&l) {
        l_set.push(l);
    }
    l_set.sort();
    for q in l_set {
        let v = local_l_inverse(inputs, q)?;
        factors.push(factor(&format!("local_l_{}", q), format!("P_{}(E (x) eta, 1/{})", q, q), v, 1)?);
    }

    let product = factors.iter().fold(CentralVector::one(), |acc, f| acc.mul(&f.contribution));
    let vals = product.valuations(l);
    let valuations = std::array::from_fn(|i| vals[i].expect("xi has no zero component"));

    let expected = 2 * l_adic_valuation(&int(inputs.torsion_q as i64), l).unwrap_or(0)
        - inputs
            .curve
            .bad
            .values()
            .map(|r| l_adic_valuation(&int(r.tamagawa as i64), l).unwrap_or(0))
            .sum::<i64>();
    let double_entry = DoubleEntry { expected, found: valuations[0], holds: expected == valuations[0] };
    Ok(XiAssembly { l, place, factors, product, valuations, double_entry })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic_curve::WeierstrassCurve;

    fn field() -> SexticField {
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/field.cfg");
        SexticField::load(&path).unwrap()
    }

    #[test]
    fn residue_field_terms() {
        let k = field();
        assert_eq!(epsilon_residue_fields(&k, 7).unwrap().value, CentralVector::from_ints(7, 7, 49));
        assert_eq!(epsilon_residue_fields(&k, 5).unwrap().value, CentralVector::from_ints(5, 5, 25));
        assert_eq!(epsilon_residue_fields(&k, 229).unwrap().value, CentralVector::from_ints(229, 1, 229));
    }

    #[test]
    fn xi_at_five() {
        let (e, k) = (WeierstrassCurve::eleven_a1(), field());
        let inputs = XiInputs { curve: &e, field: &k, torsion_k: 5, torsion_q: 5, assume_sha_trivial: true };
        let xi = assemble_xi(&inputs, 5).unwrap();
        assert_eq!(xi.valuations, [1, -1, -2]);
        assert!(xi.double_entry.holds);
        assert_eq!(component_term_extended(&inputs, 5, 11).unwrap(), CentralVector::from_ints(25, 25, 25));
        let no_sha = XiInputs { assume_sha_trivial: false, ..inputs };
        assert!(matches!(assemble_xi(&no_sha, 5), Err(Error::Config(_))));
    }
}
