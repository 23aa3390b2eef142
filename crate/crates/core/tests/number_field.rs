mod common;

use std::sync::OnceLock;

use ebsd::exact_arith::{primes_up_to, rat, Rational, Real};
use ebsd::number_field::*;
use ebsd::s3_algebra::{Character, ConjugacyClass, S3};
use num_traits::Zero;
use proptest::prelude::*;

fn k() -> &'static SexticField {
    static K: OnceLock<SexticField> = OnceLock::new();
    K.get_or_init(common::field)
}

fn element() -> impl Strategy<Value = KElem> {
    prop::array::uniform6(-9i64..=9).prop_map(|c| {
        let coords: Vec<Rational> = c.iter().map(|&x| rat(x, 1)).collect();
        k().from_basis_coords(&coords)
    })
}

/// Roots of `x^3 - 4x + 1` in `F_p` by exhaustion.
fn roots_mod(p: u64) -> usize {
    let p = p as i128;
    (0..p).filter(|&x| (x * x % p * x - 4 * x + 1).rem_euclid(p) == 0).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn galois_acts_by_ring_automorphisms(x in element(), y in element()) {
        let k = k();
        for g in S3::all() {
            prop_assert_eq!(k.galois_apply(g, &k.mul(&x, &y)), k.mul(&k.galois_apply(g, &x), &k.galois_apply(g, &y)));
            prop_assert_eq!(k.galois_apply(g, &k.add(&x, &y)), k.add(&k.galois_apply(g, &x), &k.galois_apply(g, &y)));
            let gx = k.galois_apply(g, &x);
            prop_assert!(k.is_integral(&gx));
            prop_assert_eq!(k.norm(&gx), k.norm(&x));
            for h in S3::all() {
                prop_assert_eq!(k.galois_apply(g.mul(h), &x), k.galois_apply(g, &k.galois_apply(h, &x)));
            }
        }
    }
}

#[test]
fn discriminant_is_229_cubed() {
    assert_eq!(k().discriminant(), rat(229i64.pow(3), 1));
    assert_eq!(k().d, 229);
}

#[test]
fn frobenius_distribution() {
    let primes: Vec<u64> = primes_up_to(4000).into_iter().filter(|&p| p != 229).take(500).collect();
    assert_eq!(primes.len(), 500);
    let mut counts = [0usize; 3];
    for &p in &primes {
        let place = splitting_type(k(), p).unwrap();
        let want = match roots_mod(p) {
            3 => ConjugacyClass::Identity,
            1 => ConjugacyClass::Transposition,
            0 => ConjugacyClass::ThreeCycle,
            n => panic!("{} roots mod {}", n, p),
        };
        assert_eq!(place.frobenius_class, want, "p = {}", p);
        assert_eq!(place.e * place.f * place.g, 6);
        counts[match want {
            ConjugacyClass::Identity => 0,
            ConjugacyClass::Transposition => 1,
            ConjugacyClass::ThreeCycle => 2,
        }] += 1;
    }
    for (c, density) in counts.iter().zip([1.0 / 6.0, 0.5, 1.0 / 3.0]) {
        assert!((*c as f64 / 500.0 - density).abs() < 0.1, "{:?}", counts);
    }
    let p229 = splitting_type(k(), 229).unwrap();
    assert_eq!((p229.e, p229.f, p229.g), (2, 1, 3));
}

/// The resolvents as exact elements of `K`, through the Galois action alone.
fn exact_resolvent(alpha: &KElem, eta: Character) -> KElem {
    let k = k();
    let conj: Vec<KElem> = S3::all().iter().map(|&g| k.galois_apply(g, alpha)).collect();
    let weighted = |f: &dyn Fn(S3) -> i64| {
        S3::all().iter().fold(k.constant(&Rational::zero()), |acc, &g| {
            k.add(&acc, &k.scale(&conj[g.index()], &rat(f(g), 1)))
        })
    };
    match eta {
        Character::Chi0 | Character::Chi => weighted(&|g| eta.value(g.inv())),
        Character::Psi => {
            let m = |i: usize, j: usize| weighted(&|g: S3| g.inv().rho()[i][j]);
            k.sub(&k.mul(&m(0, 0), &m(1, 1)), &k.mul(&m(0, 1), &m(1, 0)))
        }
    }
}

#[test]
fn resolvent_determinants() {
    let k = k();
    let alpha = k.alpha0.clone().unwrap();
    let prec = 240;
    let root = Real::from_int(229, prec).sqrt();
    let mut pattern = Vec::new();
    for eta in Character::all() {
        let r = resolvent_det(k, &alpha, eta, 60, 1_000_000).unwrap();
        let exact = exact_resolvent(&alpha, eta);
        let rational = exact[1..3].iter().chain(&exact[4..6]).all(|c| c.is_zero());
        assert!(rational, "{:?}: {:?}", eta, exact);
        let (a, b) = (&exact[0], &exact[3]);
        assert!(a.is_zero() || b.is_zero());
        let has_root = !b.is_zero();
        pattern.push(has_root);
        let q = if has_root { b } else { a };
        assert_eq!(r.exact.q, *q);
        assert_eq!(r.exact.c, has_root as u8);
        let want = if has_root { &Real::from_rational(q, prec) * &root } else { Real::from_rational(q, prec) };
        let err = (&r.numeric - &want).to_f64().abs();
        assert!(err < 1e-55 * want.to_f64().abs().max(1.0), "{:?}: {:e}", eta, err);
        let square = &exact_squared(q, has_root) - &r.numeric.sqr();
        assert!(square.to_f64().abs() < 1e-50 * r.numeric.sqr().to_f64().abs().max(1.0));
    }
    assert_eq!(pattern, [false, true, true]);
}

fn exact_squared(q: &Rational, has_root: bool) -> Real {
    let s = q * q * if has_root { rat(229, 1) } else { rat(1, 1) };
    Real::from_rational(&s, 240)
}

#[test]
fn local_generators() {
    let k = k();
    let alpha = k.alpha0.clone().unwrap();
    for l in [2u64, 3, 5, 7, 11, 13, 229] {
        assert!(local_generator_test(k, &alpha, l).unwrap(), "l = {}", l);
    }
    k.validate(Some(11)).unwrap();
    assert!(k.validate(Some(229)).is_err());
}
