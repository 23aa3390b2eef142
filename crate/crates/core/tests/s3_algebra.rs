use ebsd::exact_arith::{l_adic_valuation, rat, Rational};
use ebsd::s3_algebra::*;
use proptest::prelude::*;

fn element() -> impl Strategy<Value = GroupRingElement> {
    prop::array::uniform6(-6i64..=6).prop_map(GroupRingElement::from_ints)
}

fn central(a: i64, b: i64, c: i64) -> GroupRingElement {
    from_central(&CentralVector::from_ints(a, b, c))
}

/// The regular representation splits as `chi_0 + chi + 2 psi`.
fn regular_det_from_norm(v: &CentralVector) -> Rational {
    let [a, b, c] = v.components();
    a * b * c * c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduced_norm_is_multiplicative(x in element(), y in element()) {
        let (Ok(nx), Ok(ny)) = (reduced_norm(&x), reduced_norm(&y)) else {
            return Ok(());
        };
        prop_assert_eq!(reduced_norm(&(&x * &y)).unwrap(), nx.mul(&ny));
        prop_assert_eq!(x.regular_determinant(), regular_det_from_norm(&nx));
    }

    #[test]
    fn quotient_order_is_multiplicative(x in element(), y in element(), i in 0usize..4) {
        let l = [2u64, 3, 5, 7][i];
        let (Some(a), Some(b)) = (quotient_order(&x, l).unwrap(), quotient_order(&y, l).unwrap()) else {
            return Ok(());
        };
        prop_assert_eq!(quotient_order(&(&x * &y), l).unwrap(), Some(a * b));
    }

    #[test]
    fn membership_ignores_unit_factors(
        a in 1i64..200, b in 1i64..200, c in 1i64..200,
        u in prop::array::uniform3(1i64..60),
        g in 0u8..6,
        i in 0usize..5,
    ) {
        let l = [5u64, 7, 11, 13, 229][i];
        prop_assume!(u.iter().all(|&x| x as u64 % l != 0));
        let x = CentralVector::from_ints(a, b, c);
        let unit = CentralVector::from_ints(u[0], u[1], u[2]).mul(&reduced_norm(&GroupRingElement::group(S3(g))).unwrap());
        let before = k1_membership(&x, l).unwrap();
        let after = k1_membership(&x.mul(&unit), l).unwrap();
        prop_assert_eq!(before.passed(), after.passed());
    }
}

#[test]
fn group_elements_have_norm_sign() {
    for g in S3::all() {
        let s = g.sign();
        assert_eq!(reduced_norm(&GroupRingElement::group(g)).unwrap(), CentralVector::from_ints(1, s, s));
    }
}

#[test]
fn idempotent_presentations() {
    let cases = [
        (central(5, 1, 1), 5, CentralVector::from_ints(5, 1, 1)),
        (central(25, 1, 1), 25, CentralVector::from_ints(25, 1, 1)),
        (central(5, 5, 1), 25, CentralVector::from_ints(5, 5, 1)),
        (central(25, 25, 5), 5u64.pow(8), CentralVector::from_ints(25, 25, 25)),
    ];
    for (theta, order, nr) in cases {
        let e = epsilon_from_presentation(&theta, 5, order).unwrap();
        assert_eq!(e.value, nr);
        assert_eq!(e.module_order, order);
    }
    assert!(epsilon_from_presentation(&central(5, 1, 1), 5, 25).is_err());
    let expanded = central(5, 1, 1);
    let want = &GroupRingElement::one() + &central_idempotents()[0].scale(&rat(4, 1));
    assert_eq!(expanded, want);
    assert_eq!(*expanded.coeff(S3::ONE), rat(5, 3));
}

#[test]
fn phi_l_presentations() {
    for l in [7u64, 13, 19, 31] {
        let li = l as i64;
        for (f, nr, idx) in [(2u32, CentralVector::from_ints(1, li, li), 3u32), (3, CentralVector::from_ints(1, 1, li), 2)] {
            let e = phi_l_epsilon(l, f, l).unwrap();
            assert_eq!(e.value, nr, "l = {}, f = {}", l, f);
            assert_eq!(e.module_order, l.pow(idx));
            let theta = e.theta.unwrap();
            assert!(theta.is_l_integral(l));
            assert_eq!(l_adic_valuation(&theta.regular_determinant(), l), Some(idx as i64));
        }
    }
}

#[test]
fn membership_at_small_primes() {
    assert_eq!(k1_membership(&CentralVector::from_ints(5, 1, 1), 7).unwrap(), Verdict::Pass);
    assert!(!k1_membership(&CentralVector::from_ints(5, 1, 1), 5).unwrap().passed());
    assert!(k1_membership(&CentralVector::from_ints(-1, 1, -1), 2).unwrap().passed());
    assert!(k1_membership(&CentralVector::from_ints(0, 1, 1), 7).is_err());
}
