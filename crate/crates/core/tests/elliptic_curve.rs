mod common;

use ebsd::elliptic_curve::*;
use ebsd::exact_arith::primes_up_to;

use common::{curve, data};

/// `q prod (1 - q^n)^2 (1 - q^(11 n))^2`, the weight-two newform of level 11.
fn eta_product(bound: usize) -> Vec<i64> {
    let mut c = vec![0i64; bound + 1];
    c[1] = 1;
    let mut times = |step: usize| {
        for _ in 0..2 {
            for n in (step..=bound).rev() {
                c[n] -= c[n - step];
            }
        }
    };
    for n in 1..bound {
        times(n);
        if 11 * n <= bound {
            times(11 * n);
        }
    }
    c
}

#[test]
fn config_matches_builtin() {
    let e = curve();
    assert_eq!(e, WeierstrassCurve::eleven_a1());
    e.validate().unwrap();
    assert_eq!(e.reduction(11).kind, ReductionKind::SplitMultiplicative);
    assert_eq!(e.reduction(11).tamagawa, 5);
    assert!(WeierstrassCurve::load(&data("missing.cfg")).is_err());
}

#[test]
fn traces_match_the_eta_product() {
    let e = curve();
    let q = eta_product(1000);
    for p in primes_up_to(1000) {
        assert_eq!(trace_ap(&e, p).unwrap(), q[p as usize], "p = {}", p);
    }
}

#[test]
fn hasse_bound() {
    let e = curve();
    for p in primes_up_to(1000).into_iter().filter(|&p| p != 11) {
        let a = trace_ap(&e, p).unwrap();
        assert!((a * a) as u64 <= 4 * p, "p = {}, a_p = {}", p, a);
    }
}

#[test]
fn counts_follow_the_frobenius_recursion() {
    let e = curve();
    for p in [2u64, 3, 5, 7, 229] {
        let a = trace_ap(&e, p).unwrap() as i128;
        let (mut s0, mut s1) = (2i128, a);
        for k in 1..=3u32 {
            let predicted = (p as i128).pow(k) + 1 - s1;
            assert_eq!(count_points(&e, p, k as usize).unwrap() as i128, predicted, "p = {}, k = {}", p, k);
            let s2 = a * s1 - p as i128 * s0;
            s0 = s1;
            s1 = s2;
        }
    }
}

#[test]
fn counts_at_eleven_and_229() {
    let e = curve();
    assert_eq!(count_points(&e, 11, 3).unwrap(), 1330);
    assert_eq!(count_points(&e, 229, 1).unwrap(), 215);
    assert_eq!(trace_ap(&e, 229).unwrap(), 15);
    assert_eq!(torsion_bound(&[1330, 215]).unwrap(), 5);
}

#[test]
fn rational_torsion() {
    let e = curve();
    let p = Point::affine(5, 5);
    assert_eq!(e.point_order(&p, 10), Some(5));
    let multiples: Vec<Point> = (1..5).map(|k| e.multiply(&p, k)).collect();
    assert!(multiples.contains(&Point::affine(16, -61)));
    assert!(multiples.contains(&Point::affine(5, -6)));
}

#[test]
fn periods() {
    let pp = real_periods(&curve(), 40).unwrap();
    assert_eq!(pp.shape, LatticeShape::NonRectangular);
    assert!(pp.omega_plus.to_f64() > 1.2692 && pp.omega_plus.to_f64() < 1.2693);
    assert!(pp.omega_minus_over_i.to_f64() > 0.0);
}

#[test]
fn cache_directory_roundtrip() {
    let dir = std::env::temp_dir().join(format!("ebsd-cache-test-{}", std::process::id()));
    let e = curve();
    let first = ApCache::persistent(&e, &dir).unwrap().up_to(&e, 300).unwrap();
    let second = ApCache::persistent(&e, &dir).unwrap().up_to(&e, 300).unwrap();
    assert_eq!(first, second);
    assert!(dir.join(ApCache::file_name(&e)).exists());
    std::fs::remove_dir_all(&dir).unwrap();
}
