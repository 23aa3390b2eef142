use ebsd::elliptic_curve::{trace_ap, WeierstrassCurve};
use ebsd::exact_arith::{kronecker, primes_up_to, rank, QMatrix, Rational};
use ebsd::modular_symbols::*;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

// P^1(Z/N) enumerated independently: (1:d) for d < N then (0:1)
fn brute_force_dimension(n: i64) -> usize {
    let idx = |c: i64, d: i64| -> usize {
        let (c, d) = (c.rem_euclid(n), d.rem_euclid(n));
        if c == 0 {
            return n as usize;
        }
        let ci = (1..n).find(|x| (x * c) % n == 1).unwrap();
        ((d * ci) % n) as usize
    };
    let pts: Vec<(i64, i64)> = (0..n).map(|d| (1, d)).chain(std::iter::once((0, 1))).collect();
    let mut rows: QMatrix = Vec::new();
    for &(c, d) in &pts {
        let mut r = vec![Rational::zero(); pts.len()];
        r[idx(c, d)] += q(1);
        r[idx(d, -c)] += q(1);
        rows.push(r);
        let mut r = vec![Rational::zero(); pts.len()];
        r[idx(c, d)] += q(1);
        r[idx(d, -c - d)] += q(1);
        r[idx(-c - d, c)] += q(1);
        rows.push(r);
    }
    pts.len() - rank(&rows)
}

fn genus_x0(p: i64) -> i64 {
    let nu2 = if p == 2 { 1 } else { 1 + kronecker(-4, p as u64) };
    let nu3 = if p == 3 { 1 } else { 1 + kronecker(-3, p as u64) };
    // 12 g = p + 1 - 3 nu2 - 4 nu3 - 6 nu_inf + 12
    (p + 1 - 3 * nu2 - 4 * nu3 - 12 + 12) / 12
}

#[test]
fn dimensions_match_rank_and_genus() {
    for (n, cusp) in [(2u64, 0usize), (11, 2), (37, 4)] {
        let m = ManinSymbolSpace::new(n).unwrap();
        assert_eq!(m.cuspidal_dimension(), cusp);
        assert_eq!(m.dimension(), brute_force_dimension(n as i64));
        assert_eq!(m.cuspidal_dimension() as i64, 2 * genus_x0(n as i64));
        assert_eq!(m.dimension(), m.cuspidal_dimension() + 1);
    }
    for n in [13u64, 23, 43, 61] {
        let m = ManinSymbolSpace::new(n).unwrap();
        assert_eq!(m.cuspidal_dimension() as i64, 2 * genus_x0(n as i64), "level {}", n);
    }
}

#[test]
fn manin_relations_hold_in_the_quotient() {
    for n in [11i64, 37] {
        let m = ManinSymbolSpace::new(n as u64).unwrap();
        for c in 0..n {
            for d in 0..n {
                if c == 0 && d == 0 {
                    continue;
                }
                let two: Vec<Rational> = m.symbol(c, d).iter().zip(m.symbol(d, -c)).map(|(a, b)| a + b).collect();
                assert!(two.iter().all(|x| x.is_zero()));
                let three: Vec<Rational> = (0..m.dimension())
                    .map(|i| &m.symbol(c, d)[i] + &m.symbol(d, -c - d)[i] + &m.symbol(-c - d, c)[i])
                    .collect();
                assert!(three.iter().all(|x| x.is_zero()));
            }
        }
    }
}

/// `T_p {a, b} = sum_j {(a+j)/p, (b+j)/p} + {pa, pb}` applied to the path of each basis symbol.
fn coset_hecke(m: &ManinSymbolSpace, p: i64) -> QMatrix {
    let act = |x: Cusp, j: i64| if x.is_infinity() { x } else { Cusp::new(x.num + j * x.den, p * x.den) };
    let mul = |x: Cusp| if x.is_infinity() { x } else { Cusp::new(p * x.num, x.den) };
    m.basis_symbols()
        .iter()
        .map(|&(c, d)| {
            let (a, b) = m.symbol_path(c, d);
            let mut row = m.path(mul(a), mul(b));
            for j in 0..p {
                let v = m.path(act(a, j), act(b, j));
                row.iter_mut().zip(v).for_each(|(x, y)| *x += y);
            }
            row
        })
        .collect()
}

fn mat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    a.iter()
        .map(|r| (0..b[0].len()).map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum()).collect())
        .collect()
}

#[test]
fn heilbronn_agrees_with_cosets() {
    for n in [11u64, 37] {
        let m = ManinSymbolSpace::new(n).unwrap();
        for p in [2i64, 3, 5, 7, 13] {
            assert_eq!(m.hecke_full(p as u64).unwrap(), coset_hecke(&m, p), "level {} p {}", n, p);
        }
    }
}

#[test]
fn hecke_operators_commute_with_each_other_and_star() {
    let m = ManinSymbolSpace::new(37).unwrap();
    let t2 = m.hecke_full(2).unwrap();
    let t3 = m.hecke_full(3).unwrap();
    assert_eq!(mat_mul(&t2, &t3), mat_mul(&t3, &t2));
    let s = m.star_matrix();
    let id: QMatrix = (0..m.dimension()).map(|i| (0..m.dimension()).map(|j| q((i == j) as i64)).collect()).collect();
    assert_eq!(&mat_mul(s, s), &id);
    for t in [&t2, &t3] {
        assert_eq!(mat_mul(s, t), mat_mul(t, s));
    }
    let r2 = m.hecke_matrix(2).unwrap();
    assert_eq!(r2.len(), 4);
}

#[test]
fn eigenvalues_match_point_counts() {
    let m = ManinSymbolSpace::new(11).unwrap();
    let e = WeierstrassCurve::eleven_a1();
    let nf = NewformSymbol::compute(&m, &e).unwrap();
    for p in primes_up_to(100) {
        let t = m.hecke_full(p).unwrap();
        let image = m.apply(&nf.gamma.coords, &t);
        let a = if p == 11 { 1 } else { trace_ap(&e, p).unwrap() };
        let want: Vec<Rational> = nf.gamma.coords.iter().map(|x| x * q(a)).collect();
        assert_eq!(image, want, "p = {}", p);
    }
    assert_eq!(nf.gamma.sector, Sector::Plus);
}

#[test]
fn eleven_a1_ratios() {
    let m = ManinSymbolSpace::new(11).unwrap();
    let e = WeierstrassCurve::eleven_a1();
    assert_eq!(lratio(&m, &e).unwrap(), Rational::new(BigInt::one(), BigInt::from(5)));
    let chi = DirichletCharacter::quadratic(229).unwrap();
    assert_eq!(twisted_lratio(&m, &e, &chi).unwrap(), q(5));
    assert_eq!(twisted_lratio(&m, &e, &DirichletCharacter::trivial()).unwrap(), Rational::new(BigInt::one(), BigInt::from(5)));
    assert!(matches!(twisted_lratio(&m, &e, &DirichletCharacter::quadratic(-11).unwrap()), Err(ebsd::Error::Domain(_))));

    let nf = NewformSymbol::compute(&m, &e).unwrap();
    let flipped = NewformSymbol {
        gamma: nf.gamma.clone(),
        lambda: nf.lambda.iter().map(|x| -x.clone()).collect(),
        eigenvalues: nf.eigenvalues.clone(),
    };
    assert_eq!(flipped.lratio(&m), -nf.lratio(&m));
}

#[test]
fn symmetric_pairs_lie_in_plus_sector() {
    let m = ManinSymbolSpace::new(11).unwrap();
    for a in 1..229 {
        let mut v = m.path(Cusp::ZERO, Cusp::new(a, 229));
        let w = m.path(Cusp::ZERO, Cusp::new(229 - a, 229));
        v.iter_mut().zip(w).for_each(|(x, y)| *x += y);
        assert_eq!(m.classify(v).sector, Sector::Plus, "a = {}", a);
    }
}

#[test]
fn twisted_sum_independent_of_expansion() {
    let m = ManinSymbolSpace::new(11).unwrap();
    let e = WeierstrassCurve::eleven_a1();
    let nf = NewformSymbol::compute(&m, &e).unwrap();
    let chi = DirichletCharacter::quadratic(229).unwrap();
    for seed in 0..4u64 {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let r = nf.twisted_sum(&m, &chi, &mut || rng.gen_bool(0.5)).unwrap();
        assert_eq!(r, q(5));
    }
}

#[test]
fn gauss_sums_have_norm_m() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let primes: Vec<u64> = primes_up_to(60).into_iter().filter(|&p| p > 2).collect();
    let mut done = 0;
    while done < 20 {
        let p = primes[rng.gen_range(0..primes.len())];
        let k = rng.gen_range(1..p - 1);
        let chi = DirichletCharacter::from_prime(p, k).unwrap();
        if !chi.is_primitive() {
            continue;
        }
        let g = gauss_sum(&chi, 30).unwrap();
        let norm = &g.re.sqr() + &g.im.sqr();
        assert!(norm.within(&ebsd::exact_arith::Real::from_int(p, 128), 1e-25), "p {} k {}", p, k);
        done += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn path_additivity(a in -60i64..60, b in 1i64..40, c in -60i64..60, d in 1i64..40) {
        let m = ManinSymbolSpace::new(37).unwrap();
        let x = Cusp::new(a, b);
        let y = Cusp::new(c, d);
        let mut lhs = m.path(Cusp::ZERO, x);
        let xy = m.path(x, y);
        lhs.iter_mut().zip(xy).for_each(|(u, v)| *u += v);
        prop_assert_eq!(lhs, m.path(Cusp::ZERO, y));
    }
}
