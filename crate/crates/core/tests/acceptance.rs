//! One line per acceptance criterion. Run with `cargo test -p ebsd --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ebsd::elliptic_curve::{count_points, real_periods, torsion_bound, trace_ap};
use ebsd::exact_arith::{primes_up_to, rat, Rational, Real};
use ebsd::lfunc_numeric::{artin_factorization_check, GammaTransform};
use ebsd::modular_symbols::{gauss_sum, lratio, twisted_lratio, DirichletCharacter, ManinSymbolSpace};
use ebsd::number_field::{local_generator_test, splitting_type};
use ebsd::s3_algebra::*;
use ebsd::verifier::*;
use rand::{Rng, SeedableRng};

const TABLE1_PRINTED: [(u64, [(i64, i64); 3]); 5] = [
    (2, [(5, 2), (1, 2), (5, 4)]),
    (3, [(5, 3), (5, 3), (4, 9)]),
    (5, [(1, 1), (1, 1), (28, 25)]),
    (11, [(10, 11), (10, 11), (133 * 133, 11 * 11 * 11 * 11)]),
    (229, [(215, 229), (1, 1), (215, 229)]),
];
const PSI_TOLERANCE: f64 = 1e-3;
const L_TOLERANCE: f64 = 1e-8;
const L_CHI_TOLERANCE: f64 = 1e-6;
const MELLIN_TOLERANCE: f64 = 1e-20;

type Outcome = Result<String, String>;

struct Harness {
    failures: usize,
}

impl Harness {
    fn run(&mut self, id: u32, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{}; over the {:?} limit", d, limit)),
            Err(d) => (false, d),
        };
        if !ok {
            self.failures += 1;
        }
        println!(
            "[{}] {:>2} {}: {} ({:.2} s)",
            if ok { "PASS" } else { "FAIL" },
            id,
            name,
            detail,
            elapsed.as_secs_f64()
        );
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn rel(x: &Real, y: &Real) -> f64 {
    ((x - y) / y).abs().to_f64()
}

fn central(a: i64, b: i64, c: i64) -> GroupRingElement {
    from_central(&CentralVector::from_ints(a, b, c))
}

fn random_element(rng: &mut rand::rngs::StdRng) -> GroupRingElement {
    GroupRingElement::from_ints(std::array::from_fn(|_| rng.gen_range(-6..=6)))
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    a.iter()
        .map(|r| (0..b[0].len()).map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum()).collect())
        .collect()
}

fn main() -> ExitCode {
    let mut h = Harness { failures: 0 };
    let config = VerificationConfig {
        tolerance: PSI_TOLERANCE,
        assume_sha_trivial: true,
        ..VerificationConfig::with_data_dir(&common::data(""))
    };
    let v = match Verifier::new(config) {
        Ok(v) => v,
        Err(e) => {
            println!("[FAIL] setup: {}", e);
            return ExitCode::FAILURE;
        }
    };
    let omega = real_periods(&v.curve, 60).expect("periods").omega_plus;
    let prec = 240;
    let root229 = Real::from_int(229, prec).sqrt();

    h.run(1, "Table 1 reproduction", Duration::from_secs(1), || {
        let t = v.table1().map_err(err)?;
        let mut exact = 0;
        for (p, row) in TABLE1_PRINTED {
            for eta in Character::all() {
                let (n, d) = row[eta.index()];
                let printed = rat(n, d);
                let cell = t.cell(p, eta).ok_or(format!("missing cell ({}, {})", p, eta))?;
                let computed: Rational = cell.computed.parse().map_err(|_| format!("unparsable {}", cell.computed))?;
                if computed == printed {
                    exact += 1;
                } else if (p, eta) == (11, Character::Psi) {
                    ensure(computed == rat(133, 121) && &computed * &computed == printed && cell.flag.is_some(), || {
                        format!("(11, psi) computed {} printed {} flag {:?}", computed, printed, cell.flag)
                    })?;
                } else {
                    return Err(format!("({}, {}) computed {} printed {}", p, eta, computed, printed));
                }
            }
        }
        ensure(exact == 14 && t.passed, || format!("{} exact", exact))?;
        Ok("14/15 exact; (11, psi) = 133/121 beside reference 133^2/11^4, flagged".into())
    });

    h.run(2, "L(E,1)/Omega = 1/5 by modular symbols", Duration::from_secs(5), || {
        let space = ManinSymbolSpace::new(11).map_err(err)?;
        let r = lratio(&space, &v.curve).map_err(err)?;
        ensure(r == rat(1, 5), || format!("got {}", r))?;
        Ok(format!("{}", r))
    });

    h.run(3, "L(E x chi,1) sqrt(229)/Omega = 5 by twisted symbols", Duration::from_secs(60), || {
        let space = ManinSymbolSpace::new(11).map_err(err)?;
        let chi = DirichletCharacter::quadratic(229).map_err(err)?;
        let g = gauss_sum(&chi, 40).map_err(err)?;
        ensure(g.exact == Some((229, false)), || format!("Gauss sum {:?}", g.exact))?;
        ensure(rel(&g.re, &root229) < 1e-35 && g.im.abs().to_f64() < 1e-35, || "g(chi) != sqrt(229)".into())?;
        let r = twisted_lratio(&space, &v.curve, &chi).map_err(err)?;
        ensure(r == rat(5, 1), || format!("got {}", r))?;
        Ok(format!("{}, g(chi) = sqrt(229)", r))
    });

    let mut lvalues = None;
    h.run(4, "L(E x psi,1) sqrt(229)/Omega^2 = 25 numerically", Duration::from_secs(600), || {
        let lv = v.lvalues().map_err(err)?;
        let psi = &lv.psi;
        let x = &(&psi.value.with_prec(prec) * &root229) / &omega.sqr();
        let e = rel(&x, &Real::from_int(25, prec));
        let cert = psi.error_bound() * 229f64.sqrt() / omega.to_f64().powi(2) / 25.0;
        let detail = format!(
            "{} (rel. error {:.1e}, certified {:.1e}, {} terms, tail {:.1e}, N = {}, w = {:+})",
            x.to_decimal(15),
            e,
            cert,
            psi.terms,
            psi.tail_bound,
            psi.conductor,
            psi.sign
        );
        lvalues = Some(lv.clone());
        ensure(e < PSI_TOLERANCE && cert < PSI_TOLERANCE && psi.conductor == 6_345_361, || detail.clone())?;
        Ok(detail)
    });
    let Some(lv) = lvalues else {
        println!("[FAIL] numeric L-values unavailable; criteria 5, 7, 8 skipped");
        return ExitCode::FAILURE;
    };

    h.run(5, "numeric L-values against modular symbols", Duration::from_secs(60), || {
        let space = ManinSymbolSpace::new(11).map_err(err)?;
        let chi = DirichletCharacter::quadratic(229).map_err(err)?;
        let l0 = &Real::from_rational(&lratio(&space, &v.curve).map_err(err)?, prec) * &omega;
        let l1 = &(&Real::from_rational(&twisted_lratio(&space, &v.curve, &chi).map_err(err)?, prec) * &omega) / &root229;
        let d0 = (&lv.chi0.value - &l0).abs().to_f64();
        let d1 = (&lv.chi.value - &l1).abs().to_f64();
        let detail = format!("|dL(E,1)| = {:.1e} (tol {:.0e}), |dL(E x chi,1)| = {:.1e} (tol {:.0e})", d0, L_TOLERANCE, d1, L_CHI_TOLERANCE);
        ensure(d0 < L_TOLERANCE && d1 < L_CHI_TOLERANCE, || detail.clone())?;
        Ok(detail)
    });

    h.run(6, "epsilon-factor identities", Duration::from_secs(1), || {
        let torsion = v.torsion().map_err(err)?;
        let inputs = v.inputs(&torsion);
        let z5 = epsilon_from_presentation(&central(5, 1, 1), 5, 5).map_err(err)?;
        ensure(z5.value == CentralVector::from_ints(5, 1, 1), || format!("eps(Z/5) = {}", z5.value))?;
        let u5 = torsion_term(&inputs, 5).map_err(err)?;
        ensure(u5.value == CentralVector::from_ints(25, 1, 1), || format!("u_5 = {}", u5.value))?;
        let place = splitting_type(&v.field, 5).map_err(err)?;
        let (phi5, _) = phi_tilde(&inputs, 5, &place).map_err(err)?;
        ensure(phi5 == CentralVector::from_ints(5, 5, 1), || format!("eps(Phi_5) = {}", phi5))?;
        let phi11 = component_term_extended(&inputs, 5, 11).map_err(err)?;
        ensure(phi11 == CentralVector::from_ints(25, 25, 25), || format!("eps(Phi_11) = {}", phi11))?;
        for l in [7u64, 13, 19, 31] {
            let li = l as i64;
            for (f, want, order) in [(2, CentralVector::from_ints(1, li, li), l.pow(3)), (3, CentralVector::from_ints(1, 1, li), l.pow(2))] {
                let e = phi_l_epsilon(l, f, l).map_err(err)?;
                let theta = e.theta.as_ref().ok_or("no presentation")?;
                let q = quotient_order(theta, l).map_err(err)?;
                ensure(e.value == want && q == Some(order), || format!("l = {}, f = {}: {} of order {:?}", l, f, e.value, q))?;
            }
        }
        Ok("(5,1,1), (25,1,1), (5,5,1), (25,25,25); (1,l,l) and (1,1,l) with orders l^3, l^2 for l = 7, 13, 19, 31".into())
    });

    h.run(7, "verdicts at l = 2, 3, 5, 7..97, 229", Duration::from_secs(120), || {
        let res = v.resolvents().map_err(err)?;
        let vector = v.rationality_check(&lv, &res).map_err(err)?.vector().ok_or("no rationality vector")?;
        let torsion = v.torsion().map_err(err)?;
        let verdicts = v.verdicts(&torsion, &vector).map_err(err)?;
        let mut want: Vec<u64> = primes_up_to(100);
        want.push(229);
        let got: Vec<u64> = verdicts.iter().map(|x| x.l).collect();
        ensure(got == want, || format!("primes {:?}", got))?;
        for x in &verdicts {
            ensure(x.verdict.passed(), || format!("l = {}: {}", x.l, x.verdict))?;
        }
        let three = &verdicts[1].verdict;
        ensure(*three == Verdict::PassViaTorsionUnit("r".into()), || format!("l = 3: {}", three))?;
        let others = verdicts.iter().filter(|x| x.l != 3).all(|x| x.verdict == Verdict::Pass);
        ensure(others, || "a verdict other than l = 3 needed a torsion unit".into())?;
        Ok(format!("{} PASS, l = 3 via r", verdicts.len()))
    });

    h.run(8, "rationality vector (1/5, 5, 25)", Duration::from_secs(60), || {
        let res = v.resolvents().map_err(err)?;
        let r = v.rationality_check(&lv, &res).map_err(err)?;
        let got = r.vector().ok_or("a component was not recognised")?;
        let psi = &r.components[2];
        let detail = format!("{} (psi rel. error {:.1e}, tol {:.0e})", got, psi.relative_error, PSI_TOLERANCE);
        ensure(
            got == CentralVector::new(rat(1, 5), rat(5, 1), rat(25, 1)) && psi.relative_error < PSI_TOLERANCE && r.passed,
            || detail.clone(),
        )?;
        Ok(detail)
    });

    h.run(9, "resolvent determinants", Duration::from_secs(30), || {
        let res = v.resolvents().map_err(err)?;
        ensure(res.root_pattern == [false, true, true], || format!("pattern {:?}", res.root_pattern))?;
        for (d, sq) in res.dets.iter().zip(&res.squares) {
            let q: Rational = sq.parse().map_err(|_| format!("square {}", sq))?;
            let numeric = d.numeric.sqr();
            let e = rel(&numeric, &Real::from_rational(&q, prec));
            ensure(e < 1e-50, || format!("{}: det^2 {} vs {}", d.eta, numeric.to_decimal(30), sq))?;
        }
        for l in v.config.l_values() {
            ensure(local_generator_test(&v.field, &v.alpha0, l).map_err(err)?, || format!("not a unit at l = {}", l))?;
        }
        Ok(format!("squares {:?}, sqrt(229) pattern (absent, present, present), unit at {} primes", res.squares, v.config.l_values().len()))
    });

    h.run(10, "torsion and point counts", Duration::from_secs(30), || {
        let n11 = count_points(&v.curve, 11, 3).map_err(err)?;
        let n229 = count_points(&v.curve, 229, 1).map_err(err)?;
        let b = torsion_bound(&[n11, n229]).map_err(err)?;
        ensure(n11 == 1330 && n229 == 215 && b == 5, || format!("{}, {}, {}", n11, n229, b))?;
        let t = v.torsion().map_err(err)?;
        ensure(t.bound_k == 5 && t.generator_order == 5, || format!("{:?}", t))?;
        Ok("|E_ns(F_11^3)| = 1330, |E(F_229)| = 215, bound 5".into())
    });

    h.run(11, "property suites", Duration::from_secs(300), || {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let mut pairs = 0;
        while pairs < 200 {
            let (x, y) = (random_element(&mut rng), random_element(&mut rng));
            let (Ok(nx), Ok(ny)) = (reduced_norm(&x), reduced_norm(&y)) else { continue };
            let nxy = reduced_norm(&(&x * &y)).map_err(err)?;
            ensure(nxy == nx.mul(&ny), || format!("nr not multiplicative on {} and {}", x, y))?;
            for l in [2u64, 3, 5, 7] {
                if let (Some(a), Some(b)) = (quotient_order(&x, l).map_err(err)?, quotient_order(&y, l).map_err(err)?) {
                    ensure(quotient_order(&(&x * &y), l).map_err(err)? == Some(a * b), || format!("quotient order at {}", l))?;
                }
            }
            pairs += 1;
        }

        for n in [11i64, 37] {
            let m = ManinSymbolSpace::new(n as u64).map_err(err)?;
            for c in 0..n {
                for d in 0..n {
                    if c == 0 && d == 0 {
                        continue;
                    }
                    let two = m.symbol(c, d).iter().zip(m.symbol(d, -c)).all(|(a, b)| num_traits::Zero::is_zero(&(a + b)));
                    let three = (0..m.dimension())
                        .all(|i| num_traits::Zero::is_zero(&(&m.symbol(c, d)[i] + &m.symbol(d, -c - d)[i] + &m.symbol(-c - d, c)[i])));
                    ensure(two && three, || format!("Manin relation at level {} for ({}, {})", n, c, d))?;
                }
            }
            let ts: Vec<_> = [2u64, 3, 5].iter().map(|&p| m.hecke_full(p)).collect::<Result<_, _>>().map_err(err)?;
            for a in &ts {
                for b in &ts {
                    ensure(mat_mul(a, b) == mat_mul(b, a), || format!("Hecke operators at level {} do not commute", n))?;
                }
            }
            if n == 11 {
                for p in primes_up_to(50).into_iter().filter(|&p| p != 11) {
                    let t = m.hecke_matrix(p).map_err(err)?;
                    let a = trace_ap(&v.curve, p).map_err(err)?;
                    let scalar = (0..t.len()).all(|i| (0..t.len()).all(|j| t[i][j] == rat(if i == j { a } else { 0 }, 1)));
                    ensure(t.len() == 2 && scalar, || format!("T_{} at level 11 is not a_p = {}", p, a))?;
                }
            }
        }

        for p in primes_up_to(500) {
            let c = artin_factorization_check(&v.curve, &v.field, p).map_err(err)?;
            ensure(c.holds, || format!("Artin factorization fails at {}", p))?;
        }

        let gp = 110;
        let g = GammaTransform::new(2, gp).map_err(err)?;
        let mut worst = 0f64;
        for s in [rat(1, 2), rat(3, 4), rat(1, 1), rat(5, 4), rat(3, 2)] {
            for t in [rat(7, 100), rat(1, 3), rat(1, 1), rat(5, 2)] {
                let tr = Real::from_rational(&t, gp);
                let lib = g.incomplete_mellin(&s, &tr).map_err(err)?;
                let oracle = common::g_oracle(2, &s, &tr, gp);
                let e = rel(&lib, &oracle);
                worst = worst.max(e);
                ensure(e < MELLIN_TOLERANCE, || format!("G_{}({}) rel. error {:.1e}", s, t, e))?;
            }
        }

        let first = v.run().map_err(err)?.to_json().map_err(err)?;
        let second = v.run().map_err(err)?.to_json().map_err(err)?;
        ensure(first == second, || "reports differ between runs".into())?;

        Ok(format!(
            "200 nr/quotient-order pairs, Manin and Hecke at 11 and 37, Artin p <= 500, G_s at 20 points (worst {:.1e}), report byte-identical ({} bytes)",
            worst,
            first.len()
        ))
    });

    if h.failures == 0 {
        println!("all 11 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{} criteria failed", h.failures);
        ExitCode::FAILURE
    }
}
