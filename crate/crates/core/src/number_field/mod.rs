//! The sextic field `K = Q(theta, sqrt(D))`, the Galois closure of a totally real
//! cubic with square-free discriminant `D`.
//!
//! Elements are stored in the power-product basis `theta^i sqrt(D)^j`, coordinate
//! `i + 3j`. The root labelling sorts the real roots `theta_1 < theta_2 < theta_3`,
//! takes `theta = theta_1` and fixes `sqrt(D) > 0` in the base embedding.

mod places;
mod resolvent;

pub use places::{splitting_type, PlaceData};
pub use resolvent::{local_generator_test, resolvent_det, resolvent_matrix, search_alpha0, ResolventDet};

use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::config::{parse_list, KeyValues};
use crate::error::{Error, Result};
use crate::exact_arith::{
    det, factorize, inverse, parse_rational, poly_discriminant, poly_factor_mod_p, real_cubic_roots, FpPoly, QMatrix,
    Rational, Real,
};
use crate::s3_algebra::S3;

pub type KElem = [Rational; 6];

#[derive(Clone, Debug)]
pub struct SexticField {
    /// `c0 + c1 x + c2 x^2 + x^3`, little-endian.
    pub cubic: [Rational; 4],
    pub d: u64,
    /// Rows: integral basis elements in power-product coordinates.
    pub basis: QMatrix,
    basis_inv: QMatrix,
    pub alpha0: Option<KElem>,
    conjugates: [KElem; 3],
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn zero() -> KElem {
    std::array::from_fn(|_| Rational::zero())
}

fn fail<T>(hypothesis: &str, detail: String) -> Result<T> {
    Err(Error::Validation { hypothesis: hypothesis.into(), detail })
}

impl SexticField {
    /// Field data without validation; see [`SexticField::validate`].
    pub fn new(cubic: [Rational; 4], basis: QMatrix, alpha0: Option<KElem>) -> Result<SexticField> {
        if !cubic[3].is_one() {
            return Err(Error::Domain("cubic must be monic".into()));
        }
        let disc = poly_discriminant(&cubic)?;
        if !disc.is_integer() || !disc.is_positive() {
            return fail("totally real", format!("cubic discriminant {} is not a positive integer", disc));
        }
        let d = disc.to_integer().to_u64().ok_or_else(|| Error::Domain("discriminant too large".into()))?;
        if basis.len() != 6 || basis.iter().any(|r| r.len() != 6) {
            return Err(Error::Config("integral basis must be a 6x6 matrix".into()));
        }
        let basis_inv =
            inverse(&basis).ok_or_else(|| Error::Validation { hypothesis: "basis".into(), detail: "basis matrix is singular".into() })?;
        let mut k = SexticField {
            cubic,
            d,
            basis,
            basis_inv,
            alpha0,
            conjugates: [zero(), zero(), zero()],
        };
        // theta_2,3 = (-theta - c2 -+ sqrt(D) / f'(theta)) / 2
        let theta = k.theta();
        let fp = k.add(&k.add(&k.scale(&k.mul(&theta, &theta), &q(3)), &k.scale(&theta, &(&k.cubic[2] * q(2)))), &k.constant(&k.cubic[1]));
        if !k.is_nonzero(&fp) {
            return Err(Error::Domain("cubic is not separable".into()));
        }
        let w = k.mul(&k.sqrt_d(), &k.inv(&fp)?);
        let base = k.sub(&k.neg(&theta), &k.constant(&k.cubic[2]));
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let t2 = k.scale(&k.sub(&base, &w), &half);
        let t3 = k.scale(&k.add(&base, &w), &half);
        k.conjugates = [theta, t2, t3];
        Ok(k)
    }

    pub fn from_config(kv: &KeyValues) -> Result<SexticField> {
        let bad = |what: &str| Error::Config(format!("{}: malformed {}", kv.source, what));
        let cubic: Vec<Rational> = parse_rational_list(kv.require("cubic")?).ok_or_else(|| bad("cubic"))?;
        if cubic.len() != 4 {
            return Err(bad("cubic (expected four coefficients c0, c1, c2, c3)"));
        }
        let basis: QMatrix = if let Some(v) = kv.get("basis") {
            let flat = parse_rational_list(v).ok_or_else(|| bad("basis"))?;
            if flat.len() != 36 {
                return Err(bad("basis (expected 36 rationals)"));
            }
            flat.chunks(6).map(|c| c.to_vec()).collect()
        } else {
            (1..=6)
                .map(|i| parse_rational_list(kv.require(&format!("basis.{}", i))?).ok_or_else(|| bad("basis row")))
                .collect::<Result<_>>()?
        };
        let field = SexticField::new([cubic[0].clone(), cubic[1].clone(), cubic[2].clone(), cubic[3].clone()], basis, None)?;
        let alpha0 = match kv.get("alpha0") {
            Some(v) => {
                let c: Vec<Rational> = parse_rational_list(v).ok_or_else(|| bad("alpha0"))?;
                if c.len() != 6 {
                    return Err(bad("alpha0 (expected six coordinates)"));
                }
                Some(field.from_basis_coords(&c))
            }
            None => None,
        };
        Ok(SexticField { alpha0, ..field })
    }

    pub fn load(path: &Path) -> Result<SexticField> {
        SexticField::from_config(&KeyValues::load(path)?)
    }

    /// Field whose lattice is the power-product order `Z[theta, sqrt(D)]`.
    pub fn with_power_basis(cubic: [Rational; 4]) -> Result<SexticField> {
        let basis = (0..6).map(|i| (0..6).map(|j| q((i == j) as i64)).collect()).collect();
        SexticField::new(cubic, basis, None)
    }

    // ---- arithmetic ----

    pub fn constant(&self, c: &Rational) -> KElem {
        let mut x = zero();
        x[0] = c.clone();
        x
    }

    pub fn one(&self) -> KElem {
        self.constant(&Rational::one())
    }

    pub fn theta(&self) -> KElem {
        let mut x = zero();
        x[1] = Rational::one();
        x
    }

    pub fn sqrt_d(&self) -> KElem {
        let mut x = zero();
        x[3] = Rational::one();
        x
    }

    pub fn is_nonzero(&self, x: &KElem) -> bool {
        x.iter().any(|c| !c.is_zero())
    }

    pub fn add(&self, a: &KElem, b: &KElem) -> KElem {
        std::array::from_fn(|i| &a[i] + &b[i])
    }

    pub fn sub(&self, a: &KElem, b: &KElem) -> KElem {
        std::array::from_fn(|i| &a[i] - &b[i])
    }

    pub fn neg(&self, a: &KElem) -> KElem {
        std::array::from_fn(|i| -&a[i])
    }

    pub fn scale(&self, a: &KElem, k: &Rational) -> KElem {
        std::array::from_fn(|i| &a[i] * k)
    }

    /// Product of two quadratics in `theta`, reduced by the cubic.
    fn mul_theta(&self, a: &[Rational], b: &[Rational]) -> [Rational; 3] {
        let mut p: [Rational; 5] = std::array::from_fn(|_| Rational::zero());
        for i in 0..3 {
            for j in 0..3 {
                p[i + j] += &a[i] * &b[j];
            }
        }
        for k in (3..5).rev() {
            let c = std::mem::take(&mut p[k]);
            for j in 0..3 {
                p[k - 3 + j] -= &c * &self.cubic[j];
            }
        }
        [p[0].clone(), p[1].clone(), p[2].clone()]
    }

    pub fn mul(&self, x: &KElem, y: &KElem) -> KElem {
        let (a, b) = (&x[0..3], &x[3..6]);
        let (c, e) = (&y[0..3], &y[3..6]);
        let ac = self.mul_theta(a, c);
        let be = self.mul_theta(b, e);
        let ae = self.mul_theta(a, e);
        let bc = self.mul_theta(b, c);
        let d = q(self.d as i64);
        std::array::from_fn(|i| if i < 3 { &ac[i] + &be[i] * &d } else { &ae[i - 3] + &bc[i - 3] })
    }

    pub fn pow(&self, x: &KElem, n: u32) -> KElem {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    /// Matrix of multiplication by `x` on the power-product basis.
    fn mul_matrix(&self, x: &KElem) -> QMatrix {
        (0..6)
            .map(|i| {
                let mut e = zero();
                e[i] = Rational::one();
                self.mul(&e, x).to_vec()
            })
            .collect()
    }

    pub fn inv(&self, x: &KElem) -> Result<KElem> {
        let m = self.mul_matrix(x);
        let inv = inverse(&m).ok_or_else(|| Error::Singular("zero has no inverse in K".into()))?;
        Ok(std::array::from_fn(|j| inv[0][j].clone()))
    }

    pub fn norm(&self, x: &KElem) -> Rational {
        det(&self.mul_matrix(x))
    }

    /// `Tr_{K/Q}`: twice the trace of the `theta`-part from `Q(theta)`.
    pub fn trace(&self, x: &KElem) -> Rational {
        let p1 = -&self.cubic[2];
        let p2 = &p1 * &p1 - q(2) * &self.cubic[1];
        q(2) * (q(3) * &x[0] + p1 * &x[1] + p2 * &x[2])
    }

    // ---- integral basis ----

    pub fn basis_element(&self, k: usize) -> KElem {
        std::array::from_fn(|i| self.basis[k][i].clone())
    }

    pub fn to_basis_coords(&self, x: &KElem) -> Vec<Rational> {
        (0..6).map(|j| (0..6).map(|i| &x[i] * &self.basis_inv[i][j]).sum()).collect()
    }

    pub fn from_basis_coords(&self, c: &[Rational]) -> KElem {
        std::array::from_fn(|i| (0..6).map(|k| &c[k] * &self.basis[k][i]).sum())
    }

    pub fn is_integral(&self, x: &KElem) -> bool {
        self.to_basis_coords(x).iter().all(|c| c.is_integer())
    }

    /// `det(Tr(b_i b_j))`.
    pub fn discriminant(&self) -> Rational {
        let b: Vec<KElem> = (0..6).map(|k| self.basis_element(k)).collect();
        let gram: QMatrix = (0..6).map(|i| (0..6).map(|j| self.trace(&self.mul(&b[i], &b[j]))).collect()).collect();
        det(&gram)
    }

    // ---- Galois action ----

    /// `theta_(i+1)` as an element of `K`.
    pub fn conjugate_root(&self, i: usize) -> &KElem {
        &self.conjugates[i]
    }

    pub fn galois_apply(&self, g: S3, x: &KElem) -> KElem {
        let t = &self.conjugates[g.permute(0)];
        let t2 = self.mul(t, t);
        let sq = self.scale(&self.sqrt_d(), &q(g.sign()));
        let powers = [self.one(), t.clone(), t2];
        let mut out = zero();
        for j in 0..2 {
            let mut part = zero();
            for i in 0..3 {
                part = self.add(&part, &self.scale(&powers[i], &x[i + 3 * j]));
            }
            if j == 1 {
                part = self.mul(&part, &sq);
            }
            out = self.add(&out, &part);
        }
        out
    }

    /// Integer matrix of `g` on the integral basis (rows are images of basis vectors).
    pub fn galois_matrix(&self, g: S3) -> QMatrix {
        (0..6).map(|k| self.to_basis_coords(&self.galois_apply(g, &self.basis_element(k)))).collect()
    }

    // ---- embeddings ----

    /// Real roots `theta_1 < theta_2 < theta_3` at `prec` bits.
    pub fn real_roots(&self, prec: u32) -> Result<Vec<Real>> {
        real_cubic_roots(&self.cubic, 3, prec)
    }

    /// Image of `g(x)` under the base embedding `theta -> theta_1`, `sqrt(D) -> +sqrt(D)`.
    pub fn embed(&self, g: S3, x: &KElem, prec: u32) -> Result<Real> {
        let roots = self.real_roots(prec)?;
        let t = &roots[g.permute(0)];
        let sq = Real::from_int(self.d, prec).sqrt().mul_int(g.sign());
        let mut acc = Real::zero(prec);
        let mut tp = Real::one(prec);
        for i in 0..3 {
            let term = &Real::from_rational(&x[i], prec) + &(&Real::from_rational(&x[i + 3], prec) * &sq);
            acc = &acc + &(&term * &tp);
            tp = &tp * t;
        }
        Ok(acc)
    }

    // ---- validation ----

    /// Checks of the field hypotheses; `conductor` is that of the curve, for coprimality.
    pub fn validate(&self, conductor: Option<u64>) -> Result<()> {
        let c0 = self.cubic[0].to_integer();
        if !self.cubic.iter().all(|c| c.is_integer()) {
            return fail("cubic", "coefficients must be integers".into());
        }
        let divisors = |n: &BigInt| -> Vec<BigInt> {
            let n = n.abs().to_u64().unwrap_or(0);
            if n == 0 {
                return vec![BigInt::zero()];
            }
            (1..=n).filter(|d| n % d == 0).map(BigInt::from).collect()
        };
        for r in divisors(&c0) {
            for s in [r.clone(), -r] {
                let x = Rational::from_integer(s.clone());
                let v = ((&self.cubic[3] * &x + &self.cubic[2]) * &x + &self.cubic[1]) * &x + &self.cubic[0];
                if v.is_zero() {
                    return fail("irreducible cubic", format!("{} is a rational root", s));
                }
            }
        }
        let root = (self.d as f64).sqrt().round() as u64;
        if (root.saturating_sub(1)..=root + 1).any(|r| r * r == self.d) {
            return fail("Galois group S3", format!("discriminant {} is a square", self.d));
        }
        let b: Vec<KElem> = (0..6).map(|k| self.basis_element(k)).collect();
        if !self.is_integral(&self.one()) {
            return fail("ring closure", "1 is not in the lattice".into());
        }
        for i in 0..6 {
            for j in i..6 {
                if !self.is_integral(&self.mul(&b[i], &b[j])) {
                    return fail("ring closure", format!("product of basis elements {} and {} leaves the lattice", i + 1, j + 1));
                }
            }
        }
        for x in &b {
            // integral elements have integral characteristic polynomial; the trace and norm suffice as a screen
            if !self.trace(x).is_integer() || !self.norm(x).is_integer() {
                return fail("integrality", "a basis element is not an algebraic integer".into());
            }
        }
        let disc = self.discriminant();
        let want = Rational::from_integer(BigInt::from(self.d).pow(3));
        if disc != want {
            return fail(
                "discriminant",
                format!("discriminant of the basis is {}, expected {}^3 = {} (index {} > 1)", disc, self.d, want, index_of(&disc, &want)),
            );
        }
        for (p, e) in factorize(self.d) {
            if e > 1 {
                return fail("square-free discriminant", format!("{}^{} divides the cubic discriminant", p, e));
            }
            let place = splitting_type(self, p)?;
            if p % place.e as u64 == 0 {
                return fail("tamely ramified", format!("wild ramification at {}", p));
            }
        }
        if let Some(n) = conductor {
            if n.gcd(&self.d) != 1 {
                return fail("(cond(E), disc(K)) = 1", format!("gcd({}, {}^3) = {}", n, self.d, n.gcd(&self.d)));
            }
        }
        Ok(())
    }

    pub fn cubic_mod(&self, p: u64) -> FpPoly {
        FpPoly::from_rationals(p, &self.cubic).expect("integral cubic")
    }

    pub(crate) fn cubic_factor_degrees(&self, p: u64) -> Result<Vec<(usize, u32)>> {
        Ok(poly_factor_mod_p(&self.cubic_mod(p))?.into_iter().map(|(f, m)| (f.degree() as usize, m)).collect())
    }
}

fn index_of(disc: &Rational, want: &Rational) -> String {
    let r = disc / want;
    if r.is_integer() {
        let n = r.to_integer().abs();
        let s = n.sqrt();
        if &s * &s == n {
            return s.to_string();
        }
    }
    format!("sqrt({})", crate::exact_arith::fmt_rational(&r))
}

fn parse_rational_list(s: &str) -> Option<Vec<Rational>> {
    let parts: Option<Vec<String>> = parse_list(s);
    parts?.iter().map(|p| parse_rational(p)).collect()
}
