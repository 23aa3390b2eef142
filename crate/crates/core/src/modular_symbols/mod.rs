//! Manin symbols for `Gamma_0(N)` at prime level.
//!
//! The space `M` spanned by the symbols `(c:d)` of `P^1(Z/N)` modulo the two- and
//! three-term relations is identified with `H_1(X_0(N), cusps, Q)`. Vectors are rows;
//! operators act on the right, `x -> x T`.

mod characters;
mod newform;

pub use characters::{gauss_sum, DirichletCharacter, GaussSum};
pub use newform::{lratio, twisted_lratio, NewformSymbol};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_arith::{is_prime, mod_inv, rref, QMatrix, Rational};

/// A cusp `num/den` in lowest terms with `den >= 0`; infinity is `1/0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cusp {
    pub num: i64,
    pub den: i64,
}

impl Cusp {
    pub const INFINITY: Cusp = Cusp { num: 1, den: 0 };
    pub const ZERO: Cusp = Cusp { num: 0, den: 1 };

    pub fn new(num: i64, den: i64) -> Cusp {
        if den == 0 {
            return Cusp::INFINITY;
        }
        let g = num.gcd(&den);
        let s = if den < 0 { -1 } else { 1 };
        Cusp { num: s * num / g, den: s * den / g }
    }

    pub fn integer(n: i64) -> Cusp {
        Cusp { num: n, den: 1 }
    }

    pub fn is_infinity(&self) -> bool {
        self.den == 0
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den {
            0 => f.write_str("oo"),
            1 => write!(f, "{}", self.num),
            d => write!(f, "{}/{}", self.num, d),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Sector {
    Plus,
    Minus,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass {
    pub coords: Vec<Rational>,
    pub sector: Sector,
}

impl HomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

pub struct ManinSymbolSpace {
    level: u64,
    /// Coordinates of every `P^1` symbol in the quotient basis.
    symbol_coords: Vec<Vec<Rational>>,
    /// `P^1` index of the symbol chosen for each basis vector.
    basis_symbols: Vec<usize>,
    /// Rows spanning the kernel of the boundary map.
    cuspidal: QMatrix,
    /// Coefficient of `[oo] - [0]` in the boundary of each basis vector.
    boundary: Vec<Rational>,
    star: QMatrix,
}

fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

fn add_scaled(acc: &mut [Rational], v: &[Rational], k: &Rational) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b * k;
    }
}

impl ManinSymbolSpace {
    /// Relations imposed and the cuspidal subspace extracted. Only prime levels up to 1000.
    pub fn new(level: u64) -> Result<ManinSymbolSpace> {
        if !is_prime(level) {
            return Err(Error::Unsupported(format!("modular symbols at composite level {}", level)));
        }
        if level > 1000 {
            return Err(Error::Domain(format!("level {} exceeds 1000", level)));
        }
        let n = level as usize;
        let size = n + 1;
        let sigma = |i: usize| {
            let (c, d) = p1_point(level, i);
            p1_index(level, d as i64, -(c as i64))
        };
        let tau = |i: usize| {
            let (c, d) = p1_point(level, i);
            p1_index(level, d as i64, -(c as i64) - d as i64)
        };

        // two-term relations: x = -x sigma, killing fixed points
        let mut rep: Vec<Option<(usize, i64)>> = vec![None; size];
        let mut reps = Vec::new();
        for i in 0..size {
            if rep[i].is_some() {
                continue;
            }
            let j = sigma(i);
            if j == i {
                rep[i] = Some((usize::MAX, 0));
            } else {
                rep[i] = Some((reps.len(), 1));
                rep[j] = Some((reps.len(), -1));
                reps.push(i);
            }
        }
        let m = reps.len();
        let reduce = |i: usize, row: &mut [Rational]| {
            if let Some((k, s)) = rep[i] {
                if s != 0 {
                    row[k] += Rational::from_integer(BigInt::from(s));
                }
            }
        };

        // three-term relations on the reduced generators
        let mut rows: QMatrix = Vec::new();
        let mut seen = vec![false; size];
        for i in 0..size {
            if seen[i] {
                continue;
            }
            let (j, k) = (tau(i), tau(tau(i)));
            seen[i] = true;
            seen[j] = true;
            seen[k] = true;
            let mut row = zero_vec(m);
            for x in [i, j, k] {
                reduce(x, &mut row);
            }
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
        let (r, pivots) = if rows.is_empty() { (vec![], vec![]) } else { rref(&rows) };
        let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
        let dim = free.len();
        let mut gen_coords: QMatrix = vec![zero_vec(dim); m];
        for (k, &f) in free.iter().enumerate() {
            gen_coords[f][k] = Rational::one();
        }
        for (row, &p) in r.iter().zip(&pivots) {
            for (k, &f) in free.iter().enumerate() {
                gen_coords[p][k] = -row[f].clone();
            }
        }
        let symbol_coords: QMatrix = (0..size)
            .map(|i| match rep[i] {
                Some((k, s)) if s != 0 => {
                    let mut v = gen_coords[k].clone();
                    if s < 0 {
                        v.iter_mut().for_each(|x| *x = -x.clone());
                    }
                    v
                }
                _ => zero_vec(dim),
            })
            .collect();
        let basis_symbols: Vec<usize> = free.iter().map(|&f| reps[f]).collect();

        let cusp_class = |u: u64| if u % level == 0 { 1 } else { 0 };
        let boundary: Vec<Rational> = basis_symbols
            .iter()
            .map(|&i| {
                let (c, d) = p1_point(level, i);
                Rational::from_integer(BigInt::from(cusp_class(c) - cusp_class(d)))
            })
            .collect();
        let cuspidal = if boundary.iter().all(|b| b.is_zero()) {
            (0..dim).map(|k| {
                let mut v = zero_vec(dim);
                v[k] = Rational::one();
                v
            }).collect()
        } else {
            crate::exact_arith::solve_left_kernel(&boundary.iter().map(|b| vec![b.clone()]).collect())
        };
        let mut space = ManinSymbolSpace { level, symbol_coords, basis_symbols, cuspidal, boundary, star: vec![] };
        space.star = space
            .basis_symbols
            .iter()
            .map(|&i| {
                let (c, d) = p1_point(level, i);
                space.symbol(-(c as i64), d as i64).to_vec()
            })
            .collect();
        Ok(space)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn dimension(&self) -> usize {
        self.basis_symbols.len()
    }

    pub fn cuspidal_dimension(&self) -> usize {
        self.cuspidal.len()
    }

    pub fn cuspidal_basis(&self) -> &QMatrix {
        &self.cuspidal
    }

    /// Quotient coordinates of the Manin symbol `(c:d)`.
    pub fn symbol(&self, c: i64, d: i64) -> &[Rational] {
        &self.symbol_coords[p1_index(self.level, c, d)]
    }

    /// `(c, d)` representatives of the basis symbols.
    pub fn basis_symbols(&self) -> Vec<(u64, u64)> {
        self.basis_symbols.iter().map(|&i| p1_point(self.level, i)).collect()
    }

    pub fn boundary(&self, x: &[Rational]) -> Rational {
        x.iter().zip(&self.boundary).map(|(a, b)| a * b).sum()
    }

    pub fn star_matrix(&self) -> &QMatrix {
        &self.star
    }

    pub fn apply(&self, x: &[Rational], m: &QMatrix) -> Vec<Rational> {
        let mut out = zero_vec(self.dimension());
        for (a, row) in x.iter().zip(m) {
            if !a.is_zero() {
                add_scaled(&mut out, row, a);
            }
        }
        out
    }

    pub fn classify(&self, coords: Vec<Rational>) -> HomologyClass {
        let s = self.apply(&coords, &self.star);
        let sector = if s == coords {
            Sector::Plus
        } else if s.iter().zip(&coords).all(|(a, b)| *a == -b.clone()) {
            Sector::Minus
        } else {
            Sector::Mixed
        };
        HomologyClass { coords, sector }
    }

    /// `T_p` on the whole space by Heilbronn matrices of determinant `p`; `U_p` for `p = N`
    /// by the coset action on paths.
    pub fn hecke_full(&self, p: u64) -> Result<QMatrix> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{} is not prime", p)));
        }
        if p == self.level {
            return Ok(self.atkin_lehner_coset(p));
        }
        let h = heilbronn(p as i64);
        Ok(self
            .basis_symbols()
            .iter()
            .map(|&(c, d)| {
                let (c, d) = (c as i64, d as i64);
                let mut row = zero_vec(self.dimension());
                for &[a, b, cc, dd] in &h {
                    let one = Rational::one();
                    add_scaled(&mut row, self.symbol(c * a + d * cc, c * b + d * dd), &one);
                }
                row
            })
            .collect())
    }

    fn atkin_lehner_coset(&self, p: u64) -> QMatrix {
        let p = p as i64;
        self.basis_symbols()
            .iter()
            .map(|&(c, d)| {
                let (alpha, beta) = self.symbol_path(c, d);
                let mut row = zero_vec(self.dimension());
                for j in 0..p {
                    let shift = |x: Cusp| if x.is_infinity() { x } else { Cusp::new(x.num + j * x.den, p * x.den) };
                    add_scaled(&mut row, &self.path(shift(alpha), shift(beta)), &Rational::one());
                }
                row
            })
            .collect()
    }

    /// `T_p` restricted to the cuspidal subspace, in the basis [`Self::cuspidal_basis`].
    pub fn hecke_matrix(&self, p: u64) -> Result<QMatrix> {
        let t = self.hecke_full(p)?;
        self.restrict_to_cuspidal(&t)
    }

    pub fn restrict_to_cuspidal(&self, t: &QMatrix) -> Result<QMatrix> {
        self.cuspidal.iter().map(|row| self.cuspidal_coords(&self.apply(row, t))).collect()
    }

    /// Coordinates of a cuspidal vector in the cuspidal basis.
    pub fn cuspidal_coords(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        let k = self.cuspidal.len();
        let mut aug: QMatrix = self.cuspidal.clone();
        aug.push(x.to_vec());
        let t: QMatrix = (0..self.dimension()).map(|j| aug.iter().map(|r| r[j].clone()).collect()).collect();
        let (r, piv) = rref(&t);
        if piv.contains(&k) {
            return Err(Error::Domain("vector is not cuspidal".into()));
        }
        let mut out = zero_vec(k);
        for (row, &c) in r.iter().zip(&piv) {
            out[c] = row[k].clone();
        }
        Ok(out)
    }

    /// The path `{g 0, g oo}` for a matrix `g` in `SL_2(Z)` with bottom row `(c, d)`.
    pub fn symbol_path(&self, c: u64, d: u64) -> (Cusp, Cusp) {
        let n = self.level as i64;
        let (c, d) = (c as i64, d as i64);
        if c % n == 0 {
            return (Cusp::ZERO, Cusp::INFINITY);
        }
        // (1 : d/c) is represented by [[0, -1], [1, d/c]]
        let t = (d * mod_inv(c, n).unwrap()).rem_euclid(n);
        (Cusp::new(-1, t), Cusp::ZERO)
    }

    /// Class of `{0, x}` from the convergents of `x`.
    fn from_zero(&self, x: Cusp, ceil: &mut dyn FnMut() -> bool) -> Vec<Rational> {
        let mut out = self.symbol(0, 1).to_vec();
        if x.is_infinity() {
            return out;
        }
        let one = Rational::one();
        let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
        let (mut num, mut den) = (x.num, x.den);
        let mut det = 1i64;
        loop {
            if den < 0 {
                (num, den) = (-num, -den);
            }
            let fl = num.div_euclid(den);
            let a = if num % den != 0 && ceil() { fl + 1 } else { fl };
            let (p2, q2) = (a * p1 + p0, a * q1 + q0);
            // {p1/q1, p2/q2}; det [[p2, p1], [q2, q1]] alternates in sign
            det = -det;
            add_scaled(&mut out, self.symbol(q2, det * q1), &one);
            (p0, q0, p1, q1) = (p1, q1, p2, q2);
            let r = num - a * den;
            if r == 0 {
                break;
            }
            (num, den) = (den, r);
        }
        out
    }

    /// Class of the geodesic `{from, to}`.
    pub fn path(&self, from: Cusp, to: Cusp) -> Vec<Rational> {
        self.path_with(from, to, &mut || false)
    }

    /// As [`Self::path`], with `ceil` choosing at each Euclidean step whether to round
    /// the partial quotient up instead of down. Every choice gives the same class.
    pub fn path_with(&self, from: Cusp, to: Cusp, ceil: &mut dyn FnMut() -> bool) -> Vec<Rational> {
        let mut out = self.from_zero(to, ceil);
        let a = self.from_zero(from, ceil);
        add_scaled(&mut out, &a, &-Rational::one());
        out
    }

    pub fn path_class(&self, from: Cusp, to: Cusp) -> HomologyClass {
        self.classify(self.path(from, to))
    }

    /// Plain-text dump of the star involution and `T_p` for the given primes.
    pub fn debug_dump(&self, primes: &[u64]) -> Result<String> {
        let mut s = format!("level {} dimension {} cuspidal {}\n", self.level, self.dimension(), self.cuspidal_dimension());
        let fmt_m = |m: &QMatrix| {
            m.iter()
                .map(|r| r.iter().map(crate::exact_arith::fmt_rational).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("\n")
        };
        s.push_str("star\n");
        s.push_str(&fmt_m(&self.star));
        for &p in primes {
            s.push_str(&format!("\nT_{}\n", p));
            s.push_str(&fmt_m(&self.hecke_full(p)?));
        }
        s.push('\n');
        Ok(s)
    }
}

/// Index of `(c:d)`: `d/c mod N` when `c` is a unit, `N` for `(0:1)`.
fn p1_index(n: u64, c: i64, d: i64) -> usize {
    let n = n as i64;
    let (c, d) = (c.rem_euclid(n), d.rem_euclid(n));
    if c == 0 {
        n as usize
    } else {
        (d * mod_inv(c, n).unwrap()).rem_euclid(n) as usize
    }
}

fn p1_point(n: u64, i: usize) -> (u64, u64) {
    if i as u64 == n {
        (0, 1)
    } else {
        (1, i as u64)
    }
}

/// Matrices `[[a, b], [c, d]]` with `ad - bc = p`, `a > b >= 0`, `d > c >= 0`.
fn heilbronn(p: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    for a in 1..=p {
        for b in 0..a {
            let mut c = 0;
            while c * (a - b) < p {
                let num = p + b * c;
                if num % a == 0 {
                    let d = num / a;
                    if d > c {
                        out.push([a, b, c, d]);
                    }
                }
                c += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heilbronn_counts() {
        assert_eq!(heilbronn(2).len(), 4);
        for h in heilbronn(7) {
            assert_eq!(h[0] * h[3] - h[1] * h[2], 7);
        }
    }

    #[test]
    fn composite_level_rejected() {
        assert!(matches!(ManinSymbolSpace::new(33), Err(Error::Unsupported(_))));
    }

    #[test]
    fn degenerate_path_is_zero() {
        let m = ManinSymbolSpace::new(11).unwrap();
        assert!(m.path_class(Cusp::ZERO, Cusp::new(0, 1)).is_zero());
        assert!(!m.path_class(Cusp::ZERO, Cusp::INFINITY).is_zero());
    }
}
