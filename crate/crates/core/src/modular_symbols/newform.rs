use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Cusp, DirichletCharacter, HomologyClass, ManinSymbolSpace};
use crate::elliptic_curve::{trace_ap, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::exact_arith::{hnf_rows, inverse, primes_up_to, solve_left_kernel, QMatrix, Rational};

/// Plus-sector cycle of a rational newform together with the dual functional.
#[derive(Clone, Debug)]
pub struct NewformSymbol {
    /// Primitive generator of the integral plus lattice on the eigenline, signed so that
    /// `lratio > 0`.
    pub gamma: HomologyClass,
    /// Hecke-equivariant functional killing the minus sector and the other eigenspaces,
    /// normalised by `lambda(gamma) = 1`.
    pub lambda: Vec<Rational>,
    pub eigenvalues: Vec<(u64, i64)>,
}

fn int_rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn shifted(m: &QMatrix, a: i64) -> QMatrix {
    let mut out = m.clone();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] -= int_rat(a);
    }
    out
}

fn transpose(m: &QMatrix) -> QMatrix {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

fn hstack(parts: &[QMatrix]) -> QMatrix {
    let n = parts[0].len();
    (0..n).map(|i| parts.iter().flat_map(|p| p[i].iter().cloned()).collect()).collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl NewformSymbol {
    /// Eigenline of the Hecke eigenvalues of `curve`, using primes `p < 100` not dividing
    /// the level until the line is cut out.
    pub fn compute(space: &ManinSymbolSpace, curve: &WeierstrassCurve) -> Result<NewformSymbol> {
        if curve.conductor != space.level() {
            return Err(Error::Domain(format!("curve conductor {} differs from level {}", curve.conductor, space.level())));
        }
        let n = space.dimension();
        let id_minus_star = shifted(space.star_matrix(), 1);
        let boundary: QMatrix = (0..n)
            .map(|i| {
                let mut e = vec![Rational::zero(); n];
                e[i] = Rational::one();
                vec![space.boundary(&e)]
            })
            .collect();
        let mut left = vec![id_minus_star.clone(), boundary];
        let mut right = vec![transpose(&id_minus_star)];
        let mut eigenvalues = Vec::new();
        let mut line = None;
        for p in primes_up_to(100) {
            if p == space.level() {
                continue;
            }
            let a = trace_ap(curve, p)?;
            let t = space.hecke_full(p)?;
            left.push(shifted(&t, a));
            right.push(transpose(&shifted(&t, a)));
            eigenvalues.push((p, a));
            let k = solve_left_kernel(&hstack(&left));
            if k.len() == 1 {
                line = Some((k[0].clone(), solve_left_kernel(&hstack(&right))));
                break;
            }
            if k.is_empty() {
                return Err(Error::Validation {
                    hypothesis: "modularity".into(),
                    detail: format!("no plus eigenvector with the Hecke eigenvalues of {} up to {}", curve.label, p),
                });
            }
        }
        let Some((v, lam)) = line else {
            return Err(Error::Domain("eigenvalues up to 100 leave a subspace of dimension > 1".into()));
        };
        if lam.len() != 1 {
            return Err(Error::Domain("Hecke-equivariant functional not unique".into()));
        }
        let gamma = primitive_on_line(space, &v)?;
        let mut lambda = lam[0].clone();
        let scale = dot(&gamma, &lambda);
        lambda.iter_mut().for_each(|x| *x /= &scale);
        let mut nf = NewformSymbol { gamma: space.classify(gamma), lambda, eigenvalues };
        if nf.coordinate(&space.path(Cusp::INFINITY, Cusp::ZERO)).is_negative() {
            nf.gamma.coords.iter_mut().for_each(|x| *x = -x.clone());
            nf.lambda.iter_mut().for_each(|x| *x = -x.clone());
        }
        Ok(nf)
    }

    /// `gamma_f`-coordinate of the projection of `x` onto the eigenline.
    pub fn coordinate(&self, x: &[Rational]) -> Rational {
        dot(x, &self.lambda)
    }

    pub fn lratio(&self, space: &ManinSymbolSpace) -> Rational {
        self.coordinate(&space.path(Cusp::INFINITY, Cusp::ZERO))
    }

    /// `sum_a chi(a) lambda({0, a/m})` for an even quadratic `chi`.
    pub fn twisted_sum(&self, space: &ManinSymbolSpace, chi: &DirichletCharacter, ceil: &mut dyn FnMut() -> bool) -> Result<Rational> {
        let m = chi.modulus;
        if m.gcd(&space.level()) != 1 {
            return Err(Error::Domain(format!("twist modulus {} not coprime to level {}", m, space.level())));
        }
        if m == 1 {
            return Ok(self.lratio(space));
        }
        if chi.order != 2 || !chi.is_even() {
            return Err(Error::Domain("twist must be an even quadratic character".into()));
        }
        let mut total = Rational::zero();
        for a in 1..m as i64 {
            let s = chi.sign(a);
            if s != 0 {
                total += int_rat(s) * self.coordinate(&space.path_with(Cusp::ZERO, Cusp::new(a, m as i64), ceil));
            }
        }
        Ok(total)
    }
}

/// Primitive vector of the integral symbol lattice on the line through `v`.
fn primitive_on_line(space: &ManinSymbolSpace, v: &[Rational]) -> Result<Vec<Rational>> {
    let n = space.dimension();
    let level = space.level() as i64;
    let mut gens: Vec<Vec<Rational>> = vec![space.symbol(0, 1).to_vec()];
    gens.extend((0..level).map(|d| space.symbol(1, d).to_vec()));
    let den = gens
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|r| r.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect())
        .collect();
    let basis: QMatrix = hnf_rows(&ints)
        .into_iter()
        .map(|r| r.into_iter().map(|x| Rational::new(x, den.clone())).collect())
        .collect();
    if basis.len() != n {
        return Err(Error::Numeric("symbol lattice is not of full rank".into()));
    }
    let inv = inverse(&basis).ok_or_else(|| Error::Numeric("singular lattice basis".into()))?;
    let y: Vec<Rational> = (0..n).map(|j| (0..n).map(|i| &v[i] * &inv[i][j]).sum()).collect();
    let l = y.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = y.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let y: Vec<Rational> = ints.iter().map(|x| Rational::from_integer(x / &g)).collect();
    Ok((0..n).map(|j| (0..n).map(|i| &y[i] * &basis[i][j]).sum()).collect())
}

/// `L(f, 1) / Omega_+` for the newform attached to `curve`.
pub fn lratio(space: &ManinSymbolSpace, curve: &WeierstrassCurve) -> Result<Rational> {
    Ok(NewformSymbol::compute(space, curve)?.lratio(space))
}

/// `r` with `L(f x chi, 1) = (g(chi) / m) r Omega_+`.
pub fn twisted_lratio(space: &ManinSymbolSpace, curve: &WeierstrassCurve, chi: &DirichletCharacter) -> Result<Rational> {
    NewformSymbol::compute(space, curve)?.twisted_sum(space, chi, &mut || false)
}
