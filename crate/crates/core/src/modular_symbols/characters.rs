use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact_arith::{factorize, is_prime, kronecker, mod_pow, Real};

/// Dirichlet character with values in the `order`-th roots of unity:
/// `chi(a) = exp(2 pi i exponent(a) / order)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCharacter {
    pub modulus: u64,
    pub order: u64,
    /// Indexed by `a mod modulus`; `None` where `gcd(a, modulus) > 1`.
    exponents: Vec<Option<u64>>,
}

fn primitive_root(p: u64) -> u64 {
    let phi = p - 1;
    let qs: Vec<u64> = factorize(phi).into_iter().map(|(q, _)| q).collect();
    (2..p).find(|&g| qs.iter().all(|q| mod_pow(g, phi / q, p) != 1)).unwrap_or(1)
}

impl DirichletCharacter {
    pub fn trivial() -> DirichletCharacter {
        DirichletCharacter { modulus: 1, order: 1, exponents: vec![Some(0)] }
    }

    /// Kronecker symbol `(d / .)` of a fundamental discriminant, modulo `|d|`.
    pub fn quadratic(d: i64) -> Result<DirichletCharacter> {
        if !is_fundamental(d) {
            return Err(Error::Domain(format!("{} is not a fundamental discriminant", d)));
        }
        let m = d.unsigned_abs();
        if m == 1 {
            return Ok(DirichletCharacter::trivial());
        }
        let exponents = (0..m)
            .map(|a| match kronecker(d, a.max(1)) {
                _ if a.gcd(&m) != 1 => None,
                1 => Some(0),
                _ => Some(1),
            })
            .collect();
        Ok(DirichletCharacter { modulus: m, order: 2, exponents })
    }

    /// `chi(g^i) = zeta_{p-1}^{k i}` for the least primitive root `g` mod the odd prime `p`.
    pub fn from_prime(p: u64, k: u64) -> Result<DirichletCharacter> {
        if !is_prime(p) || p == 2 {
            return Err(Error::Domain(format!("{} is not an odd prime", p)));
        }
        let g = primitive_root(p);
        let n = p - 1;
        let order = n / k.gcd(&n);
        let mut exponents = vec![None; p as usize];
        let mut x = 1u64;
        for i in 0..n {
            exponents[x as usize] = Some((k % n) * i % n / (n / order));
            x = x * g % p;
        }
        Ok(DirichletCharacter { modulus: p, order, exponents })
    }

    pub fn exponent(&self, a: i64) -> Option<u64> {
        self.exponents[a.rem_euclid(self.modulus as i64) as usize]
    }

    /// `chi(a)` for a character of order at most 2.
    pub fn sign(&self, a: i64) -> i64 {
        match self.exponent(a) {
            None => 0,
            Some(0) => 1,
            Some(_) => -1,
        }
    }

    pub fn is_quadratic(&self) -> bool {
        self.order == 2
    }

    pub fn is_even(&self) -> bool {
        match self.exponent(-1) {
            Some(e) => e == 0,
            None => true,
        }
    }

    pub fn is_primitive(&self) -> bool {
        let m = self.modulus;
        (1..m).filter(|d| m % d == 0).all(|d| {
            (0..m).any(|a| a % d == 1 % d && matches!(self.exponents[a as usize], Some(e) if e != 0))
        })
    }

    /// `(cos, sin)` of `2 pi exponent(a) / order`.
    pub fn value(&self, a: i64, prec: u32) -> (Real, Real) {
        match self.exponent(a) {
            None => (Real::zero(prec), Real::zero(prec)),
            Some(e) => (Real::pi(prec).mul_2exp(1).mul_int(e as i64).div_int(self.order as i64)).cos_sin(),
        }
    }
}

fn is_fundamental(d: i64) -> bool {
    if d == 1 {
        return true;
    }
    let squarefree = |n: u64| factorize(n).iter().all(|&(_, e)| e == 1);
    match d.rem_euclid(4) {
        1 => squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

#[derive(Clone, Debug)]
pub struct GaussSum {
    pub re: Real,
    pub im: Real,
    /// For quadratic characters, `g = sqrt(m)` (even) or `i sqrt(m)` (odd): `(m, odd)`.
    pub exact: Option<(u64, bool)>,
}

/// `sum_{a mod m} chi(a) exp(2 pi i a / m)` by direct summation at `digits` digits.
pub fn gauss_sum(chi: &DirichletCharacter, digits: u32) -> Result<GaussSum> {
    if !chi.is_primitive() {
        return Err(Error::Domain(format!("character mod {} is not primitive", chi.modulus)));
    }
    let prec = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32;
    let m = chi.modulus as i64;
    let two_pi = Real::pi(prec).mul_2exp(1);
    let (mut re, mut im) = (Real::zero(prec), Real::zero(prec));
    for a in 0..m {
        let Some(e) = chi.exponent(a) else { continue };
        // chi(a) e(a/m) = e(e/order + a/m)
        let num = e as i64 * m + a * chi.order as i64;
        let den = chi.order as i64 * m;
        let (c, s) = two_pi.mul_int(num).div_int(den).cos_sin();
        re = &re + &c;
        im = &im + &s;
    }
    let exact = if chi.order <= 2 {
        let odd = !chi.is_even();
        let root = Real::from_int(chi.modulus, prec).sqrt();
        let (want_re, want_im) = if odd { (Real::zero(prec), root) } else { (root, Real::zero(prec)) };
        let tol = 10f64.powi(-(digits as i32 - 5));
        if !re.within(&want_re, tol) || !im.within(&want_im, tol) {
            return Err(Error::Numeric(format!("Gauss sum mod {} does not match its closed form", m)));
        }
        Some((chi.modulus, odd))
    } else {
        None
    };
    Ok(GaussSum { re, im, exact })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_characters() {
        let chi = DirichletCharacter::quadratic(229).unwrap();
        assert!(chi.is_even() && chi.is_primitive());
        assert_eq!(chi.sign(2), -1);
        assert!(DirichletCharacter::quadratic(9).is_err() && DirichletCharacter::quadratic(12).is_ok());
        assert!(!DirichletCharacter::quadratic(-4).unwrap().is_even());
    }

    #[test]
    fn quadratic_gauss_sums() {
        for (d, m) in [(229, 229u64), (5, 5), (-3, 3), (8, 8)] {
            let g = gauss_sum(&DirichletCharacter::quadratic(d).unwrap(), 50).unwrap();
            assert_eq!(g.exact, Some((m, d < 0)));
        }
    }

    #[test]
    fn imprimitive_rejected() {
        let chi = DirichletCharacter::from_prime(7, 0).unwrap();
        assert!(matches!(gauss_sum(&chi, 30), Err(Error::Domain(_))));
    }
}
