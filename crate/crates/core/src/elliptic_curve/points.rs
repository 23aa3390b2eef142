use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::WeierstrassCurve;
use crate::error::{domain, Result};
use crate::exact_arith::Rational;

/// A rational point in affine coordinates, or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Infinity,
    Affine(Rational, Rational),
}

impl Point {
    pub fn affine(x: i64, y: i64) -> Point {
        Point::Affine(Rational::from_integer(x.into()), Rational::from_integer(y.into()))
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl WeierstrassCurve {
    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                let lhs = y * y + q(self.a1) * x * y + q(self.a3) * y;
                let rhs = x * x * x + q(self.a2) * x * x + q(self.a4) * x + q(self.a6);
                lhs == rhs
            }
        }
    }

    pub fn negate(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), -y - q(self.a1) * x - q(self.a3)),
        }
    }

    pub fn add_points(&self, p: &Point, r: &Point) -> Point {
        let (x1, y1, x2, y2) = match (p, r) {
            (Point::Infinity, _) => return r.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(a, b), Point::Affine(c, d)) => (a, b, c, d),
        };
        let (a1, a2, a3, a4) = (q(self.a1), q(self.a2), q(self.a3), q(self.a4));
        let lambda = if x1 == x2 {
            let denom = q(2) * y1 + &a1 * x1 + &a3;
            if denom.is_zero() {
                return Point::Infinity;
            }
            if y1 != y2 {
                return Point::Infinity;
            }
            (q(3) * x1 * x1 + q(2) * &a2 * x1 + &a4 - &a1 * y1) / denom
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let nu = y1 - &lambda * x1;
        let x3 = &lambda * &lambda + &a1 * &lambda - &a2 - x1 - x2;
        let y3 = -(&lambda + &a1) * &x3 - &nu - &a3;
        Point::Affine(x3, y3)
    }

    pub fn multiply(&self, p: &Point, n: u64) -> Point {
        let mut acc = Point::Infinity;
        let mut base = p.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add_points(&acc, &base);
            }
            base = self.add_points(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Exact order of a rational point, if it is at most `max`.
    pub fn point_order(&self, p: &Point, max: u64) -> Option<u64> {
        let mut acc = p.clone();
        for n in 1..=max {
            if acc == Point::Infinity {
                return Some(n);
            }
            acc = self.add_points(&acc, p);
        }
        None
    }
}

/// Bound on `|E(K)_tors|` from orders of reductions at places where prime-to-p torsion injects:
/// the gcd of the given group orders.
pub fn torsion_bound(residue_counts: &[u64]) -> Result<u64> {
    if residue_counts.is_empty() {
        return domain("torsion bound needs at least one residue count");
    }
    Ok(residue_counts.iter().fold(0u64, |g, &n| g.gcd(&n)))
}
