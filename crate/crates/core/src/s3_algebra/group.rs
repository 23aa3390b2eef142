use std::fmt;

use serde::Serialize;

/// `r^i s^j` stored as `3i + j`, with `s = (123)` and `r = (23)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct S3(pub u8);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjugacyClass {
    Identity,
    Transposition,
    ThreeCycle,
}

impl ConjugacyClass {
    pub fn size(self) -> usize {
        match self {
            ConjugacyClass::Identity => 1,
            ConjugacyClass::Transposition => 3,
            ConjugacyClass::ThreeCycle => 2,
        }
    }

    pub fn representative(self) -> S3 {
        match self {
            ConjugacyClass::Identity => S3::ONE,
            ConjugacyClass::Transposition => S3::R,
            ConjugacyClass::ThreeCycle => S3::S,
        }
    }
}

impl fmt::Display for ConjugacyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConjugacyClass::Identity => "identity",
            ConjugacyClass::Transposition => "transposition",
            ConjugacyClass::ThreeCycle => "three_cycle",
        })
    }
}

/// The irreducible characters: trivial, sign and the two-dimensional `psi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Character {
    Chi0,
    Chi,
    Psi,
}

impl Character {
    pub fn all() -> [Character; 3] {
        [Character::Chi0, Character::Chi, Character::Psi]
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn dim(self) -> usize {
        if self == Character::Psi {
            2
        } else {
            1
        }
    }

    pub fn value(self, g: S3) -> i64 {
        match self {
            Character::Chi0 => 1,
            Character::Chi => g.sign(),
            Character::Psi => g.psi(),
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Character::Chi0 => "chi0",
            Character::Chi => "chi",
            Character::Psi => "psi",
        })
    }
}

pub type Mat2 = [[i64; 2]; 2];

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

pub const RHO_R: Mat2 = [[0, -1], [-1, 0]];
pub const RHO_S: Mat2 = [[-1, -1], [1, 0]];

impl S3 {
    pub const ONE: S3 = S3(0);
    pub const S: S3 = S3(1);
    pub const S2: S3 = S3(2);
    pub const R: S3 = S3(3);
    pub const RS: S3 = S3(4);
    pub const RS2: S3 = S3(5);

    pub fn all() -> [S3; 6] {
        [S3(0), S3(1), S3(2), S3(3), S3(4), S3(5)]
    }

    pub fn new(i: u8, j: u8) -> S3 {
        S3(3 * (i % 2) + j % 3)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    fn parts(self) -> (u8, u8) {
        (self.0 / 3, self.0 % 3)
    }

    /// `r^a s^b * r^c s^d = r^(a+c) s^((-1)^c b + d)`.
    pub fn mul(self, o: S3) -> S3 {
        let (a, b) = self.parts();
        let (c, d) = o.parts();
        let b = if c == 1 { (3 - b) % 3 } else { b };
        S3::new(a + c, b + d)
    }

    pub fn inv(self) -> S3 {
        S3::all().into_iter().find(|&h| self.mul(h) == S3::ONE).unwrap()
    }

    pub fn pow(self, n: u32) -> S3 {
        (0..n).fold(S3::ONE, |acc, _| acc.mul(self))
    }

    pub fn order(self) -> u32 {
        (1..=6).find(|&n| self.pow(n) == S3::ONE).unwrap()
    }

    pub fn class(self) -> ConjugacyClass {
        match self.order() {
            1 => ConjugacyClass::Identity,
            2 => ConjugacyClass::Transposition,
            _ => ConjugacyClass::ThreeCycle,
        }
    }

    pub fn sign(self) -> i64 {
        if self.parts().0 == 1 {
            -1
        } else {
            1
        }
    }

    /// Image of root index `i` in `{0, 1, 2}` under the automorphism `r^a o s^b`.
    pub fn permute(self, i: usize) -> usize {
        let (a, b) = self.parts();
        let mut k = (i + b as usize) % 3;
        if a == 1 && k != 0 {
            k = 3 - k;
        }
        k
    }

    pub fn rho(self) -> Mat2 {
        let (a, b) = self.parts();
        let mut m = [[1, 0], [0, 1]];
        if a == 1 {
            m = RHO_R;
        }
        for _ in 0..b {
            m = mat_mul(&m, &RHO_S);
        }
        m
    }

    pub fn psi(self) -> i64 {
        let m = self.rho();
        m[0][0] + m[1][1]
    }
}

impl fmt::Display for S3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["1", "s", "s^2", "r", "rs", "rs^2"][self.index()])
    }
}

impl Serialize for S3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
