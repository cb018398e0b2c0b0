//! Exact scalar fields: arbitrary-precision rationals and prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LinError;

/// The ground field shared by every scalar of one computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Field {
    Rationals,
    Prime { p: u64 },
}

/// A field element. The variant always matches the [`Field`] it was made in.
///
/// Rationals are kept in lowest terms with a positive denominator (the
/// `BigRational` invariant), prime-field elements in `0..p`, so derived
/// equality is canonical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Box<BigRational>),
    Mod(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, LinError> {
        // 2^31 keeps products of two residues inside u64.
        if !is_prime(p) || p >= (1 << 31) {
            return Err(LinError::NotPrime(p));
        }
        Ok(Field::Prime { p })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime { p } => *p,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime { p } => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(Box::new(BigRational::zero())),
            Field::Prime { .. } => Scalar::Mod(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::rat(BigRational::from_integer(BigInt::from(v))),
            Field::Prime { p } => Scalar::Mod(v.rem_euclid(*p as i64) as u64),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, LinError> {
        if den == 0 {
            return Err(LinError::DivisionByZero);
        }
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        let inv = self.inv(&d).ok_or(LinError::DivisionByZero)?;
        Ok(self.mul(&n, &inv))
    }

    /// The `index`-th element in the fixed enumeration order `0, 1, …, p-1`.
    pub fn element(&self, index: u64) -> Scalar {
        match self {
            Field::Rationals => self.from_i64(index as i64),
            Field::Prime { p } => Scalar::Mod(index % p),
        }
    }

    /// All elements of a prime field, in enumeration order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.order().map(|q| (0..q).map(Scalar::Mod).collect())
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::rat(&**x + &**y),
            (Field::Prime { p }, Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % p),
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::rat(&**x - &**y),
            (Field::Prime { p }, Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + p - y) % p),
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rationals, Scalar::Rat(x)) => Scalar::rat(-&**x),
            (Field::Prime { p }, Scalar::Mod(x)) => Scalar::Mod((p - x) % p),
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::rat(&**x * &**y),
            (Field::Prime { p }, Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x * y) % p),
            _ => panic!("scalar from a different field"),
        }
    }

    /// `acc += a * b`, the inner-loop primitive of every matrix product.
    pub fn mul_add_assign(&self, acc: &mut Scalar, a: &Scalar, b: &Scalar) {
        match (self, acc, a, b) {
            (Field::Prime { p }, Scalar::Mod(s), Scalar::Mod(x), Scalar::Mod(y)) => {
                *s = (*s + x * y) % p;
            }
            (Field::Rationals, Scalar::Rat(s), Scalar::Rat(x), Scalar::Rat(y)) => {
                **s += &**x * &**y;
            }
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match (self, a) {
            (Field::Rationals, Scalar::Rat(x)) => Some(Scalar::rat(x.recip())),
            (Field::Prime { p }, Scalar::Mod(x)) => {
                let e = BigInt::from(*x).extended_gcd(&BigInt::from(*p));
                let r = e.x.mod_floor(&BigInt::from(*p));
                Some(Scalar::Mod(r.to_u64().expect("residue fits u64")))
            }
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Field::Rationals, Scalar::Rat(_)) => true,
            (Field::Prime { p }, Scalar::Mod(x)) => x < p,
            _ => false,
        }
    }

    /// Parses `"3"`, `"-3/4"`; prime-field inputs are reduced mod p.
    pub fn parse(&self, s: &str) -> Result<Scalar, LinError> {
        let t = s.trim();
        let bad = || LinError::Parse(s.to_string());
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<BigInt>().map_err(|_| bad())?,
                d.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (t.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(LinError::DivisionByZero);
        }
        match self {
            Field::Rationals => Ok(Scalar::rat(BigRational::new(num, den))),
            Field::Prime { p } => {
                let pb = BigInt::from(*p);
                let n = num.mod_floor(&pb).to_u64().ok_or_else(bad)?;
                let d = den.mod_floor(&pb).to_u64().ok_or_else(bad)?;
                self.div(&Scalar::Mod(n), &Scalar::Mod(d))
                    .ok_or(LinError::DivisionByZero)
            }
        }
    }
}

impl Scalar {
    pub fn rat(x: BigRational) -> Scalar {
        Scalar::Rat(Box::new(x))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Mod(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(x) => x.is_one(),
            Scalar::Mod(x) => *x == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(x) => Some(x),
            Scalar::Mod(_) => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rat(x) if x.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Mod(x) => write!(f, "{x}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime { p } => write!(f, "F_{p}"),
        }
    }
}
