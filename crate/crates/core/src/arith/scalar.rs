//! Exact scalars: arbitrary-precision rationals and prime-field residues.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ArithError;

/// The base field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Validates the modulus of a prime field.
    pub fn prime(p: u64) -> Result<Self, ArithError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(ArithError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Fp { value: (v as i128).rem_euclid(p as i128) as u64, modulus: p },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            Field::Rational => Scalar::Q(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Fp { value: r.to_u64().expect("residue fits"), modulus: p }
            }
        }
    }

    /// Maps a rational number into the field; fails when the denominator
    /// vanishes modulo `p`.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar, ArithError> {
        match *self {
            Field::Rational => Ok(Scalar::Q(q.clone())),
            Field::Prime(_) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                let inv = den.inv().ok_or(ArithError::DivisionByZero)?;
                Ok(&num * &inv)
            }
        }
    }

    /// Parses `"a"` or `"a/b"` into the field.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, ArithError> {
        let s = s.trim();
        let q = match s.split_once('/') {
            Some((a, b)) => {
                let a = BigInt::from_str(a.trim()).map_err(|_| ArithError::Parse(s.into()))?;
                let b = BigInt::from_str(b.trim()).map_err(|_| ArithError::Parse(s.into()))?;
                if b.is_zero() {
                    return Err(ArithError::DivisionByZero);
                }
                BigRational::new(a, b)
            }
            None => BigRational::from_integer(BigInt::from_str(s).map_err(|_| ArithError::Parse(s.into()))?),
        };
        self.from_rational(&q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// Deterministic trial division; moduli here stay far below 2^40.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of `Q` (always in lowest terms, positive denominator) or of `F_p`
/// (residue in `[0, p)`).
///
/// Arithmetic between elements of different fields is a logic error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { value, modulus } => {
                Scalar::Fp { value: mod_pow(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        let inv = other.inv().ok_or(ArithError::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Rational value, if this lives in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp { .. } => None,
        }
    }

    /// Integer value of a rational scalar with denominator one.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Q(q) if q.is_integer() => Some(q.numer().clone()),
            Scalar::Q(_) => None,
            Scalar::Fp { value, .. } => Some(BigInt::from(*value)),
        }
    }

    /// Sign of a rational scalar; `None` over `F_p`.
    pub fn signum(&self) -> Option<i32> {
        match self {
            Scalar::Q(q) if q.is_zero() => Some(0),
            Scalar::Q(q) if q.is_positive() => Some(1),
            Scalar::Q(_) => Some(-1),
            Scalar::Fp { .. } => None,
        }
    }
}

fn mod_pow(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut base = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

fn same_prime(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "scalar field mismatch: F_{a} vs F_{b}");
    a
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { value: a, modulus: p }, Scalar::Fp { value: b, modulus: q }) => {
                let p = same_prime(*p, *q);
                Scalar::Fp { value: ((*a as u128 + *b as u128) % p as u128) as u64, modulus: p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { value: a, modulus: p }, Scalar::Fp { value: b, modulus: q }) => {
                let p = same_prime(*p, *q);
                Scalar::Fp { value: ((*a as u128 * *b as u128) % p as u128) as u64, modulus: p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { value, modulus } => {
                Scalar::Fp { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}
