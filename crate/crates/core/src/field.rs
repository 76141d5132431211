//! Runtime-selected exact coefficient fields: the rationals or a prime field.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

/// A coefficient field: `Q` or `F<p>` with `p` an odd prime.
///
/// Characteristic 2 is rejected everywhere; the constructions downstream
/// divide by 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime modulus {0} too large (must be < 2^31)")]
    TooLarge(u64),
    #[error("cannot parse field `{0}` (expected `Q` or `F<p>`)")]
    Parse(String),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(FieldError::TooLarge(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// Parses `"Q"` or `"F<p>"`, e.g. `"F3"`.
    pub fn parse(s: &str) -> Result<Self, FieldError> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = s.strip_prefix('F') {
            if let Ok(p) = rest.parse::<u64>() {
                return FieldSpec::prime(p);
            }
        }
        Err(FieldError::Parse(s.to_string()))
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            FieldSpec::Prime(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { p: *p, val: r }
            }
        }
    }

    /// `a / b` as a field element; panics if `b == 0` in the field.
    pub fn from_ratio(&self, a: i64, b: i64) -> Scalar {
        self.from_int(a).div(&self.from_int(b))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// An element of a [`FieldSpec`] field. Values carry their field; mixing
/// fields in arithmetic is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { p: u64, val: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Fp { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
        }
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(self.field(), other.field(), "scalar field mismatch");
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => {
                Scalar::Fp { p: *p, val: (a + b) % p }
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { p, val } => Scalar::Fp { p: *p, val: (p - val) % p },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => {
                Scalar::Fp { p: *p, val: (a * b) % p }
            }
            _ => unreachable!(),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Fp { p, val } => {
                // Fermat: val^(p-2) mod p.
                let mut base = *val;
                let mut exp = p - 2;
                let mut acc = 1u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Scalar::Fp { p: *p, val: acc }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    /// Evaluates as an integer when the value is integral (testing aid).
    pub fn to_integer(&self) -> Option<i64> {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    let n = r.numer();
                    i64::try_from(n.clone()).ok()
                } else {
                    None
                }
            }
            Scalar::Fp { val, .. } => Some(*val as i64),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { val, .. } => write!(f, "{val}"),
        }
    }
}

/// True when the rational value is negative (used only for rendering).
pub fn is_negative(s: &Scalar) -> bool {
    match s {
        Scalar::Rat(r) => r.is_negative(),
        Scalar::Fp { .. } => false,
    }
}
