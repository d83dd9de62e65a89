use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

/// An element of some carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    /// Exact rational, always reduced with positive denominator.
    Rat(BigRational),
    /// Residue in `[0, modulus)`.
    Fp { residue: u64, modulus: u64 },
    /// The absorptive element of an enlarged structure.
    Bot,
}

impl Value {
    pub fn rat(num: i64, den: i64) -> Value {
        Value::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn int(n: i64) -> Value {
        Value::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn fp(residue: u64, modulus: u64) -> Value {
        Value::Fp { residue: residue % modulus, modulus }
    }

    pub fn is_bot(&self) -> bool {
        matches!(self, Value::Bot)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Rat(r) => r.is_zero(),
            Value::Fp { residue, .. } => *residue == 0,
            Value::Bot => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Value::Rat(r) => r.is_one(),
            Value::Fp { residue, .. } => *residue == 1,
            Value::Bot => false,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rat(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Value::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Value::Fp { residue, .. } => write!(f, "{residue}"),
            Value::Bot => f.write_str("bot"),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

pub(crate) fn is_prime(n: u64) -> bool {
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
