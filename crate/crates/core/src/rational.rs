//! Exact rational helpers shared by the constant computations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Smallest integer `>= r`, saturating at `u64::MAX`. Negative values clamp to 0.
pub fn ceil_u64(r: &Rational) -> u64 {
    if r.is_negative() {
        return 0;
    }
    let (q, rem) = r.numer().div_rem(r.denom());
    let q = if rem.is_zero() { q } else { q + BigInt::one() };
    q.to_u64().unwrap_or(u64::MAX)
}

pub fn max(a: Rational, b: Rational) -> Rational {
    if a >= b {
        a
    } else {
        b
    }
}

/// `"p/q"`, or `"p"` for integers.
pub fn to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_string(r))
}

/// Serde adapter wrapper for use in report structs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize(&self.0, s)
    }
}
