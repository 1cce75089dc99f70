//! Exact rational numbers.
//!
//! Coefficients are `num_rational::BigRational`, which is always kept in
//! lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ceil(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

pub fn floor(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

/// `⌈q⌉` as an `i64`, if it fits.
pub fn ceil_i64(q: &Rational) -> Option<i64> {
    ceil(q).to_i64()
}

pub fn floor_i64(q: &Rational) -> Option<i64> {
    floor(q).to_i64()
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn is_positive(q: &Rational) -> bool {
    q.is_positive()
}

/// True iff `0 < q <= 1`.
pub fn in_unit_interval(q: &Rational) -> bool {
    q.is_positive() && *q <= Rational::one()
}

/// Formats `q` as `p/q`, or as a bare integer when the denominator is 1.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Serializes as the `p/q` string, for `#[serde(serialize_with)]`.
pub fn serialize<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(q))
}

pub fn is_zero(q: &Rational) -> bool {
    q.is_zero()
}
