//! Arbitrary-precision rational scalars and the bit-size bookkeeping built on them.
//!
//! Every quantity in this crate is an exact `Rational`; floating point never
//! appears. Euclidean lengths are handled through squared values and integer
//! ceiling square roots so that all comparisons stay decidable.

use alloc::string::String;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

/// `n / d` in canonical form. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

/// Exact `2^k` as an integer.
pub fn pow2(k: u64) -> Int {
    Int::one() << usize::try_from(k).expect("exponent fits in usize")
}

/// Bit size of an integer: `1 + ceil(log2(|z| + 1))`, so `0 -> 1`, `+-1 -> 2`.
pub fn encoding_size_int(z: &Int) -> u64 {
    1 + z.magnitude().bits()
}

/// Bit size of a canonical rational. Integer values are measured as integers;
/// a proper fraction contributes the sizes of numerator and denominator.
pub fn encoding_size_rat(q: &Rational) -> u64 {
    if q.denom().is_one() {
        encoding_size_int(q.numer())
    } else {
        encoding_size_int(q.numer()) + encoding_size_int(q.denom())
    }
}

/// Smallest non-negative integer `s` with `s^2 >= n`. Panics for negative `n`.
pub fn int_ceil_sqrt(n: &Int) -> Int {
    assert!(!n.is_negative(), "ceiling square root of a negative integer");
    let floor = n.sqrt();
    if &(&floor * &floor) == n {
        floor
    } else {
        floor + 1
    }
}

/// Smallest non-negative integer `s` with `s^2 >= q`, for rational `q >= 0`.
///
/// Since `s^2` is an integer, the answer coincides with the ceiling square
/// root of `ceil(q)`.
pub fn rat_ceil_sqrt(q: &Rational) -> Int {
    assert!(!q.is_negative(), "ceiling square root of a negative rational");
    int_ceil_sqrt(&q.ceil().to_integer())
}

/// Parses an integer literal or `p/q` into a canonical rational.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let mk_err = |_| alloc::format!("invalid rational literal: {s:?}");
    match s.split_once('/') {
        None => {
            let n = Int::from_str(s).map_err(mk_err)?;
            Ok(Rational::from_integer(n))
        }
        Some((p, q)) => {
            let p = Int::from_str(p.trim()).map_err(mk_err)?;
            let q = Int::from_str(q.trim()).map_err(mk_err)?;
            if q.is_zero() {
                return Err(alloc::format!("zero denominator in {s:?}"));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Canonical string form: plain integer when the denominator is 1, else `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        alloc::format!("{}/{}", q.numer(), q.denom())
    }
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn denominator_lcm(values: &[Rational]) -> Int {
    let mut l = Int::one();
    for v in values {
        l = num_integer::lcm(l, v.denom().clone());
    }
    l
}

/// Sum of `|v_i|` over a slice.
pub fn norm1(values: &[Rational]) -> Rational {
    values.iter().map(Signed::abs).sum()
}

/// Sum of `v_i^2` over a slice.
pub fn norm2_sq(values: &[Rational]) -> Rational {
    values.iter().map(|v| v * v).sum()
}

/// Exact inner product of two equal-length slices.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot product of mismatched lengths");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `(sign(v))` as -1, 0, 1 for exact sign comparisons.
pub fn sign_of(v: &Rational) -> i8 {
    match v.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn to_rationals(ints: &[i64]) -> Vec<Rational> {
    ints.iter().map(|&n| rat(n)).collect()
}
