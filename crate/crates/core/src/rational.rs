//! Exact rational scalars.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-3/2"` or `"+7"`. The result is always in lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = |m: &str| Error::Parse { position: 0, message: alloc::format!("{m}: {s:?}") };
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.trim_start_matches('+').parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Lowest terms, `-3/2` form, integers without a denominator.
pub fn format_rational(q: &Rational) -> String {
    alloc::format!("{q}")
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// `x^e` for a possibly negative exponent; `x` must be nonzero when `e < 0`.
pub fn pow(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// Exact rational `r`-th root of `x` (r ≥ 1), if one exists.
pub fn rational_root(x: &Rational, r: u32) -> Option<Rational> {
    if r == 0 {
        return None;
    }
    if x.is_zero() {
        return Some(Rational::zero());
    }
    if x.is_negative() && r.is_multiple_of(2) {
        return None;
    }
    let num = integer_root(&x.numer().abs(), r)?;
    let den = integer_root(x.denom(), r)?;
    let root = Rational::new(num, den);
    Some(if x.is_negative() { -root } else { root })
}

fn integer_root(n: &BigInt, r: u32) -> Option<BigInt> {
    let root = n.nth_root(r);
    (num_traits::pow(root.clone(), r as usize) == *n).then_some(root)
}

/// A pair `(u, v)` with `x·u + y·v = 1`.
///
/// When `x` and `y` are coprime integers and `y ≠ 0` the integer solution with
/// the least nonnegative `u` is returned; otherwise a solution with one zero
/// entry.
pub fn unit_combination(x: &Rational, y: &Rational) -> Option<(Rational, Rational)> {
    if is_integer(x) && is_integer(y) && !y.is_zero() {
        let (a, b) = (x.numer(), y.numer());
        let g = a.extended_gcd(b);
        if g.gcd.is_one() {
            let modulus = b.abs();
            let u = g.x.mod_floor(&modulus);
            let v = (BigInt::one() - a * &u) / b;
            return Some((Rational::from_integer(u), Rational::from_integer(v)));
        }
    }
    if !x.is_zero() {
        Some((x.recip(), Rational::zero()))
    } else if !y.is_zero() {
        Some((Rational::zero(), y.recip()))
    } else {
        None
    }
}

pub fn to_i64(q: &Rational) -> Option<i64> {
    if is_integer(q) {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn sum<'a>(it: impl IntoIterator<Item = &'a Rational>) -> Rational {
    it.into_iter().fold(Rational::zero(), |acc, x| acc + x)
}

pub fn from_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}
