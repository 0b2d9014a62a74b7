//! Exact rational scalars.
//!
//! `Rat` is a reduced fraction with arbitrary-precision numerator and
//! positive denominator; `num_rational` maintains that canonical form on
//! every construction, so structural equality is arithmetic equality.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

pub type Rat = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational n/d. Panics if d = 0.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

fn exact_sqrt_uint(x: &BigUint) -> Option<BigUint> {
    let r = x.sqrt();
    if &r * &r == *x {
        Some(r)
    } else {
        None
    }
}

/// The non-negative rational square root of `x`, when one exists.
///
/// A reduced fraction p/q has a rational square root iff p ≥ 0 and both p
/// and q are perfect squares.
pub fn exact_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Rat::zero());
    }
    let num = exact_sqrt_uint(x.numer().magnitude())?;
    let den = exact_sqrt_uint(x.denom().magnitude())?;
    Some(Rat::new(BigInt::from(num), BigInt::from(den)))
}
