//! Integer and rational foundations.
//!
//! Everything that can grow (lcm of moduli, weights, field coefficients) is a
//! [`BigInt`] or [`Rational`]. Moduli and field orders are `u64`: they index
//! coefficient vectors and stay desk-sized.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Greatest common divisor, non-negative; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b).abs()
}

/// Least common multiple of a nonempty list of positive integers.
pub fn lcm_all(values: &[u64]) -> Result<BigInt> {
    if values.is_empty() {
        return Err(Error::EmptyModulusList);
    }
    let mut acc = BigInt::one();
    for &v in values {
        if v == 0 {
            return Err(Error::NonPositiveModulus);
        }
        acc = acc.lcm(&BigInt::from(v));
    }
    Ok(acc)
}

/// Deterministic primality by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d <= n / d {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime strictly greater than `bound`.
pub fn least_prime_greater_than(bound: u64) -> u64 {
    let mut candidate = bound + 1;
    while !is_prime(candidate) {
        candidate += 1;
    }
    candidate
}

/// Distinct prime divisors of `n` in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= n / d {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All positive divisors of `n` in increasing order. `divisors(0)` is empty.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d <= n / d {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    prime_divisors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// `x mod m` in `[0, m)` for an arbitrary integer `x`.
pub fn residue(x: &BigInt, m: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(m));
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let ext = (a as i128).extended_gcd(&(m as i128));
    if ext.gcd != 1 {
        return None;
    }
    Some(ext.x.rem_euclid(m as i128) as u64)
}

/// Promote an integer to a rational.
pub fn rational(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `n/d` as a reduced rational. Panics on `d = 0`.
pub fn fraction(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Rational {
    Rational::new(n.into(), d.into())
}

/// True iff the rational is an integer, returning it.
pub fn as_integer(r: &Rational) -> Option<BigInt> {
    if r.denom().is_one() {
        Some(r.numer().clone())
    } else {
        None
    }
}

pub(crate) fn is_zero_rational(r: &Rational) -> bool {
    r.numer().is_zero()
}
