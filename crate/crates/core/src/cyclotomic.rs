//! Exact arithmetic in the cyclotomic field Q(ζ_m) = Q[x]/Φ_m(x).
//!
//! Elements are kept in the power basis 1, ζ, …, ζ^{φ(m)−1}. Since Φ_m is
//! irreducible the representation is unique, so equality and the zero test
//! are plain coefficient comparisons.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, is_zero_rational, residue, Rational};
use crate::error::{Error, Result};

/// Polynomial with integer coefficients, lowest degree first, trailing zeros
/// trimmed. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n − 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] += 1;
        Self::new(coeffs)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Quotient by a monic divisor, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact_monic(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        if !divisor.is_monic() {
            return None;
        }
        let d = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= d {
            return self.is_zero().then(IntPolynomial::default);
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = std::mem::take(&mut rem[i]);
            if c.is_zero() {
                continue;
            }
            for (j, f) in divisor.coeffs[..d].iter().enumerate() {
                if !f.is_zero() {
                    rem[i - d + j] -= &c * f;
                }
            }
            quot[i - d] = c;
        }
        rem.iter()
            .all(Zero::is_zero)
            .then(|| IntPolynomial::new(quot))
    }

    /// The value of this polynomial at ζ_m.
    pub fn evaluate_at_root(&self, order: u64) -> Result<CyclotomicNumber> {
        CyclotomicNumber::from_polynomial(
            order,
            self.coeffs.iter().cloned().map(Rational::from_integer).collect(),
        )
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_polynomial(f, self.coeffs.iter().map(|c| Rational::from_integer(c.clone())), "x")
    }
}

fn write_polynomial(
    f: &mut fmt::Formatter<'_>,
    coeffs: impl DoubleEndedIterator<Item = Rational> + ExactSizeIterator,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    let len = coeffs.len();
    for (i, c) in coeffs.rev().enumerate() {
        let power = len - 1 - i;
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        let unit = abs.is_one();
        if power == 0 || !unit {
            write!(f, "{abs}")?;
        }
        match power {
            0 => {}
            1 if unit => f.write_str(var)?,
            1 => write!(f, "*{var}")?,
            _ if unit => write!(f, "{var}^{power}")?,
            _ => write!(f, "*{var}^{power}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

fn memo() -> &'static RwLock<HashMap<u64, Arc<IntPolynomial>>> {
    static MEMO: OnceLock<RwLock<HashMap<u64, Arc<IntPolynomial>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// The m-th cyclotomic polynomial, `(x^m − 1) / ∏_{d | m, d < m} Φ_d`.
///
/// Results are memoized process-wide; concurrent callers always observe the
/// same polynomial for a given order.
pub fn cyclotomic_polynomial(m: u64) -> Result<Arc<IntPolynomial>> {
    if m == 0 {
        return Err(Error::ZeroOrder);
    }
    if let Some(hit) = memo().read().expect("memo poisoned").get(&m) {
        return Ok(Arc::clone(hit));
    }
    let mut poly = IntPolynomial::x_pow_minus_one(m as usize);
    for d in divisors(m).into_iter().filter(|&d| d < m) {
        let phi_d = cyclotomic_polynomial(d)?;
        poly = poly
            .div_exact_monic(&phi_d)
            .ok_or_else(|| Error::Invariant(format!("Φ_{d} does not divide x^{m} − 1")))?;
    }
    let poly = Arc::new(poly);
    let mut table = memo().write().expect("memo poisoned");
    Ok(Arc::clone(table.entry(m).or_insert(poly)))
}

/// An element of Q(ζ_m) in canonical power-basis form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    order: u64,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(order: u64) -> Result<Self> {
        let phi = cyclotomic_polynomial(order)?;
        Ok(CyclotomicNumber {
            order,
            coeffs: vec![Rational::zero(); field_degree(&phi)],
        })
    }

    pub fn one(order: u64) -> Result<Self> {
        Self::from_rational(order, Rational::one())
    }

    /// A rational scalar embedded in Q(ζ_m).
    pub fn from_rational(order: u64, value: Rational) -> Result<Self> {
        let mut out = Self::zero(order)?;
        out.coeffs[0] = value;
        Ok(out)
    }

    /// The value at ζ_m of the polynomial with the given coefficients (any
    /// length, lowest degree first).
    pub fn from_polynomial(order: u64, coeffs: Vec<Rational>) -> Result<Self> {
        let phi = cyclotomic_polynomial(order)?;
        Ok(CyclotomicNumber {
            order,
            coeffs: reduce(order, &phi, coeffs),
        })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// The value at ζ_m of `(Σ c_i x^i) / denominator`, reducing in integers
    /// first. `coeffs` may have any length up to m.
    pub(crate) fn from_scaled(order: u64, mut coeffs: Vec<BigInt>, denominator: &BigInt) -> Result<Self> {
        let phi = cyclotomic_polynomial(order)?;
        reduce_integers(&phi, &mut coeffs);
        Ok(CyclotomicNumber {
            order,
            coeffs: coeffs
                .into_iter()
                .map(|c| {
                    if c.is_zero() {
                        Rational::zero()
                    } else {
                        Rational::new(c, denominator.clone())
                    }
                })
                .collect(),
        })
    }

    /// Power-basis coefficients; length φ(m).
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Exact zero test.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(is_zero_rational)
    }

    /// The element as a rational, if it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(is_zero_rational) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CyclotomicNumber {
            order: self.order,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.coeffs.len();
        let mut product = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    product[i + j] += a * b;
                }
            }
        }
        Self::from_polynomial(self.order, product)
    }

    /// `self · ζ^shift`.
    pub fn times_root_power(&self, shift: u64) -> Self {
        let mut acc = CyclicAccumulator::new(self.order).expect("order already validated");
        acc.add_rotated(self, shift);
        acc.finish()
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Φ_m over Q[x].
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi = cyclotomic_polynomial(self.order)?;
        let modulus: Vec<Rational> = phi
            .coefficients()
            .iter()
            .cloned()
            .map(Rational::from_integer)
            .collect();
        let inverse = qpoly::inverse_mod(&self.coeffs, &modulus)
            .ok_or_else(|| Error::Invariant(format!("non-unit modulo Φ_{}", self.order)))?;
        Self::from_polynomial(self.order, inverse)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inverse()?)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_polynomial(f, self.coeffs.iter().cloned(), "ζ")
    }
}

fn field_degree(phi: &IntPolynomial) -> usize {
    phi.degree().expect("cyclotomic polynomials are nonzero")
}

/// Fold exponents modulo m (valid because Φ_m divides x^m − 1), then divide
/// by the monic Φ_m from the top.
/// Remainder of an integer polynomial modulo the monic `phi`, in place,
/// truncated to `deg phi` coefficients.
pub(crate) fn reduce_integers(phi: &IntPolynomial, coeffs: &mut Vec<BigInt>) {
    let d = field_degree(phi);
    let tail: Vec<(usize, &BigInt)> = phi.coefficients()[..d]
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.is_zero())
        .collect();
    for i in (d..coeffs.len()).rev() {
        let c = std::mem::take(&mut coeffs[i]);
        if c.is_zero() {
            continue;
        }
        for &(j, f) in &tail {
            coeffs[i - d + j] -= &c * f;
        }
    }
    coeffs.resize(d, BigInt::zero());
}

fn reduce(order: u64, phi: &IntPolynomial, mut coeffs: Vec<Rational>) -> Vec<Rational> {
    let m = order as usize;
    if coeffs.len() > m {
        let mut folded = vec![Rational::zero(); m];
        for (i, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                folded[i % m] += c;
            }
        }
        coeffs = folded;
    }
    let d = field_degree(phi);
    let tail: Vec<(usize, &BigInt)> = phi.coefficients()[..d]
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.is_zero())
        .collect();
    for i in (d..coeffs.len()).rev() {
        let c = std::mem::take(&mut coeffs[i]);
        if c.is_zero() {
            continue;
        }
        for &(j, f) in &tail {
            coeffs[i - d + j] -= &c * f;
        }
    }
    coeffs.resize(d, Rational::zero());
    coeffs
}

/// ζ_m^{j mod m}.
pub fn root_power(m: u64, j: impl Into<BigInt>) -> Result<CyclotomicNumber> {
    if m == 0 {
        return Err(Error::ZeroOrder);
    }
    let e = residue(&j.into(), m) as usize;
    let mut coeffs = vec![Rational::zero(); e + 1];
    coeffs[e] = Rational::one();
    CyclotomicNumber::from_polynomial(m, coeffs)
}

type InverseMemo = RwLock<HashMap<(u64, u64), Arc<CyclotomicNumber>>>;

fn inverse_memo() -> &'static InverseMemo {
    static MEMO: OnceLock<InverseMemo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `1 / (1 − ζ_m^n)`; fails when m divides n. Memoized on `(m, n mod m)`.
pub fn one_minus_root_inverse(m: u64, n: u64) -> Result<CyclotomicNumber> {
    if m == 0 {
        return Err(Error::ZeroOrder);
    }
    if n % m == 0 {
        return Err(Error::RootIsOne {
            order: m,
            exponent: n,
        });
    }
    let key = (m, n % m);
    if let Some(hit) = inverse_memo().read().expect("memo poisoned").get(&key) {
        return Ok((**hit).clone());
    }
    let inverse = CyclotomicNumber::one(m)?.sub(&root_power(m, n)?)?.inverse()?;
    inverse_memo()
        .write()
        .expect("memo poisoned")
        .insert(key, Arc::new(inverse.clone()));
    Ok(inverse)
}

/// Accumulates `Σ c_i ζ^{e_i}` in Q[x]/(x^m − 1) and reduces modulo Φ_m once
/// at the end.
#[derive(Clone, Debug)]
pub struct CyclicAccumulator {
    order: u64,
    phi: Arc<IntPolynomial>,
    slots: Vec<Rational>,
}

impl CyclicAccumulator {
    pub fn new(order: u64) -> Result<Self> {
        let phi = cyclotomic_polynomial(order)?;
        Ok(CyclicAccumulator {
            order,
            phi,
            slots: vec![Rational::zero(); order as usize],
        })
    }

    pub fn add_term(&mut self, coefficient: &Rational, exponent: u64) {
        self.slots[(exponent % self.order) as usize] += coefficient;
    }

    /// Adds `x · ζ^shift`. Panics on an order mismatch.
    pub fn add_rotated(&mut self, x: &CyclotomicNumber, shift: u64) {
        assert_eq!(x.order, self.order, "order mismatch in accumulator");
        let m = self.order as usize;
        let shift = (shift % self.order) as usize;
        for (i, c) in x.coeffs.iter().enumerate() {
            if !c.is_zero() {
                self.slots[(i + shift) % m] += c;
            }
        }
    }

    pub fn finish(self) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.order,
            coeffs: reduce(self.order, &self.phi, self.slots),
        }
    }
}

/// Dense univariate polynomials over Q, used for inversion only.
mod qpoly {
    use super::*;

    pub(super) fn trim(p: &mut Vec<Rational>) {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    fn sub_mul(a: &[Rational], q: &[Rational], b: &[Rational]) -> Vec<Rational> {
        // a − q·b
        let len = a.len().max(q.len() + b.len().max(1) - 1);
        let mut out = vec![Rational::zero(); len];
        out[..a.len()].clone_from_slice(a);
        for (i, qi) in q.iter().enumerate() {
            if qi.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    out[i + j] -= qi * bj;
                }
            }
        }
        trim(&mut out);
        out
    }

    fn div_rem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let d = den.len() - 1;
        let lead = &den[d];
        let mut rem = num.to_vec();
        if rem.len() <= d {
            return (Vec::new(), rem);
        }
        let mut quot = vec![Rational::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = std::mem::take(&mut rem[i]);
            if c.is_zero() {
                continue;
            }
            let c = c / lead;
            for (j, f) in den[..d].iter().enumerate() {
                if !f.is_zero() {
                    rem[i - d + j] -= &c * f;
                }
            }
            quot[i - d] = c;
        }
        rem.truncate(d);
        trim(&mut rem);
        trim(&mut quot);
        (quot, rem)
    }

    /// `s` with `s · a ≡ 1 (mod modulus)`, or `None` if `a` is not a unit.
    pub(super) fn inverse_mod(a: &[Rational], modulus: &[Rational]) -> Option<Vec<Rational>> {
        let mut a = a.to_vec();
        trim(&mut a);
        if a.is_empty() {
            return None;
        }
        let (_, a) = div_rem(&a, modulus);
        let (mut r0, mut r1) = (modulus.to_vec(), a);
        let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, mut r) = div_rem(&r0, &r1);
            let mut s = sub_mul(&s0, &q, &s1);
            // keep remainders monic; the cofactor follows the same scaling
            if let Some(lead) = r.last().cloned() {
                for c in r.iter_mut().chain(s.iter_mut()) {
                    *c /= &lead;
                }
            }
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is the gcd; a unit iff it is a nonzero constant
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].clone();
        Some(s0.into_iter().map(|x| x / &c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{fraction, rational, totient};
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        rational(n)
    }

    fn ints(x: &CyclotomicNumber) -> Vec<Rational> {
        x.coefficients().to_vec()
    }

    #[test]
    fn cyclotomic_polynomial_examples() {
        assert_eq!(*cyclotomic_polynomial(1).unwrap(), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(
            *cyclotomic_polynomial(5).unwrap(),
            IntPolynomial::from_i64(&[1, 1, 1, 1, 1])
        );
        // (x^6 − 1) / ((x − 1)(x + 1)(x^2 + x + 1))
        let divisor = IntPolynomial::from_i64(&[-1, 1])
            .mul(&IntPolynomial::from_i64(&[1, 1]))
            .mul(&IntPolynomial::from_i64(&[1, 1, 1]));
        let expected = IntPolynomial::x_pow_minus_one(6).div_exact_monic(&divisor).unwrap();
        assert_eq!(expected, IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(*cyclotomic_polynomial(6).unwrap(), expected);
        assert_eq!(cyclotomic_polynomial(0), Err(Error::ZeroOrder));
        assert_eq!(cyclotomic_polynomial(5).unwrap().to_string(), "x^4 + x^3 + x^2 + x + 1");
    }

    #[test]
    fn cyclotomic_degrees_are_totients() {
        for m in 1..=120 {
            let phi = cyclotomic_polynomial(m).unwrap();
            assert_eq!(phi.degree().unwrap() as u64, totient(m), "m = {m}");
            assert!(phi.is_monic());
        }
        // Φ_105 is the first with a coefficient outside {−1, 0, 1}
        assert!(cyclotomic_polynomial(105)
            .unwrap()
            .coefficients()
            .contains(&BigInt::from(-2)));
    }

    #[test]
    fn product_over_divisors_is_x_pow_minus_one() {
        for m in 1..=40u64 {
            let product = divisors(m)
                .into_iter()
                .map(|d| (*cyclotomic_polynomial(d).unwrap()).clone())
                .fold(IntPolynomial::from_i64(&[1]), |acc, p| acc.mul(&p));
            assert_eq!(product, IntPolynomial::x_pow_minus_one(m as usize));
        }
    }

    #[test]
    fn concurrent_memo_is_consistent() {
        let handles: Vec<_> = (0..8)
            .map(|_| std::thread::spawn(|| (150..180).map(|m| cyclotomic_polynomial(m).unwrap()).collect::<Vec<_>>()))
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for r in &results[1..] {
            assert_eq!(r, &results[0]);
        }
    }

    #[test]
    fn root_power_examples() {
        assert_eq!(ints(&root_power(5, 0).unwrap()), vec![q(1), q(0), q(0), q(0)]);
        assert_eq!(ints(&root_power(5, 4).unwrap()), vec![q(-1); 4]);
        // x^2 ≡ x − 1 mod x^2 − x + 1
        assert_eq!(ints(&root_power(6, 2).unwrap()), vec![q(-1), q(1)]);
        assert_eq!(root_power(5, -1).unwrap(), root_power(5, 4).unwrap());
        assert_eq!(root_power(0, 1), Err(Error::ZeroOrder));
        assert_eq!(ints(&root_power(1, 17).unwrap()), vec![q(1)]);
    }

    #[test]
    fn add_examples() {
        let z = root_power(5, 1).unwrap();
        assert!(z.add(&z.neg()).unwrap().is_zero());
        let cube_sum = (0..3)
            .map(|j| root_power(3, j).unwrap())
            .try_fold(CyclotomicNumber::zero(3).unwrap(), |acc, x| acc.add(&x))
            .unwrap();
        assert!(cube_sum.is_zero());
        assert_eq!(z.add(&z).unwrap(), z.scale(&q(2)));
        assert_eq!(
            z.add(&root_power(6, 1).unwrap()),
            Err(Error::OrderMismatch { left: 5, right: 6 })
        );
    }

    #[test]
    fn mul_examples() {
        let one5 = CyclotomicNumber::one(5).unwrap();
        assert_eq!(root_power(5, 1).unwrap().mul(&root_power(5, 4).unwrap()).unwrap(), one5);
        assert_eq!(
            root_power(6, 1).unwrap().mul(&root_power(6, 5).unwrap()).unwrap(),
            CyclotomicNumber::one(6).unwrap()
        );
        let norm = (1..5)
            .map(|k| one5.sub(&root_power(5, k).unwrap()).unwrap())
            .try_fold(one5.clone(), |acc, x| acc.mul(&x))
            .unwrap();
        assert_eq!(norm.as_rational(), Some(q(5)));
        assert!(one5.mul(&CyclotomicNumber::one(7).unwrap()).is_err());
    }

    #[test]
    fn inverse_examples() {
        let one5 = CyclotomicNumber::one(5).unwrap();
        assert_eq!(one5.inverse().unwrap(), one5);
        assert_eq!(root_power(5, 1).unwrap().inverse().unwrap(), root_power(5, 4).unwrap());
        let x = one5.sub(&root_power(5, 1).unwrap()).unwrap();
        assert_eq!(x.inverse().unwrap().mul(&x).unwrap(), one5);
        assert_eq!(CyclotomicNumber::zero(5).unwrap().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn one_minus_root_inverse_examples() {
        assert_eq!(one_minus_root_inverse(2, 1).unwrap().as_rational(), Some(fraction(1, 2)));
        // (1 − x)(2 + x) = 2 − x − x^2 ≡ 3 mod x^2 + x + 1
        assert_eq!(
            ints(&one_minus_root_inverse(3, 1).unwrap()),
            vec![fraction(2, 3), fraction(1, 3)]
        );
        assert_eq!(one_minus_root_inverse(4, 2).unwrap().as_rational(), Some(fraction(1, 2)));
        assert_eq!(
            one_minus_root_inverse(4, 8),
            Err(Error::RootIsOne { order: 4, exponent: 8 })
        );
    }

    /// For prime p, (1 − ζ) Σ_{j<p} j ζ^j = −p, so 1/(1 − ζ^n) = −(1/p) Σ j ζ^{nj}.
    #[test]
    fn one_minus_root_inverse_matches_closed_form_at_primes() {
        for p in [2u64, 3, 5, 7, 11, 13, 31, 127] {
            for n in [1u64, 2, 3, 5, 29] {
                if n % p == 0 {
                    continue;
                }
                let mut acc = CyclicAccumulator::new(p).unwrap();
                for j in 1..p {
                    acc.add_term(&fraction(-(j as i64), p as i64), n * j);
                }
                assert_eq!(one_minus_root_inverse(p, n).unwrap(), acc.finish(), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn is_zero_examples() {
        assert!(CyclotomicNumber::zero(5).unwrap().is_zero());
        let z = root_power(5, 1).unwrap();
        assert!(z.sub(&z).unwrap().is_zero());
        assert!(!CyclotomicNumber::one(5).unwrap().add(&z).unwrap().is_zero());
    }

    #[test]
    fn phi_vanishes_at_its_root() {
        for m in 1..=30 {
            let phi = cyclotomic_polynomial(m).unwrap();
            // Horner evaluation with field operations, independent of reduce()
            let z = root_power(m, 1).unwrap();
            let value = phi.coefficients().iter().rev().fold(CyclotomicNumber::zero(m).unwrap(), |acc, c| {
                acc.mul(&z)
                    .unwrap()
                    .add(&CyclotomicNumber::from_rational(m, Rational::from_integer(c.clone())).unwrap())
                    .unwrap()
            });
            assert!(value.is_zero(), "m = {m}");
            assert!(phi.evaluate_at_root(m).unwrap().is_zero());
        }
    }

    #[test]
    fn root_sums_vanish() {
        for m in 1..=30u64 {
            let mut acc = CyclicAccumulator::new(m).unwrap();
            for j in 0..m {
                acc.add_term(&q(1), j);
            }
            let sum = acc.finish();
            if m == 1 {
                assert_eq!(sum.as_rational(), Some(q(1)));
            } else {
                assert!(sum.is_zero(), "m = {m}");
            }
        }
    }

    #[test]
    fn times_root_power_matches_mul() {
        for m in [7u64, 12, 15, 30] {
            let x = CyclotomicNumber::from_polynomial(m, (0..m as i64).map(|i| fraction(i - 3, i + 1)).collect()).unwrap();
            for shift in 0..2 * m {
                assert_eq!(x.times_root_power(shift), x.mul(&root_power(m, shift).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(CyclotomicNumber::zero(5).unwrap().to_string(), "0");
        assert_eq!(one_minus_root_inverse(3, 1).unwrap().to_string(), "1/3*ζ + 2/3");
        assert_eq!(root_power(5, 4).unwrap().to_string(), "-ζ^3 - ζ^2 - ζ - 1");
    }

    fn element(order: u64) -> impl Strategy<Value = CyclotomicNumber> {
        let d = totient(order) as usize;
        proptest::collection::vec((-5i64..=5, 1i64..=4), d).prop_map(move |cs| {
            CyclotomicNumber::from_polynomial(order, cs.into_iter().map(|(n, d)| fraction(n, d)).collect()).unwrap()
        })
    }

    fn order_and_triple() -> impl Strategy<Value = (CyclotomicNumber, CyclotomicNumber, CyclotomicNumber)> {
        (1u64..=24).prop_flat_map(|m| (element(m), element(m), element(m)))
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in order_and_triple()) {
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn inverse_round_trip((a, _, _) in order_and_triple()) {
            prop_assume!(!a.is_zero());
            let one = CyclotomicNumber::one(a.order()).unwrap();
            prop_assert_eq!(a.mul(&a.inverse().unwrap()).unwrap(), one);
        }

        #[test]
        fn zero_test_is_coefficient_equality((a, b, _) in order_and_triple()) {
            prop_assert_eq!(a.sub(&b).unwrap().is_zero(), a.coefficients() == b.coefficients());
            prop_assert!(a.sub(&a).unwrap().is_zero());
        }
    }
}
