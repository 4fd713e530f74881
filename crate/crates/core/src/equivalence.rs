//! Covering equivalence decided by a single vanishing test in Q(ζ_p).
//!
//! For a weighted system `𝒜 = {⟨λ_s, a_s, n_s⟩}` and any prime
//! `p > |S(n_1, …, n_k)|`,
//!
//! ```text
//!     w_𝒜 ≡ 0   ⇔   Σ_s λ_s ζ_p^{a_s} / (1 − ζ_p^{n_s}) = 0.
//! ```
//!
//! Two systems are compared through their difference `A ⊕ (−B)`. The
//! coefficient profile and the spectral decomposition below are independent
//! views of the same covering function, used to cross-check the criterion.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{fraction, is_prime, least_prime_greater_than, mod_inverse, Rational};
use crate::covsys::{covering_table, period, s_cardinality, s_set, System};
use crate::cyclotomic::{
    cyclotomic_polynomial, one_minus_root_inverse, reduce_integers, CyclicAccumulator, CyclotomicNumber,
};
use crate::error::{Error, Result};

/// The prime, `|S|` and combined sum behind an equivalence verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub prime: u64,
    pub s_cardinality: u64,
    pub combined_sum: CyclotomicNumber,
    pub verdict: bool,
}

impl EquivalenceWitness {
    /// Degree of Q(ζ_p) over Q.
    pub fn field_degree(&self) -> u64 {
        self.prime - 1
    }
}

/// `(p, |S|)` with `p` the least prime exceeding `|S(moduli)|`.
pub fn choose_prime(moduli: &[u64]) -> Result<(u64, u64)> {
    let s = s_cardinality(moduli)?;
    Ok((least_prime_greater_than(s), s))
}

/// `Σ_s λ_s ζ_p^{a_s} (1 − ζ_p^{n_s})^{-1}` in Q(ζ_p).
///
/// Classes are grouped by `n_s mod p`, so each inverse is computed once and
/// each group costs one field multiplication.
pub fn theorem_sum(system: &System, p: u64) -> Result<CyclotomicNumber> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let order = p as usize;
    // integer numerators Σ λ_s x^{a_s mod p}, grouped by n mod p
    let mut numerators: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
    for class in system.classes() {
        let n = class.modulus();
        if n % p == 0 {
            return Err(Error::PrimeDividesModulus { prime: p, modulus: n });
        }
        let slots = numerators
            .entry(n % p)
            .or_insert_with(|| vec![BigInt::zero(); order]);
        slots[(class.residue() % p) as usize] += class.weight();
    }
    numerators.retain(|_, slots| slots.iter().any(|c| !c.is_zero()));
    let mut inverses = Vec::with_capacity(numerators.len());
    let mut scale = BigInt::one();
    for &n in numerators.keys() {
        let inverse = one_minus_root_inverse(p, n)?;
        let denominator = inverse
            .coefficients()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        scale = scale.lcm(&denominator);
        inverses.push(inverse);
    }
    // scale · Σ numerator · 1/(1 − x^n), accumulated modulo x^p − 1
    let mut total = vec![BigInt::zero(); order];
    for (slots, inverse) in numerators.values().zip(&inverses) {
        let scaled: Vec<(usize, BigInt)> = inverse
            .coefficients()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j, c.numer() * (&scale / c.denom())))
            .collect();
        for (i, a) in slots.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in &scaled {
                total[(i + j) % order] += a * b;
            }
        }
    }
    CyclotomicNumber::from_scaled(p, total, &scale)
}

fn witness_for(difference: &System, prime: Option<u64>) -> Result<EquivalenceWitness> {
    let moduli = difference.moduli();
    let (prime, s_cardinality) = if moduli.is_empty() {
        (prime.unwrap_or(2), 0)
    } else {
        let s = s_cardinality(&moduli)?;
        let p = match prime {
            None => least_prime_greater_than(s),
            Some(p) => {
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                if p <= s {
                    return Err(Error::PrimeTooSmall {
                        prime: p,
                        s_cardinality: s,
                    });
                }
                p
            }
        };
        (p, s)
    };
    let combined_sum = theorem_sum(difference, prime)?;
    let verdict = combined_sum.is_zero();
    Ok(EquivalenceWitness {
        prime,
        s_cardinality,
        combined_sum,
        verdict,
    })
}

/// Whether `w_A = w_B`, decided in Q(ζ_p) for the least prime `p > |S|`
/// over all moduli of both systems.
pub fn are_equivalent(a: &System, b: &System) -> Result<(bool, EquivalenceWitness)> {
    let w = witness_for(&a.difference(b), None)?;
    Ok((w.verdict, w))
}

/// As [`are_equivalent`] with a caller-chosen prime, which must exceed `|S|`.
pub fn are_equivalent_with_prime(a: &System, b: &System, p: u64) -> Result<(bool, EquivalenceWitness)> {
    let w = witness_for(&a.difference(b), Some(p))?;
    Ok((w.verdict, w))
}

/// Whether the difference system `𝒜` satisfies `w_𝒜 ≡ 0`.
pub fn vanishes(system: &System) -> Result<(bool, EquivalenceWitness)> {
    are_equivalent(system, &System::empty())
}

fn exact_cover(system: &System, m: u64, prime: Option<u64>) -> Result<(bool, EquivalenceWitness)> {
    if !system.is_unweighted() {
        return Err(Error::WeightedSystem);
    }
    if m == 0 {
        return Err(Error::OutOfRange {
            name: "m",
            value: "0".into(),
            expected: "a positive integer",
        });
    }
    let w = witness_for(&system.difference(&System::whole_line(m)), prime)?;
    Ok((w.verdict, w))
}

/// Whether an unweighted system covers every integer exactly `m` times.
pub fn is_exact_m_cover(system: &System, m: u64) -> Result<(bool, EquivalenceWitness)> {
    exact_cover(system, m, None)
}

pub fn is_exact_m_cover_with_prime(system: &System, m: u64, p: u64) -> Result<(bool, EquivalenceWitness)> {
    exact_cover(system, m, Some(p))
}

fn require_distinct_moduli(system: &System) -> Result<()> {
    if !system.is_unweighted() {
        return Err(Error::WeightedSystem);
    }
    let mut seen = std::collections::BTreeSet::new();
    for n in system.moduli() {
        if !seen.insert(n) {
            return Err(Error::RepeatedModulus(n));
        }
    }
    Ok(())
}

/// For unweighted systems with pairwise distinct moduli, covering
/// equivalence coincides with identity. Both are computed and must agree.
pub fn are_identical_distinct_moduli(a: &System, b: &System) -> Result<bool> {
    require_distinct_moduli(a)?;
    require_distinct_moduli(b)?;
    let (verdict, _) = are_equivalent(a, b)?;
    let identical = a.canonical() == b.canonical();
    if verdict != identical {
        return Err(Error::Invariant(format!(
            "equivalence verdict {verdict} disagrees with multiset identity {identical}"
        )));
    }
    Ok(verdict)
}

/// Residue-class sums `c_l = Σ_{0 ≤ x < N, x ≡ l (mod p)} w(x)` for the least
/// common multiple `N` of the moduli with `N ≡ 1 (mod p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientProfile {
    pub prime: u64,
    pub multiple: BigInt,
    pub coefficients: Vec<BigInt>,
}

impl CoefficientProfile {
    /// `c_0 = c_1 = ⋯ = c_{p−1}`.
    pub fn is_constant(&self) -> bool {
        self.coefficients.windows(2).all(|w| w[0] == w[1])
    }

    /// `Σ_l c_l ζ_p^l`.
    pub fn as_field_element(&self) -> Result<CyclotomicNumber> {
        CyclotomicNumber::from_polynomial(
            self.prime,
            self.coefficients.iter().cloned().map(Rational::from_integer).collect(),
        )
    }
}

/// Computes the profile from one period of `w`.
///
/// With `N = tL`, `L` the period, each `x < N` is `qL + r`. Grouping the table
/// by `r mod p` leaves `p · t` updates instead of `N`.
pub fn coefficient_profile(system: &System, p: u64, max_period: u64) -> Result<CoefficientProfile> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let full_period = period(system);
    if !full_period.gcd(&BigInt::from(p)).is_one() {
        return Err(Error::NotCoprime {
            prime: p,
            period: full_period,
        });
    }
    let table = covering_table(system, max_period)?;
    let l = table.period();
    let t = mod_inverse(l % p, p).expect("coprime");
    let mut grouped = vec![BigInt::zero(); p as usize];
    for (r, w) in table.values().iter().enumerate() {
        grouped[r % p as usize] += w;
    }
    let mut coefficients = vec![BigInt::zero(); p as usize];
    let step = l % p;
    for (rho, w) in grouped.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let mut idx = rho as u64;
        for _ in 0..t {
            coefficients[idx as usize] += w;
            idx = (idx + step) % p;
        }
    }
    Ok(CoefficientProfile {
        prime: p,
        multiple: BigInt::from(t) * BigInt::from(l),
        coefficients,
    })
}

/// Finite-Fourier coefficients `g(α)` of `w`, indexed by `α ∈ S`, in the
/// field Q(ζ_L) with `L` the period:
///
/// ```text
///     g(α) = Σ_{s : α n_s ∈ Z} (λ_s / n_s) e^{2πi α a_s},
///     w(x) = Σ_{α ∈ S} e^{−2πi α x} g(α).
/// ```
#[derive(Clone, Debug)]
pub struct SpectralCoefficients {
    order: u64,
    coefficients: BTreeMap<Rational, CyclotomicNumber>,
    scaled: ScaledSpectrum,
}

/// Integer form of the coefficients over a common denominator, so that
/// reconstruction runs without rational arithmetic.
#[derive(Clone, Debug)]
struct ScaledSpectrum {
    denominator: BigInt,
    /// `(αL mod L, nonzero (index, numerator) pairs)` per key.
    terms: Vec<(u64, Vec<(usize, BigInt)>)>,
}

impl SpectralCoefficients {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coefficients(&self) -> &BTreeMap<Rational, CyclotomicNumber> {
        &self.coefficients
    }

    pub fn get(&self, alpha: &Rational) -> Option<&CyclotomicNumber> {
        self.coefficients.get(alpha)
    }
}

/// `α · L` as an exponent of ζ_L.
fn alpha_exponent(alpha: &Rational, order: u64) -> u64 {
    let scaled = alpha * Rational::from_integer(BigInt::from(order));
    scaled.to_integer().to_u64().expect("α ∈ [0, 1) with denominator dividing L")
}

pub fn spectral_coefficients(system: &System, max_order: u64) -> Result<SpectralCoefficients> {
    let full_period = period(system);
    let order = match full_period.to_u64() {
        Some(l) if l <= max_order => l,
        _ => {
            return Err(Error::FieldOrderTooLarge {
                order: full_period,
                max: max_order,
            })
        }
    };
    let mut coefficients = BTreeMap::new();
    if !system.is_empty() {
        let s = s_set(&system.moduli())?;
        for alpha in s.fractions() {
            let d = alpha.denom().to_u64().expect("small denominator");
            let unit = alpha_exponent(alpha, order);
            let mut acc = CyclicAccumulator::new(order)?;
            for class in system.classes().iter().filter(|c| c.modulus() % d == 0) {
                let coeff = fraction(class.weight().clone(), class.modulus());
                acc.add_term(&coeff, (unit * class.residue()) % order);
            }
            coefficients.insert(alpha.clone(), acc.finish());
        }
    }
    let scaled = scale_spectrum(order, &coefficients);
    Ok(SpectralCoefficients {
        order,
        coefficients,
        scaled,
    })
}

fn scale_spectrum(order: u64, coefficients: &BTreeMap<Rational, CyclotomicNumber>) -> ScaledSpectrum {
    let denominator = coefficients
        .values()
        .flat_map(|g| g.coefficients())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let terms = coefficients
        .iter()
        .map(|(alpha, g)| {
            let nonzero = g
                .coefficients()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.numer() * (&denominator / c.denom())))
                .collect();
            (alpha_exponent(alpha, order), nonzero)
        })
        .collect();
    ScaledSpectrum { denominator, terms }
}

/// `Σ_α ζ_L^{−αLx} g(α)`, which must be a rational integer: `w(x)`.
pub fn spectral_reconstruct(coeffs: &SpectralCoefficients, x: &BigInt) -> Result<BigInt> {
    let order = coeffs.order;
    let l = order as usize;
    let phi = cyclotomic_polynomial(order)?;
    let degree = phi.degree().expect("nonzero");
    let xr = crate::arith::residue(x, order);
    let mut slots = vec![BigInt::zero(); l];
    for (unit, terms) in &coeffs.scaled.terms {
        let shift = ((order - (unit * xr) % order) % order) as usize;
        for (i, c) in terms {
            slots[(i + shift) % l] += c;
        }
    }
    reduce_integers(&phi, &mut slots);
    if slots[1..degree.max(1)].iter().any(|c| !c.is_zero()) {
        return Err(Error::Invariant(format!("spectral sum at x = {x} is not rational")));
    }
    let (value, rem) = slots[0].div_rem(&coeffs.scaled.denominator);
    if !rem.is_zero() {
        return Err(Error::Invariant(format!("spectral sum at x = {x} is not an integer")));
    }
    Ok(value)
}

/// Reconstructs `w` on `[0, L)`, in parallel.
pub fn spectral_reconstruct_period(coeffs: &SpectralCoefficients) -> Result<Vec<BigInt>> {
    (0..coeffs.order)
        .into_par_iter()
        .map(|x| spectral_reconstruct(coeffs, &BigInt::from(x)))
        .collect()
}

/// Checks that the spectral route reproduces the covering table within the
/// brute-force bound.
pub fn spectral_matches_table(system: &System, max_order: u64) -> Result<bool> {
    let coeffs = spectral_coefficients(system, max_order)?;
    let table = covering_table(system, max_order)?;
    Ok(spectral_reconstruct_period(&coeffs)?.as_slice() == table.values())
}

/// Verdicts at the least `count` qualifying primes, keyed by prime.
pub fn verdicts_at_primes(system: &System, count: usize) -> Result<Vec<(u64, bool)>> {
    let moduli = system.moduli();
    let s = if moduli.is_empty() { 0 } else { s_cardinality(&moduli)? };
    let mut out = Vec::with_capacity(count);
    let mut p = s;
    while out.len() < count {
        p = least_prime_greater_than(p);
        out.push((p, theorem_sum(system, p)?.is_zero()));
    }
    Ok(out)
}
