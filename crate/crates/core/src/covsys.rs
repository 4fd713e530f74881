//! Weighted residue-class systems and their covering functions.
//!
//! A [`System`] is a multiset of weighted classes `λ · a (n)`. Its covering
//! function `w(x) = Σ_{x ≡ a_s (mod n_s)} λ_s` is periodic with period equal
//! to the lcm of the moduli. Tabulating `w` over one period is the
//! brute-force oracle every faster test is checked against.
//!
//! # File format
//!
//! ```text
//! # comment
//! 0 (2)          weight 1, residue 0, modulus 2
//! -3 * 1 (4)     weight −3
//! 7(12)
//! ```
//!
//! Residues may be any integer and are stored reduced into `[0, n)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{divisors, fraction, lcm_all, residue, totient, Rational};
use crate::error::{Error, Result};

/// `λ · a (n)` with `0 ≤ a < n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedClass {
    modulus: u64,
    residue: u64,
    weight: BigInt,
}

impl WeightedClass {
    /// Builds a class, reducing `residue` modulo `modulus`.
    pub fn new(weight: impl Into<BigInt>, residue: impl Into<BigInt>, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::NonPositiveModulus);
        }
        Ok(WeightedClass {
            weight: weight.into(),
            residue: crate::arith::residue(&residue.into(), modulus),
            modulus,
        })
    }

    /// Weight-one class.
    pub fn unit(residue: impl Into<BigInt>, modulus: u64) -> Result<Self> {
        Self::new(1, residue, modulus)
    }

    pub fn weight(&self) -> &BigInt {
        &self.weight
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn contains(&self, x: &BigInt) -> bool {
        residue(x, self.modulus) == self.residue
    }

    pub fn with_weight(&self, weight: BigInt) -> Self {
        WeightedClass {
            weight,
            ..self.clone()
        }
    }
}

impl fmt::Display for WeightedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.weight.is_one() {
            write!(f, "{} * ", self.weight)?;
        }
        write!(f, "{} ({})", self.residue, self.modulus)
    }
}

/// A finite multiset of weighted residue classes. The empty system has
/// `w ≡ 0` and period 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct System {
    classes: Vec<WeightedClass>,
}

impl System {
    pub fn new(classes: Vec<WeightedClass>) -> Self {
        System { classes }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Unweighted system from `(residue, modulus)` pairs.
    pub fn unweighted(pairs: &[(i64, u64)]) -> Result<Self> {
        pairs
            .iter()
            .map(|&(a, n)| WeightedClass::unit(a, n))
            .collect::<Result<Vec<_>>>()
            .map(System::new)
    }

    /// Weighted system from `(weight, residue, modulus)` triples.
    pub fn weighted(triples: &[(i64, i64, u64)]) -> Result<Self> {
        triples
            .iter()
            .map(|&(w, a, n)| WeightedClass::new(w, a, n))
            .collect::<Result<Vec<_>>>()
            .map(System::new)
    }

    /// `m` copies of the class `0 (1)`, the canonical exact m-cover.
    pub fn whole_line(m: u64) -> Self {
        System::new(vec![WeightedClass::unit(0, 1).expect("modulus 1"); m as usize])
    }

    pub fn classes(&self) -> &[WeightedClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn push(&mut self, class: WeightedClass) {
        self.classes.push(class);
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.modulus).collect()
    }

    pub fn modulus_sum(&self) -> u64 {
        self.classes.iter().map(|c| c.modulus).sum()
    }

    /// True iff every weight is 1.
    pub fn is_unweighted(&self) -> bool {
        self.classes.iter().all(|c| c.weight.is_one())
    }

    pub fn negated(&self) -> Self {
        self.scaled(&BigInt::from(-1))
    }

    pub fn scaled(&self, factor: &BigInt) -> Self {
        System::new(
            self.classes
                .iter()
                .map(|c| c.with_weight(&c.weight * factor))
                .collect(),
        )
    }

    /// Multiset union: `w_{A ⊕ B} = w_A + w_B`.
    pub fn union(&self, other: &System) -> Self {
        let mut classes = self.classes.clone();
        classes.extend(other.classes.iter().cloned());
        System::new(classes)
    }

    /// `A ⊕ (−B)`, whose covering function is `w_A − w_B`.
    pub fn difference(&self, other: &System) -> Self {
        self.union(&other.negated())
    }

    /// Classes sorted by (modulus, residue, weight), for multiset comparison.
    pub fn canonical(&self) -> Self {
        let mut classes = self.classes.clone();
        classes.sort();
        System::new(classes)
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.classes {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for System {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_system(s)
    }
}

/// Parses the line-oriented system format.
pub fn parse_system(text: &str) -> Result<System> {
    let mut classes = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        classes.push(parse_line(line).map_err(|message| Error::Parse {
            line: idx + 1,
            message,
        })?);
    }
    Ok(System::new(classes))
}

fn parse_int(token: &str, what: &str) -> std::result::Result<BigInt, String> {
    let token = token.trim();
    if token.is_empty() {
        return Err(format!("missing {what}"));
    }
    BigInt::from_str(token).map_err(|_| format!("invalid {what} {token:?}"))
}

fn parse_line(line: &str) -> std::result::Result<WeightedClass, String> {
    let (weight, rest) = match line.split_once('*') {
        Some((w, rest)) => (parse_int(w, "weight")?, rest),
        None => (BigInt::one(), line),
    };
    let (residue, rest) = rest
        .split_once('(')
        .ok_or_else(|| "expected \"<residue> (<modulus>)\"".to_string())?;
    let (modulus, trailing) = rest
        .split_once(')')
        .ok_or_else(|| "missing ')'".to_string())?;
    if !trailing.trim().is_empty() {
        return Err(format!("unexpected trailing text {:?}", trailing.trim()));
    }
    let residue = parse_int(residue, "residue")?;
    let modulus = parse_int(modulus, "modulus")?;
    if !modulus.is_positive() {
        return Err("modulus must be positive".into());
    }
    let modulus = modulus.to_u64().ok_or_else(|| "modulus too large".to_string())?;
    WeightedClass::new(weight, residue, modulus).map_err(|e| e.to_string())
}

/// `w_A(x)`.
pub fn covering_value(system: &System, x: &BigInt) -> BigInt {
    system
        .classes
        .iter()
        .filter(|c| c.contains(x))
        .map(|c| &c.weight)
        .sum()
}

/// lcm of the moduli; 1 for the empty system.
pub fn period(system: &System) -> BigInt {
    if system.is_empty() {
        return BigInt::one();
    }
    lcm_all(&system.moduli()).expect("moduli are positive")
}

/// The covering function tabulated over one period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringTable {
    period: u64,
    values: Vec<BigInt>,
}

impl CoveringTable {
    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// `w(x)` for any integer `x`, by periodicity.
    pub fn value_at(&self, x: &BigInt) -> &BigInt {
        &self.values[residue(x, self.period) as usize]
    }

    pub fn is_constant(&self, value: &BigInt) -> bool {
        self.values.iter().all(|v| v == value)
    }
}

impl fmt::Display for CoveringTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L={}:", self.period)?;
        for v in &self.values {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

/// Period of `system` checked against the brute-force bound.
pub(crate) fn bounded_period(system: &System, max_period: u64) -> Result<u64> {
    let period = period(system);
    match period.to_u64() {
        Some(p) if p <= max_period => Ok(p),
        _ => Err(Error::PeriodTooLarge {
            period,
            max: max_period,
        }),
    }
}

const CHUNK: usize = 1 << 16;

/// Values of `w` on `[0, period)`. Uses machine integers when `Σ|λ_s|` fits,
/// which bounds every partial sum; otherwise falls back to big integers.
enum RawTable {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

fn first_hit(class: &WeightedClass, start: u64) -> u64 {
    let n = class.modulus;
    let a = class.residue;
    start + (a + n - start % n) % n
}

fn tabulate(system: &System, period: u64) -> RawTable {
    let len = period as usize;
    let total: Option<i64> = system
        .classes
        .iter()
        .try_fold(0i64, |acc, c| acc.checked_add(c.weight.abs().to_i64()?));
    if total.is_some() {
        let weights: Vec<i64> = system.classes.iter().map(|c| c.weight.to_i64().unwrap()).collect();
        let mut values = vec![0i64; len];
        values.par_chunks_mut(CHUNK).enumerate().for_each(|(ci, chunk)| {
            let start = (ci * CHUNK) as u64;
            let end = start + chunk.len() as u64;
            for (class, &w) in system.classes.iter().zip(&weights) {
                let mut x = first_hit(class, start);
                while x < end {
                    chunk[(x - start) as usize] += w;
                    x += class.modulus;
                }
            }
        });
        RawTable::Small(values)
    } else {
        let mut values = vec![BigInt::zero(); len];
        for class in &system.classes {
            for x in (class.residue as usize..len).step_by(class.modulus as usize) {
                values[x] += &class.weight;
            }
        }
        RawTable::Big(values)
    }
}

/// Tabulates `w` over `[0, period)`; refuses periods above `max_period`.
pub fn covering_table(system: &System, max_period: u64) -> Result<CoveringTable> {
    let period = bounded_period(system, max_period)?;
    let values = match tabulate(system, period) {
        RawTable::Small(v) => v.into_iter().map(BigInt::from).collect(),
        RawTable::Big(v) => v,
    };
    Ok(CoveringTable { period, values })
}

fn table_is_constant(system: &System, max_period: u64, target: &BigInt) -> Result<bool> {
    let period = bounded_period(system, max_period)?;
    Ok(match tabulate(system, period) {
        RawTable::Small(v) => match target.to_i64() {
            Some(t) => v.par_iter().all(|&x| x == t),
            None => false,
        },
        RawTable::Big(v) => v.iter().all(|x| x == target),
    })
}

/// The set `S(n_1, …, n_k)` of fractions `r / n_s` in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSet {
    fractions: BTreeSet<Rational>,
}

impl SSet {
    /// Sorted ascending.
    pub fn fractions(&self) -> impl Iterator<Item = &Rational> {
        self.fractions.iter()
    }

    pub fn cardinality(&self) -> u64 {
        self.fractions.len() as u64
    }

    pub fn contains(&self, alpha: &Rational) -> bool {
        self.fractions.contains(alpha)
    }
}

/// Enumerates and deduplicates all `r / n_s`.
pub fn s_set(moduli: &[u64]) -> Result<SSet> {
    if moduli.is_empty() {
        return Err(Error::EmptyModulusList);
    }
    let mut fractions = BTreeSet::new();
    let mut seen = BTreeSet::new();
    for &n in moduli {
        if n == 0 {
            return Err(Error::NonPositiveModulus);
        }
        if !seen.insert(n) {
            continue;
        }
        for r in 0..n {
            fractions.insert(fraction(r, n));
        }
    }
    Ok(SSet { fractions })
}

/// `|S(n_1, …, n_k)|` without enumerating: a reduced fraction with
/// denominator `d` occurs iff `d` divides some `n_s`, so the count is
/// `Σ φ(d)` over the union of the divisor sets.
pub fn s_cardinality(moduli: &[u64]) -> Result<u64> {
    if moduli.is_empty() {
        return Err(Error::EmptyModulusList);
    }
    if moduli.contains(&0) {
        return Err(Error::NonPositiveModulus);
    }
    let denominators: BTreeSet<u64> = moduli.iter().flat_map(|&n| divisors(n)).collect();
    Ok(denominators.into_iter().map(totient).sum())
}

/// `w_A = w_B`, checked on one common period.
pub fn equivalent_bruteforce(a: &System, b: &System, max_period: u64) -> Result<bool> {
    table_is_constant(&a.difference(b), max_period, &BigInt::zero())
}

/// `w_A ≡ m` for an unweighted system.
pub fn exact_m_cover_bruteforce(system: &System, m: u64, max_period: u64) -> Result<bool> {
    if !system.is_unweighted() {
        return Err(Error::WeightedSystem);
    }
    table_is_constant(system, max_period, &BigInt::from(m))
}
