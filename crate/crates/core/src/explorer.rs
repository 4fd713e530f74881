//! Boundary cases of the vanishing-sum criterion.
//!
//! * [`raw_sum`] evaluates `Σ λ_s ζ_q^{a_s} / (1 − ζ_q^{n_s})` at any order
//!   `q` with residues taken as given, not reduced modulo `n_s`.
//! * [`composite_counterexample`] builds the family showing that a
//!   composite order admits vanishing sums with `|S| < q`.
//! * [`verify_bound`] and [`bound_scan`] check that a vanishing sum at a
//!   prime `p` forces `Σ n_s − k + 1 ≥ |S| ≥ p`.
//! * [`go_search`] exhaustively checks the Graham–O'Bryant conjecture at
//!   desk scale.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use crate::arith::{is_prime, residue, Rational};
use crate::covsys::{s_cardinality, System, WeightedClass};
use crate::cyclotomic::{one_minus_root_inverse, CyclicAccumulator, CyclotomicNumber};
use crate::equivalence::theorem_sum;
use crate::error::{Error, Result};

/// A weighted class whose residue is deliberately not reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RawClass {
    pub weight: BigInt,
    pub residue: BigInt,
    pub modulus: u64,
}

impl RawClass {
    pub fn new(weight: impl Into<BigInt>, residue: impl Into<BigInt>, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::NonPositiveModulus);
        }
        Ok(RawClass {
            weight: weight.into(),
            residue: residue.into(),
            modulus,
        })
    }
}

impl fmt::Display for RawClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.weight != BigInt::from(1) {
            write!(f, "{} * ", self.weight)?;
        }
        write!(f, "{}({})", self.residue, self.modulus)
    }
}

/// `Σ λ_s ζ_q^{a_s} (1 − ζ_q^{n_s})^{-1}` in Q(ζ_q).
pub fn raw_sum(classes: &[RawClass], q: u64) -> Result<CyclotomicNumber> {
    if q == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut numerators: BTreeMap<u64, CyclicAccumulator> = BTreeMap::new();
    for class in classes {
        if class.modulus % q == 0 {
            return Err(Error::RootIsOne {
                order: q,
                exponent: class.modulus,
            });
        }
        let acc = match numerators.entry(class.modulus % q) {
            std::collections::btree_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::btree_map::Entry::Vacant(e) => e.insert(CyclicAccumulator::new(q)?),
        };
        acc.add_term(&Rational::from_integer(class.weight.clone()), residue(&class.residue, q));
    }
    let mut total = CyclotomicNumber::zero(q)?;
    for (n, acc) in numerators {
        let numerator = acc.finish();
        if !numerator.is_zero() {
            total = total.add(&numerator.mul(&one_minus_root_inverse(q, n)?)?)?;
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeCounterexample {
    pub q: u64,
    pub prime_divisor: u64,
    pub modulus: u64,
    pub classes: Vec<RawClass>,
    pub sum: CyclotomicNumber,
    pub s_cardinality: u64,
}

/// The classes `s·q/p (n)` for `s = 0, …, p − 1`, whose sum at order `q`
/// vanishes although `|S(n, …, n)| = n < q`.
pub fn composite_counterexample(q: u64, prime_divisor: u64, n: u64) -> Result<CompositeCounterexample> {
    if q < 2 {
        return Err(Error::OutOfRange {
            name: "q",
            value: q.to_string(),
            expected: "q ≥ 2",
        });
    }
    if !is_prime(prime_divisor) || q % prime_divisor != 0 {
        return Err(Error::NotAPrimeDivisor { p: prime_divisor, q });
    }
    if n == 0 || n >= q {
        return Err(Error::OutOfRange {
            name: "n",
            value: n.to_string(),
            expected: "1 ≤ n ≤ q − 1",
        });
    }
    let step = q / prime_divisor;
    let classes = (0..prime_divisor)
        .map(|s| RawClass::new(1, s * step, n))
        .collect::<Result<Vec<_>>>()?;
    let sum = raw_sum(&classes, q)?;
    if !sum.is_zero() {
        return Err(Error::Invariant(format!(
            "composite sum at q = {q}, p = {prime_divisor}, n = {n} does not vanish"
        )));
    }
    let s_cardinality = s_cardinality(&vec![n; prime_divisor as usize])?;
    if s_cardinality >= q {
        return Err(Error::Invariant(format!("|S| = {s_cardinality} is not below q = {q}")));
    }
    Ok(CompositeCounterexample {
        q,
        prime_divisor,
        modulus: n,
        classes,
        sum,
        s_cardinality,
    })
}

/// `Σ n_s − k + 1 ≥ |S| ≥ p` for a nonempty unweighted system whose sum at
/// the prime `p` vanishes. `false` would refute the criterion.
pub fn verify_bound(system: &System, p: u64) -> Result<bool> {
    if system.is_empty() {
        return Err(Error::EmptySystem);
    }
    if !system.is_unweighted() {
        return Err(Error::WeightedSystem);
    }
    if !theorem_sum(system, p)?.is_zero() {
        return Err(Error::NonVanishingSum);
    }
    let s = s_cardinality(&system.moduli())?;
    let upper = system.modulus_sum() - system.len() as u64 + 1;
    Ok(upper >= s && s >= p)
}

/// All unweighted systems (multisets of classes `a (n)`, `0 ≤ a < n`) with
/// `Σ n_s ≤ max_modulus_sum`, including the empty one. Classes within each
/// system are sorted by `(n, a)`.
pub fn unweighted_systems(max_modulus_sum: u64) -> Vec<System> {
    fn extend(budget: u64, min: (u64, u64), current: &mut Vec<(u64, u64)>, out: &mut Vec<System>) {
        out.push(System::new(
            current
                .iter()
                .map(|&(n, a)| WeightedClass::unit(a, n).expect("positive modulus"))
                .collect(),
        ));
        for n in min.0..=budget {
            let start = if n == min.0 { min.1 } else { 0 };
            for a in start..n {
                current.push((n, a));
                extend(budget - n, (n, a), current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(max_modulus_sum, (1, 0), &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundInstance {
    pub system: System,
    pub prime: u64,
    pub s_cardinality: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundScanReport {
    pub systems: usize,
    pub instances: usize,
    pub vanishing: Vec<BoundInstance>,
    pub violations: Vec<BoundInstance>,
}

/// Evaluates every nonempty unweighted system with `Σ n_s ≤ max_modulus_sum`
/// at every given prime dividing none of its moduli, and checks the bound
/// for each vanishing instance.
pub fn bound_scan(max_modulus_sum: u64, primes: &[u64]) -> Result<BoundScanReport> {
    let systems: Vec<System> = unweighted_systems(max_modulus_sum)
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    let per_system: Vec<(usize, Vec<(BoundInstance, bool)>)> = systems
        .par_iter()
        .map(|system| -> Result<_> {
            let mut evaluated = 0;
            let mut hits = Vec::new();
            for &p in primes {
                if system.moduli().iter().any(|n| n % p == 0) {
                    continue;
                }
                evaluated += 1;
                if theorem_sum(system, p)?.is_zero() {
                    let holds = verify_bound(system, p)?;
                    hits.push((
                        BoundInstance {
                            system: system.clone(),
                            prime: p,
                            s_cardinality: s_cardinality(&system.moduli())?,
                        },
                        holds,
                    ));
                }
            }
            Ok((evaluated, hits))
        })
        .collect::<Result<_>>()?;
    let mut report = BoundScanReport {
        systems: systems.len(),
        ..Default::default()
    };
    for (evaluated, hits) in per_system {
        report.instances += evaluated;
        for (instance, holds) in hits {
            if !holds {
                report.violations.push(instance.clone());
            }
            report.vanishing.push(instance);
        }
    }
    Ok(report)
}

/// A vanishing sum `Σ ζ_q^{a_s} / (1 − ζ_q^{n_s}) = 0` with distinct
/// `n_s < q` coprime to `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoWitness {
    pub order: u64,
    /// `(a, n)` pairs, sorted by `n`.
    pub classes: Vec<(u64, u64)>,
    pub modulus_sum: u64,
}

impl GoWitness {
    fn canonical_key(&self) -> (usize, Vec<u64>, Vec<u64>) {
        (
            self.classes.len(),
            self.classes.iter().map(|c| c.1).collect(),
            self.classes.iter().map(|c| c.0).collect(),
        )
    }

    /// Whether this witness satisfies `Σ n_s ≥ q`.
    pub fn satisfies_conjecture(&self) -> bool {
        self.modulus_sum >= self.order
    }

    /// Re-evaluates the sum.
    pub fn sum(&self) -> Result<CyclotomicNumber> {
        let classes = self
            .classes
            .iter()
            .map(|&(a, n)| RawClass::new(1, a, n))
            .collect::<Result<Vec<_>>>()?;
        raw_sum(&classes, self.order)
    }
}

impl fmt::Display for GoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={} k={} sum_n={} classes=",
            self.order,
            self.classes.len(),
            self.modulus_sum
        )?;
        for (i, (a, n)) in self.classes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}({n})")?;
        }
        Ok(())
    }
}

impl FromStr for GoWitness {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let bad = |message: &str| Error::Parse {
            line: 1,
            message: format!("{message}: {line:?}"),
        };
        let mut fields = line.split_whitespace();
        let mut field = |key: &str| -> Result<&str> {
            fields
                .next()
                .and_then(|f| f.strip_prefix(key))
                .ok_or_else(|| bad(&format!("expected {key}")))
        };
        let number = |s: &str| s.parse::<u64>().map_err(|_| bad("invalid number"));
        let order = number(field("q=")?)?;
        let k = number(field("k=")?)? as usize;
        let modulus_sum = number(field("sum_n=")?)?;
        let classes = field("classes=")?
            .split(',')
            .map(|c| {
                let (a, n) = c
                    .strip_suffix(')')
                    .and_then(|c| c.split_once('('))
                    .ok_or_else(|| bad("invalid class"))?;
                Ok((number(a)?, number(n)?))
            })
            .collect::<Result<Vec<_>>>()?;
        if classes.len() != k || classes.iter().map(|c| c.1).sum::<u64>() != modulus_sum {
            return Err(bad("inconsistent witness"));
        }
        Ok(GoWitness {
            order,
            classes,
            modulus_sum,
        })
    }
}

/// Progress after finishing one `(k, modulus subset)` unit.
#[derive(Clone, Debug)]
pub struct GoProgress {
    pub moduli: Vec<u64>,
    pub completed: usize,
    pub total: usize,
    pub witnesses: usize,
}

#[derive(Default)]
pub struct GoSearchOptions<'a> {
    /// Wall-clock budget; units not started in time are skipped and the
    /// report is marked partial.
    pub budget: Option<Duration>,
    pub progress: Option<&'a (dyn Fn(&GoProgress) + Sync)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoReport {
    pub q: u64,
    pub k_max: u64,
    /// Canonically ordered by `(k, moduli, residues)`.
    pub witnesses: Vec<GoWitness>,
    pub units_total: usize,
    pub units_completed: usize,
    pub partial: bool,
}

impl GoReport {
    /// True iff no witness violates `Σ n_s ≥ q`.
    pub fn verdict(&self) -> bool {
        self.witnesses.iter().all(GoWitness::satisfies_conjecture)
    }

    pub fn violations(&self) -> impl Iterator<Item = &GoWitness> {
        self.witnesses.iter().filter(|w| !w.satisfies_conjecture())
    }
}

fn subsets(items: &[u64], k: usize) -> Vec<Vec<u64>> {
    fn go(items: &[u64], k: usize, start: usize, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            go(items, k, i + 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// All vanishing residue tuples for one modulus subset.
fn search_unit(q: u64, moduli: &[u64]) -> Result<Vec<GoWitness>> {
    // terms[s][a] = ζ^a / (1 − ζ^{n_s})
    let terms: Vec<Vec<CyclotomicNumber>> = moduli
        .iter()
        .map(|&n| {
            let inv = one_minus_root_inverse(q, n)?;
            Ok((0..q).map(|a| inv.times_root_power(a)).collect())
        })
        .collect::<Result<_>>()?;
    let modulus_sum = moduli.iter().sum();
    let mut found = Vec::new();
    let mut residues = Vec::with_capacity(moduli.len());
    fn walk(
        depth: usize,
        partial: &CyclotomicNumber,
        terms: &[Vec<CyclotomicNumber>],
        residues: &mut Vec<u64>,
        emit: &mut dyn FnMut(&[u64]),
    ) {
        if depth == terms.len() {
            if partial.is_zero() {
                emit(residues);
            }
            return;
        }
        for (a, term) in terms[depth].iter().enumerate() {
            let next = partial.add(term).expect("same order");
            residues.push(a as u64);
            walk(depth + 1, &next, terms, residues, emit);
            residues.pop();
        }
    }
    let mut emit = |residues: &[u64]| {
        found.push(GoWitness {
            order: q,
            classes: residues.iter().copied().zip(moduli.iter().copied()).collect(),
            modulus_sum,
        })
    };
    walk(0, &CyclotomicNumber::zero(q)?, &terms, &mut residues, &mut emit);
    Ok(found)
}

/// Exhaustive search over `k ≤ k_max` distinct moduli `n < q` coprime to `q`
/// and all residue tuples in `[0, q)^k`.
pub fn go_search(q: u64, k_max: u64) -> Result<GoReport> {
    go_search_with(q, k_max, &GoSearchOptions::default())
}

pub fn go_search_with(q: u64, k_max: u64, options: &GoSearchOptions<'_>) -> Result<GoReport> {
    if q < 2 {
        return Err(Error::OutOfRange {
            name: "q",
            value: q.to_string(),
            expected: "q ≥ 2",
        });
    }
    if k_max == 0 {
        return Err(Error::OutOfRange {
            name: "k_max",
            value: "0".into(),
            expected: "k_max ≥ 1",
        });
    }
    let allowed: Vec<u64> = (1..q).filter(|n| n.gcd(&q) == 1).collect();
    let units: Vec<Vec<u64>> = (1..=k_max.min(allowed.len() as u64) as usize)
        .flat_map(|k| subsets(&allowed, k))
        .collect();
    let started = Instant::now();
    let completed = AtomicUsize::new(0);
    let found = AtomicUsize::new(0);
    let results: Vec<Option<Vec<GoWitness>>> = units
        .par_iter()
        .map(|moduli| -> Result<_> {
            if options.budget.is_some_and(|b| started.elapsed() > b) {
                return Ok(None);
            }
            let witnesses = search_unit(q, moduli)?;
            let done = completed.fetch_add(1, Ordering::SeqCst) + 1;
            let total_found = found.fetch_add(witnesses.len(), Ordering::SeqCst) + witnesses.len();
            if let Some(progress) = options.progress {
                progress(&GoProgress {
                    moduli: moduli.clone(),
                    completed: done,
                    total: units.len(),
                    witnesses: total_found,
                });
            }
            Ok(Some(witnesses))
        })
        .collect::<Result<_>>()?;
    let units_completed = results.iter().filter(|r| r.is_some()).count();
    let mut witnesses: Vec<GoWitness> = results.into_iter().flatten().flatten().collect();
    witnesses.sort_by_key(GoWitness::canonical_key);
    witnesses.dedup();
    Ok(GoReport {
        q,
        k_max,
        witnesses,
        units_total: units.len(),
        units_completed,
        partial: units_completed < units.len(),
    })
}
