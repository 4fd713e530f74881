//! Covering equivalence of weighted residue-class systems.
//!
//! Two finite systems of residue classes are covering equivalent when every
//! integer lies in the same (weighted) number of classes of each. Deciding
//! this by tabulating the covering function costs the lcm of the moduli; this
//! crate instead evaluates one exact sum
//!
//! ```text
//!     Σ λ_s ζ^{a_s} / (1 − ζ^{n_s})
//! ```
//!
//! in the cyclotomic field Q(ζ_p), where `p` is the least prime exceeding
//! `|S(n_1, …, n_k)|`, and tests it for zero. The cost tracks `|S|` rather
//! than the period.
//!
//! Module map:
//!
//! * [`arith`] gcd, lcm, rationals, trial-division primes.
//! * [`cyclotomic`] exact arithmetic in Q(ζ_m).
//! * [`covsys`] the system model, file format and brute-force oracle.
//! * [`equivalence`] the vanishing-sum criterion and its cross-checks.
//! * [`explorer`] unnormalized sums, composite-order counterexamples, the
//!   modulus-sum bound and the Graham–O'Bryant desk search.

pub mod arith;
pub mod covsys;
pub mod cyclotomic;
pub mod equivalence;
mod error;
pub mod explorer;

pub use arith::Rational;
pub use covsys::{CoveringTable, SSet, System, WeightedClass};
pub use cyclotomic::{CyclotomicNumber, IntPolynomial};
pub use equivalence::{CoefficientProfile, EquivalenceWitness, SpectralCoefficients};
pub use error::{Error, Result};
pub use explorer::{GoReport, GoWitness, RawClass};
pub use num_bigint::BigInt;

/// Default upper bound on the number of table entries the brute-force oracle
/// will evaluate.
pub const DEFAULT_MAX_PERIOD: u64 = 10_000_000;

/// Default upper bound on the field order used for spectral coefficients.
pub const DEFAULT_MAX_SPECTRAL_ORDER: u64 = 2000;
