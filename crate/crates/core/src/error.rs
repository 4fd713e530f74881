use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty modulus list")]
    EmptyModulusList,

    #[error("cyclotomic order must be positive")]
    ZeroOrder,

    #[error("order mismatch: Q(ζ_{left}) vs Q(ζ_{right})")]
    OrderMismatch { left: u64, right: u64 },

    #[error("division by zero in cyclotomic field")]
    DivisionByZero,

    #[error("1 − ζ^n = 0: order {order} divides {exponent}")]
    RootIsOne { order: u64, exponent: u64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("modulus must be positive")]
    NonPositiveModulus,

    #[error("period too large for brute force: period {period} exceeds {max}")]
    PeriodTooLarge { period: BigInt, max: u64 },

    #[error("exact cover defined for unweighted systems")]
    WeightedSystem,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("prime divides a modulus: {prime} | {modulus}")]
    PrimeDividesModulus { prime: u64, modulus: u64 },

    #[error("prime {prime} does not exceed |S| = {s_cardinality}")]
    PrimeTooSmall { prime: u64, s_cardinality: u64 },

    #[error("moduli must be distinct (repeated modulus {0})")]
    RepeatedModulus(u64),

    #[error("prime {prime} is not coprime to the period {period}")]
    NotCoprime { prime: u64, period: BigInt },

    #[error("field order {order} exceeds the bound {max}")]
    FieldOrderTooLarge { order: BigInt, max: u64 },

    #[error("{p} is not a prime divisor of {q}")]
    NotAPrimeDivisor { p: u64, q: u64 },

    #[error("{name} = {value} is out of range: {expected}")]
    OutOfRange {
        name: &'static str,
        value: String,
        expected: &'static str,
    },

    #[error("system must be nonempty")]
    EmptySystem,

    #[error("bound only applies to vanishing sums")]
    NonVanishingSum,

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
