use thiserror::Error;

use crate::oracle::Counterexample;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("society size must be at least 1")]
    EmptySociety,
    #[error("quota sequence is empty")]
    EmptySequence,
    #[error("quota {value} lies outside [0, {max}]", max = n + 1)]
    QuotaOutOfRange { value: u32, n: u32 },
    #[error("no quota equals 0 or {}, so the profile index is not total", n + 1)]
    NoTerminal { n: u32 },
    #[error("society size mismatch: expected {expected}, found {found}")]
    SocietyMismatch { expected: u32, found: u32 },
    #[error("invalid count profile: n_a={n_a}, n_b={n_b} exceeds n={n}")]
    InvalidProfile { n_a: u32, n_b: u32, n: u32 },
    #[error("profile ({n_a},{n_b}) has indifferent voters; a strict profile is required")]
    NotStrict { n_a: u32, n_b: u32 },
    #[error("quota sequence {0:?} is not proper")]
    NotProper(Vec<u32>),
    #[error("quota sequence {0:?} is not a valid r-tuple")]
    NotValidTuple(Vec<u32>),
    #[error("subset element {value} lies outside 1..={n}")]
    SubsetOutOfRange { value: u32, n: u32 },
    #[error("search too large: {needed} candidates exceed the budget of {budget}")]
    SearchTooLarge { needed: u128, budget: u128 },
    #[error("table is not anonymous: profiles {first} and {second} have equal counts but different outcomes")]
    NotAnonymous { first: String, second: String },
    #[error("table is not strategy-proof: {0}")]
    NotStrategyProof(Counterexample),
    #[error("table is not onto")]
    NotOnto,
    #[error("invalid (l,k) sequence: {0}")]
    InvalidLkSequence(String),
    #[error("interleave hypothesis violated: {0}")]
    InterleaveHypothesis(String),
    #[error("row with {indifferent} indifferent voters is not monotone in the number of a-supporters")]
    NonMonotoneRow { indifferent: u32 },
    #[error("extraction does not reproduce the table at profile {0}")]
    ExtractionMismatch(String),
    #[error("invalid quota rule: {0}")]
    InvalidLpRule(String),
    #[error("table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
