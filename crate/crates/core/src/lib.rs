//! Anonymous, strategy-proof choice between two alternatives when voters
//! may declare indifference.
//!
//! Every such rule is an extended quota majority method: a sequence of
//! quotas applied in order until one decides. This crate evaluates those
//! methods, reduces any defining sequence to its unique proper form,
//! enumerates the whole family, recovers the representation from a bare
//! truth table, converts to and from indifference-quota rules, and checks
//! all of it against brute-force oracles.

pub mod canon;
pub mod engine;
pub mod enumerate;
pub mod error;
pub mod extract;
pub mod lp;
pub mod oracle;
pub mod types;

pub use canon::{canonicalize, delete_dominated, is_minimal, truncate, SearchBudget};
pub use engine::{
    dual, eval, eval_strict_quota, is_proper, is_proper_raw, length, profile_index, to_table,
    ProfileIndex,
};
pub use enumerate::{enumerate_all, proper_to_subset, subset_to_proper, FamilyGuard};
pub use error::{Error, Result};
pub use extract::{
    covered_a, covered_b, extract, interleave, psi_eval, psi_table, represent,
    represent_with_trace, LkPair, LkSequence,
};
pub use lp::{lp_eval, lp_to_proper, lp_to_table, proper_to_lp, table_equal_alternatives, LpRule};
pub use oracle::{
    check_anonymous, check_strategy_proof, check_strategy_proof_full, exhaustive_sp_family, expand,
    is_onto, is_strategy_proof, reduce, tables_equal, Counterexample, FullCounterexample,
};
pub use types::{
    all_count_profiles, all_full_profiles, count_of, Alternative, CountProfile, CountTable,
    FullProfile, FullTable, Preference, QuotaSeq,
};
