//! The correspondence between subsets of `{1..n}` (plus a default) and
//! proper sequences, and the full family of `2^(n+1)` rules it yields.

use std::collections::{BTreeSet, VecDeque};

use crate::engine::{dual, is_proper, to_table};
use crate::error::{Error, Result};
use crate::types::{Alternative, CountTable, QuotaSeq};

/// Builds the proper sequence attached to `subset`.
///
/// For default `b` the elements are laid out from the back: the last
/// interior quota is the minimum, the one before it the maximum of what
/// remains, and so on alternately, followed by the terminal `n+1`. The
/// default-`a` sequence is the dual of the default-`b` one.
pub fn subset_to_proper(subset: &BTreeSet<u32>, default: Alternative, n: u32) -> Result<QuotaSeq> {
    if n == 0 {
        return Err(Error::EmptySociety);
    }
    if let Some(&value) = subset.iter().find(|&&v| v == 0 || v > n) {
        return Err(Error::SubsetOutOfRange { value, n });
    }
    let mut pool: VecDeque<u32> = subset.iter().copied().collect();
    let mut reversed = Vec::with_capacity(pool.len());
    let mut take_min = true;
    while let Some(v) = if take_min { pool.pop_front() } else { pool.pop_back() } {
        reversed.push(v);
        take_min = !take_min;
    }
    let mut quotas: Vec<u32> = reversed.into_iter().rev().collect();
    quotas.push(n + 1);
    let seq = QuotaSeq::new(n, quotas).expect("terminal appended");
    debug_assert!(is_proper(&seq));
    Ok(match default {
        Alternative::B => seq,
        Alternative::A => dual(&seq),
    })
}

/// Inverse of [`subset_to_proper`].
pub fn proper_to_subset(k: &QuotaSeq) -> Result<(BTreeSet<u32>, Alternative)> {
    if !is_proper(k) {
        return Err(Error::NotProper(k.quotas().to_vec()));
    }
    let n = k.n();
    let (&last, body) = k.quotas().split_last().expect("non-empty");
    Ok(if last == n + 1 {
        (body.iter().copied().collect(), Alternative::B)
    } else {
        (body.iter().map(|&q| n + 1 - q).collect(), Alternative::A)
    })
}

/// Limit on the number of family members [`enumerate_all`] may emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyGuard(pub u128);

impl Default for FamilyGuard {
    fn default() -> Self {
        FamilyGuard(1 << 17)
    }
}

/// Subset of `{1..n}` encoded by the bits of `mask` (bit `i` is `i+1`).
fn subset_of_mask(mask: u64, n: u32) -> BTreeSet<u32> {
    (1..=n).filter(|&v| mask >> (v - 1) & 1 == 1).collect()
}

/// All `2^(n+1)` proper sequences with their tables: default `b` first,
/// then default `a`, subsets in binary-counter order within each half.
pub fn enumerate_all(n: u32, guard: FamilyGuard) -> Result<Vec<(QuotaSeq, CountTable)>> {
    if n == 0 {
        return Err(Error::EmptySociety);
    }
    let needed = 1u128.checked_shl(n + 1).unwrap_or(u128::MAX);
    if n >= 63 || needed > guard.0 {
        return Err(Error::SearchTooLarge { needed, budget: guard.0 });
    }
    let mut family = Vec::with_capacity(needed as usize);
    for default in [Alternative::B, Alternative::A] {
        for mask in 0..1u64 << n {
            let seq = subset_to_proper(&subset_of_mask(mask, n), default, n)?;
            let table = to_table(&seq);
            family.push((seq, table));
        }
    }
    Ok(family)
}
