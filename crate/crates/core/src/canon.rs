//! Reduction of arbitrary defining sequences to the proper form.
//!
//! Two table-preserving rewrites are used. A quota lying inside the closed
//! range of its predecessors can never be the deciding one, so it is
//! deleted. Among consecutive quotas on the same side of the first quota,
//! only the most extreme decides anything, so each such block collapses to
//! its maximum (above) or minimum (below). Alternating the two rewrites to
//! a fixed point leaves a strictly zig-zagging, proper sequence.

use crate::engine::{is_proper, length, to_table};
use crate::error::{Error, Result};
use crate::types::{CountTable, QuotaSeq};

/// Upper bound on the number of candidate sequences an exhaustive search
/// may inspect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget(pub u128);

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget(1_000_000)
    }
}

/// Cuts `j` after its first quota in `{0, n+1}`.
pub fn truncate(j: &[u32], n: u32) -> Result<QuotaSeq> {
    let seq = QuotaSeq::new(n, j.to_vec())?;
    let end = length(&seq);
    Ok(QuotaSeq::new(n, j[..=end].to_vec()).expect("prefix keeps the terminal"))
}

/// Removes every quota (other than the first and the terminal) that lies
/// in the closed range spanned by the quotas kept before it. Repeats and
/// weakly sandwiched values both fall under this rule.
pub fn delete_dominated(k: &QuotaSeq) -> QuotaSeq {
    let n = k.n();
    let k = truncate(k.quotas(), n).expect("valid sequence truncates");
    let quotas = k.quotas();
    let (last, body) = quotas.split_last().expect("non-empty");
    let mut kept = vec![quotas[0]];
    let (mut lo, mut hi) = (quotas[0], quotas[0]);
    if !body.is_empty() {
        for &q in &body[1..] {
            if (lo..=hi).contains(&q) {
                continue;
            }
            kept.push(q);
            lo = lo.min(q);
            hi = hi.max(q);
        }
        kept.push(*last);
    }
    let out = QuotaSeq::new(n, kept).expect("terminal is kept");
    debug_assert_eq!(to_table(&out), to_table(&k), "dominated-quota deletion changed the table");
    out
}

/// Collapses each maximal run of quotas on one side of the first quota to
/// its most extreme member. The terminal is part of the last run and is
/// always its extreme.
fn collapse_blocks(k: &QuotaSeq) -> QuotaSeq {
    let quotas = k.quotas();
    let head = quotas[0];
    let mut kept = vec![head];
    let mut current: Option<(bool, u32)> = None;
    for &q in &quotas[1..] {
        let above = q > head;
        current = match current {
            Some((side, best)) if side == above => {
                Some((side, if above { best.max(q) } else { best.min(q) }))
            }
            Some((_, best)) => {
                kept.push(best);
                Some((above, q))
            }
            None => Some((above, q)),
        };
    }
    if let Some((_, best)) = current {
        kept.push(best);
    }
    let out = QuotaSeq::new(k.n(), kept).expect("terminal is the extreme of its block");
    debug_assert_eq!(to_table(&out), to_table(k), "block collapse changed the table");
    out
}

/// The unique proper sequence with the same table as the truncation of `j`.
/// Constant rules map to the singletons `(0)` and `(n+1)`.
pub fn canonicalize(j: &[u32], n: u32) -> Result<QuotaSeq> {
    let mut k = truncate(j, n)?;
    if k.quotas().len() == 1 {
        return Ok(k);
    }
    loop {
        let next = collapse_blocks(&delete_dominated(&k));
        if next == k {
            break;
        }
        k = next;
    }
    debug_assert!(is_proper(&k), "canonical form {k} is not proper");
    Ok(k)
}

fn permutations(n: u128, r: u128) -> u128 {
    (0..r).map(|i| n.saturating_sub(i)).product()
}

/// Number of valid r-tuples of length strictly below `len`.
fn shorter_tuple_count(n: u32, len: usize) -> u128 {
    (0..len as u128).map(|r| 2 * permutations(n as u128, r)).fold(0u128, u128::saturating_add)
}

/// Whether no valid r-tuple of smaller length has the same table as `k`.
pub fn is_minimal(k: &QuotaSeq, budget: SearchBudget) -> Result<bool> {
    if !k.is_valid_tuple() {
        return Err(Error::NotValidTuple(k.quotas().to_vec()));
    }
    let n = k.n();
    let len = length(k);
    let needed = shorter_tuple_count(n, len);
    if needed > budget.0 {
        return Err(Error::SearchTooLarge { needed, budget: budget.0 });
    }
    if len == 0 {
        return Ok(true);
    }
    let target = to_table(k);
    let mut prefix = Vec::with_capacity(len);
    let mut used = vec![false; n as usize + 2];
    Ok(!shorter_match(n, len, &target, &mut prefix, &mut used))
}

fn shorter_match(
    n: u32,
    len: usize,
    target: &CountTable,
    prefix: &mut Vec<u32>,
    used: &mut [bool],
) -> bool {
    for terminal in [0, n + 1] {
        prefix.push(terminal);
        let candidate = QuotaSeq::new(n, prefix.clone()).expect("terminal present");
        prefix.pop();
        if to_table(&candidate) == *target {
            return true;
        }
    }
    if prefix.len() + 1 >= len {
        return false;
    }
    for q in 1..=n {
        if used[q as usize] {
            continue;
        }
        used[q as usize] = true;
        prefix.push(q);
        let found = shorter_match(n, len, target, prefix, used);
        prefix.pop();
        used[q as usize] = false;
        if found {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{is_proper_raw, to_table};
    use proptest::prelude::*;

    fn seq(n: u32, q: &[u32]) -> QuotaSeq {
        QuotaSeq::new(n, q.to_vec()).unwrap()
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(truncate(&[5, 2, 12, 7, 3], 11).unwrap(), seq(11, &[5, 2, 12]));
        assert_eq!(truncate(&[0, 5], 11).unwrap(), seq(11, &[0]));
        assert_eq!(truncate(&[5, 2, 9, 12], 11).unwrap(), seq(11, &[5, 2, 9, 12]));
        assert_eq!(truncate(&[5, 2, 9], 11), Err(Error::NoTerminal { n: 11 }));
        assert!(truncate(&[5, 14, 12], 11).is_err());
    }

    #[test]
    fn delete_dominated_examples() {
        let raw = seq(11, &[5, 5, 5, 4, 5, 3, 5, 2, 12]);
        let out = delete_dominated(&raw);
        assert_eq!(out, seq(11, &[5, 4, 3, 2, 12]));
        assert_eq!(to_table(&out), to_table(&raw));

        let out = delete_dominated(&seq(11, &[5, 2, 9, 12]));
        assert_eq!(out, seq(11, &[5, 2, 9, 12]));

        assert_eq!(delete_dominated(&seq(11, &[4, 4, 12])), seq(11, &[4, 12]));
        assert_eq!(delete_dominated(&seq(11, &[12])), seq(11, &[12]));
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(canonicalize(&[5, 2, 7, 12], 11).unwrap(), seq(11, &[5, 2, 12]));
        assert_eq!(canonicalize(&[5, 2, 9, 12], 11).unwrap(), seq(11, &[5, 2, 12]));
        assert_eq!(
            canonicalize(&[5, 5, 5, 4, 5, 3, 5, 2, 12], 11).unwrap(),
            seq(11, &[5, 2, 12])
        );
        assert_eq!(canonicalize(&[12], 11).unwrap(), seq(11, &[12]));
        assert_eq!(canonicalize(&[0, 3, 12], 11).unwrap(), seq(11, &[0]));
        assert_eq!(canonicalize(&[5, 2], 11), Err(Error::NoTerminal { n: 11 }));
    }

    #[test]
    fn is_minimal_examples() {
        let b = SearchBudget::default();
        assert!(is_minimal(&seq(11, &[5, 2, 12]), b).unwrap());
        assert!(!is_minimal(&seq(11, &[5, 2, 7, 12]), b).unwrap());
        assert!(is_minimal(&seq(3, &[4]), b).unwrap());
    }

    #[test]
    fn is_minimal_refuses_oversized_search() {
        let long = seq(11, &[6, 5, 7, 4, 8, 3, 9, 2, 10, 1, 11, 0]);
        match is_minimal(&long, SearchBudget(1000)) {
            Err(Error::SearchTooLarge { needed, budget }) => {
                assert_eq!(budget, 1000);
                assert!(needed > 1000);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
        assert!(matches!(
            is_minimal(&seq(11, &[5, 5, 12]), SearchBudget::default()),
            Err(Error::NotValidTuple(_))
        ));
    }

    #[test]
    fn candidate_count_matches_enumeration() {
        // n=3, tuples shorter than length 3: lengths 0, 1, 2 -> 2 * (1 + 3 + 6).
        assert_eq!(shorter_tuple_count(3, 3), 20);
        assert_eq!(shorter_tuple_count(11, 2), 24);
    }

    fn raw_input() -> impl Strategy<Value = (u32, Vec<u32>)> {
        (1u32..=6).prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(0..=n + 1, 0..10),
                prop::bool::ANY,
                prop::collection::vec(0..=n + 1, 0..3),
            )
                .prop_map(|(n, mut body, b, tail)| {
                    body.push(if b { n + 1 } else { 0 });
                    body.extend(tail);
                    (n, body)
                })
        })
    }

    proptest! {
        #[test]
        fn canonical_form_is_proper_idempotent_and_table_equal((n, j) in raw_input()) {
            let canon = canonicalize(&j, n).unwrap();
            prop_assert!(is_proper(&canon));
            prop_assert_eq!(to_table(&canon), to_table(&truncate(&j, n).unwrap()));
            prop_assert_eq!(canonicalize(canon.quotas(), n).unwrap(), canon.clone());
            prop_assert!(is_proper_raw(canon.quotas(), n));
        }

        #[test]
        fn proper_inputs_are_fixed_points((n, j) in raw_input()) {
            let t = truncate(&j, n).unwrap();
            if is_proper(&t) {
                prop_assert_eq!(canonicalize(&j, n).unwrap(), t);
            }
        }
    }
}
