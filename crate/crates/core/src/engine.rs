//! Evaluation of extended quota majority methods.
//!
//! A quota `k` at position `λ` decides a profile for `a` when at least `k`
//! voters prefer `a`, and for `b` when at least `n+1-k` voters prefer `b`.
//! The first deciding position is the profile index; a quota equal to `0`
//! or `n+1` always decides, which makes the index total.

use crate::error::{Error, Result};
use crate::types::{Alternative, CountProfile, CountTable, QuotaSeq};

/// Position of the first quota that decides a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProfileIndex(pub usize);

fn check_society(k: &QuotaSeq, p: CountProfile) -> Result<()> {
    if k.n() != p.n() {
        return Err(Error::SocietyMismatch { expected: k.n(), found: p.n() });
    }
    Ok(())
}

/// Outcome decided by a single quota, if it decides at all.
fn decide(q: u32, n: u32, p: CountProfile) -> Option<Alternative> {
    if p.n_a() >= q {
        Some(Alternative::A)
    } else if p.n_b() + q > n {
        Some(Alternative::B)
    } else {
        None
    }
}

fn first_decision(k: &QuotaSeq, p: CountProfile) -> (usize, Alternative) {
    k.quotas()
        .iter()
        .enumerate()
        .find_map(|(i, &q)| decide(q, k.n(), p).map(|alt| (i, alt)))
        .expect("a terminal quota decides every profile")
}

pub fn profile_index(k: &QuotaSeq, p: CountProfile) -> Result<ProfileIndex> {
    check_society(k, p)?;
    Ok(ProfileIndex(first_decision(k, p).0))
}

pub fn eval(k: &QuotaSeq, p: CountProfile) -> Result<Alternative> {
    check_society(k, p)?;
    Ok(first_decision(k, p).1)
}

/// The plain quota majority method on strict profiles: `a` iff at least
/// `k0` voters prefer `a`.
pub fn eval_strict_quota(k0: u32, p: CountProfile) -> Result<Alternative> {
    if k0 > p.n() + 1 {
        return Err(Error::QuotaOutOfRange { value: k0, n: p.n() });
    }
    if !p.is_strict() {
        return Err(Error::NotStrict { n_a: p.n_a(), n_b: p.n_b() });
    }
    Ok(if p.n_a() >= k0 { Alternative::A } else { Alternative::B })
}

/// Index of the first quota in `{0, n+1}`.
pub fn length(k: &QuotaSeq) -> usize {
    k.quotas()
        .iter()
        .position(|&q| k.is_terminal(q))
        .expect("a terminal quota exists by construction")
}

pub fn is_proper(k: &QuotaSeq) -> bool {
    is_proper_raw(k.quotas(), k.n())
}

/// Properness of an arbitrary integer sequence.
///
/// Every quota after the first must lie strictly outside the range spanned
/// by its predecessors, the side (above or below) must alternate, and only
/// the last quota may be `0` or `n+1`.
pub fn is_proper_raw(quotas: &[u32], n: u32) -> bool {
    let Some((&last, body)) = quotas.split_last() else {
        return false;
    };
    let terminal = |q: u32| q == 0 || q == n + 1;
    if n == 0 || !terminal(last) || body.iter().any(|&q| q > n || terminal(q)) {
        return false;
    }
    let (mut lo, mut hi) = (quotas[0], quotas[0]);
    let mut prev_above: Option<bool> = None;
    for &q in &quotas[1..] {
        let above = if q > hi {
            true
        } else if q < lo {
            false
        } else {
            return false;
        };
        if prev_above == Some(above) {
            return false;
        }
        prev_above = Some(above);
        lo = lo.min(q);
        hi = hi.max(q);
    }
    true
}

/// The sequence obtained by exchanging the roles of `a` and `b`.
pub fn dual(k: &QuotaSeq) -> QuotaSeq {
    let n = k.n();
    QuotaSeq::new(n, k.quotas().iter().map(|&q| n + 1 - q).collect())
        .expect("dual of a valid sequence is valid")
}

pub fn to_table(k: &QuotaSeq) -> CountTable {
    CountTable::from_fn(k.n(), |p| first_decision(k, p).1).expect("n >= 1 by construction")
}
