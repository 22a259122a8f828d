//! Brute-force ground truth for anonymity, strategy-proofness and ontoness.
//!
//! Everything here is a transparent scan over finite tables. Other modules
//! are tested against these checks, never the other way round.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::types::{
    count_of, count_profile_total, profile_index_of, Alternative, CountProfile, CountTable,
    FullProfile, FullTable, Preference,
};

/// A profitable unilateral misreport at the count level: a voter of type
/// `voter` at `profile` reports `misreport` and moves the outcome from
/// `truthful` to the alternative it prefers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counterexample {
    pub profile: CountProfile,
    pub voter: Preference,
    pub misreport: Preference,
    pub truthful: Alternative,
    pub manipulated: Alternative,
}

impl Counterexample {
    /// The count profile reached after the misreport.
    pub fn deviated_profile(&self) -> CountProfile {
        shift(self.profile, self.voter, self.misreport).expect("recorded deviation is feasible")
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "voter preferring {} at {} reports {} and moves the outcome from {} to {} at {}",
            self.voter,
            self.profile,
            self.misreport,
            self.truthful,
            self.manipulated,
            self.deviated_profile()
        )
    }
}

/// A profitable misreport by a named voter of a full profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullCounterexample {
    pub profile: FullProfile,
    pub voter: usize,
    pub misreport: Preference,
    pub truthful: Alternative,
    pub manipulated: Alternative,
}

impl fmt::Display for FullCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "voter {} at {} reports {} and moves the outcome from {} to {}",
            self.voter + 1,
            self.profile,
            self.misreport,
            self.truthful,
            self.manipulated
        )
    }
}

/// Count profile after one voter of type `from` switches to `to`.
fn shift(p: CountProfile, from: Preference, to: Preference) -> Option<CountProfile> {
    let (mut a, mut b) = (p.n_a() as i64, p.n_b() as i64);
    for (pref, delta) in [(from, -1), (to, 1)] {
        match pref {
            Preference::PrefA => a += delta,
            Preference::PrefB => b += delta,
            Preference::Indifferent => {}
        }
    }
    if a < 0 || b < 0 {
        return None;
    }
    CountProfile::new(a as u32, b as u32, p.n()).ok()
}

/// First profitable deviation of an anonymous rule given by `lookup`
/// (indexed like [`CountTable`]), scanning profiles in table order.
///
/// Only voters with a strict preference can gain, and only when the
/// current outcome is the other alternative; each such voter may report
/// indifference or the opposite alternative.
fn first_violation(n: u32, lookup: impl Fn(usize) -> Alternative) -> Option<Counterexample> {
    for n_a in 0..=n {
        for n_b in 0..=n - n_a {
            let profile = CountProfile::new(n_a, n_b, n).expect("enumerated profile");
            let truthful = lookup(profile_index_of(n, n_a, n_b));
            let (voter, present) = match truthful {
                Alternative::B => (Preference::PrefA, n_a),
                Alternative::A => (Preference::PrefB, n_b),
            };
            if present == 0 {
                continue;
            }
            let opposite = match voter {
                Preference::PrefA => Preference::PrefB,
                _ => Preference::PrefA,
            };
            for misreport in [Preference::Indifferent, opposite] {
                let q = shift(profile, voter, misreport).expect("voter type is present");
                let manipulated = lookup(q.index());
                if manipulated != truthful {
                    return Some(Counterexample { profile, voter, misreport, truthful, manipulated });
                }
            }
        }
    }
    None
}

pub fn check_strategy_proof(f: &CountTable) -> std::result::Result<(), Counterexample> {
    match first_violation(f.n(), |i| f.outcomes()[i]) {
        Some(c) => Err(c),
        None => Ok(()),
    }
}

pub fn is_strategy_proof(f: &CountTable) -> bool {
    check_strategy_proof(f).is_ok()
}

/// Largest society for which [`check_strategy_proof_full`] runs by default.
pub const DEFAULT_FULL_LIMIT: u32 = 10;

/// Strategy-proofness over all full profiles, every voter and both
/// misreports. Fails with [`Error::SearchTooLarge`] above `limit` voters.
pub fn check_strategy_proof_full(
    f: &FullTable,
    limit: u32,
) -> Result<std::result::Result<(), FullCounterexample>> {
    let n = f.n();
    if n > limit {
        return Err(Error::SearchTooLarge {
            needed: 3u128.pow(n) * n as u128 * 2,
            budget: 3u128.pow(limit) * limit as u128 * 2,
        });
    }
    for (profile, truthful) in f.iter() {
        for (v, &pref) in profile.voters().iter().enumerate() {
            let Some(fav) = pref.favourite() else { continue };
            if truthful == fav {
                continue;
            }
            for misreport in Preference::ALL {
                if misreport == pref {
                    continue;
                }
                let q = profile.with_voter(v, misreport);
                let manipulated = f.get(&q).expect("same society");
                if manipulated == fav {
                    return Ok(Err(FullCounterexample {
                        profile,
                        voter: v,
                        misreport,
                        truthful,
                        manipulated,
                    }));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// Finds two profiles with equal counts and different outcomes.
fn anonymity_witness(f: &FullTable) -> Option<(FullProfile, FullProfile)> {
    let mut seen: Vec<Option<(FullProfile, Alternative)>> = vec![None; count_profile_total(f.n())];
    for (profile, outcome) in f.iter() {
        let slot = &mut seen[count_of(&profile).index()];
        match slot {
            Some((first, o)) if *o != outcome => return Some((first.clone(), profile)),
            Some(_) => {}
            None => *slot = Some((profile, outcome)),
        }
    }
    None
}

/// Invariance under voter permutations, checked by grouping profiles with
/// equal counts.
pub fn check_anonymous(f: &FullTable) -> bool {
    anonymity_witness(f).is_none()
}

pub fn reduce(f: &FullTable) -> Result<CountTable> {
    if let Some((first, second)) = anonymity_witness(f) {
        return Err(Error::NotAnonymous { first: first.to_string(), second: second.to_string() });
    }
    let mut outcomes = vec![Alternative::B; count_profile_total(f.n())];
    for (profile, outcome) in f.iter() {
        outcomes[count_of(&profile).index()] = outcome;
    }
    CountTable::new(f.n(), outcomes)
}

/// The full table of an anonymous rule.
pub fn expand(f: &CountTable) -> FullTable {
    FullTable::from_fn(f.n(), |p| f.outcomes()[count_of(p).index()]).expect("n >= 1")
}

pub fn is_onto(f: &CountTable) -> bool {
    let o = f.outcomes();
    o.contains(&Alternative::A) && o.contains(&Alternative::B)
}

pub fn tables_equal(f: &CountTable, g: &CountTable) -> Result<bool> {
    if f.n() != g.n() {
        return Err(Error::SocietyMismatch { expected: f.n(), found: g.n() });
    }
    Ok(f.outcomes() == g.outcomes())
}

/// Largest society for which the exhaustive family search is allowed.
pub const MAX_EXHAUSTIVE_N: u32 = 5;

/// Every strategy-proof count table for a society of `n`, found by testing
/// all `2^((n+1)(n+2)/2)` candidates. Bit `i` of a candidate set means
/// profile `i` maps to `a`; results come in increasing candidate order.
pub fn exhaustive_sp_family(n: u32) -> Result<Vec<CountTable>> {
    if n == 0 {
        return Err(Error::EmptySociety);
    }
    let cells = count_profile_total(n) as u32;
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::SearchTooLarge {
            needed: 1u128 << cells,
            budget: 1u128 << count_profile_total(MAX_EXHAUSTIVE_N),
        });
    }
    let decode = |mask: u64, i: usize| {
        if mask >> i & 1 == 1 {
            Alternative::A
        } else {
            Alternative::B
        }
    };
    let masks: Vec<u64> = (0..1u64 << cells)
        .into_par_iter()
        .filter(|&mask| first_violation(n, |i| decode(mask, i)).is_none())
        .collect();
    Ok(masks
        .into_iter()
        .map(|mask| {
            let outcomes = (0..cells as usize).map(|i| decode(mask, i)).collect();
            CountTable::new(n, outcomes).expect("sized by construction")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::all_count_profiles;
    use Alternative::{A, B};

    fn majority(n: u32) -> CountTable {
        CountTable::from_fn(n, |p| if p.n_a() > p.n_b() { A } else { B }).unwrap()
    }

    /// Majority for three voters, broken at (1,1) and (2,1).
    fn broken_majority() -> CountTable {
        let mut o = majority(3).outcomes().to_vec();
        o[CountProfile::new(1, 1, 3).unwrap().index()] = A;
        o[CountProfile::new(2, 1, 3).unwrap().index()] = B;
        CountTable::new(3, o).unwrap()
    }

    /// Voter 1 decides; indifference of voter 1 gives `b`.
    fn dictator(n: u32) -> FullTable {
        FullTable::from_fn(n, |p| match p.voters()[0] {
            Preference::PrefA => A,
            _ => B,
        })
        .unwrap()
    }

    fn replay(f: &CountTable, c: &Counterexample) {
        assert_eq!(f.get(c.profile).unwrap(), c.truthful);
        assert_eq!(f.get(c.deviated_profile()).unwrap(), c.manipulated);
        assert_eq!(c.voter.favourite(), Some(c.manipulated));
        assert_ne!(c.truthful, c.manipulated);
    }

    #[test]
    fn anonymity_examples() {
        assert!(check_anonymous(&expand(&majority(3))));
        assert!(!check_anonymous(&dictator(2)));
        assert!(check_anonymous(&expand(&CountTable::constant(3, B).unwrap())));
    }

    #[test]
    fn reduce_examples() {
        let constant = CountTable::constant(2, B).unwrap();
        assert_eq!(reduce(&expand(&constant)).unwrap(), constant);
        assert_eq!(reduce(&expand(&majority(3))).unwrap(), majority(3));
        match reduce(&dictator(2)) {
            Err(Error::NotAnonymous { first, second }) => {
                let (p, q) = (FullProfile::parse(&first).unwrap(), FullProfile::parse(&second).unwrap());
                assert_eq!(count_of(&p), count_of(&q));
                assert_ne!(dictator(2).get(&p).unwrap(), dictator(2).get(&q).unwrap());
            }
            other => panic!("expected NotAnonymous, got {other:?}"),
        }
    }

    #[test]
    fn count_level_examples() {
        assert!(check_strategy_proof(&majority(3)).is_ok());
        let broken = broken_majority();
        let c = check_strategy_proof(&broken).unwrap_err();
        assert_eq!(c.profile, CountProfile::new(2, 1, 3).unwrap());
        assert_eq!(c.voter, Preference::PrefA);
        assert_eq!(c.misreport, Preference::Indifferent);
        assert_eq!(c.deviated_profile(), CountProfile::new(1, 1, 3).unwrap());
        replay(&broken, &c);
    }

    #[test]
    fn full_level_examples() {
        assert_eq!(check_strategy_proof_full(&dictator(2), DEFAULT_FULL_LIMIT).unwrap(), Ok(()));
        assert_eq!(check_strategy_proof_full(&expand(&majority(3)), DEFAULT_FULL_LIMIT).unwrap(), Ok(()));
        let broken = expand(&broken_majority());
        let c = check_strategy_proof_full(&broken, DEFAULT_FULL_LIMIT).unwrap().unwrap_err();
        assert_eq!(broken.get(&c.profile).unwrap(), c.truthful);
        let q = c.profile.with_voter(c.voter, c.misreport);
        assert_eq!(broken.get(&q).unwrap(), c.manipulated);
        assert_eq!(c.profile.voters()[c.voter].favourite(), Some(c.manipulated));
    }

    #[test]
    fn full_check_respects_limit() {
        let t = FullTable::from_fn(4, |_| B).unwrap();
        assert!(matches!(check_strategy_proof_full(&t, 3), Err(Error::SearchTooLarge { .. })));
    }

    #[test]
    fn onto_and_equality() {
        assert!(!is_onto(&CountTable::constant(3, B).unwrap()));
        assert!(is_onto(&majority(3)));
        assert!(tables_equal(&majority(3), &majority(3)).unwrap());
        assert!(!tables_equal(&majority(3), &broken_majority()).unwrap());
        assert!(tables_equal(&majority(3), &majority(4)).is_err());
    }

    #[test]
    fn exhaustive_family_small_sizes() {
        assert_eq!(exhaustive_sp_family(1).unwrap().len(), 4);
        assert_eq!(exhaustive_sp_family(2).unwrap().len(), 8);
        assert_eq!(exhaustive_sp_family(3).unwrap().len(), 16);
        assert!(matches!(exhaustive_sp_family(6), Err(Error::SearchTooLarge { .. })));
        assert_eq!(exhaustive_sp_family(0), Err(Error::EmptySociety));
    }

    /// Every anonymous table for n <= 3: count-level and full-level
    /// verdicts agree, and every count-level counterexample replays.
    #[test]
    fn count_and_full_checks_agree_on_all_small_tables() {
        for n in 1..=3 {
            let cells = count_profile_total(n);
            for mask in 0u64..1 << cells {
                let t = CountTable::from_fn(n, |p| if mask >> p.index() & 1 == 1 { A } else { B })
                    .unwrap();
                let count_level = check_strategy_proof(&t);
                if let Err(c) = &count_level {
                    replay(&t, c);
                }
                let full_level = check_strategy_proof_full(&expand(&t), DEFAULT_FULL_LIMIT).unwrap();
                assert_eq!(count_level.is_ok(), full_level.is_ok(), "n={n} table {}", t.signature());
            }
        }
        assert_eq!(all_count_profiles(3).unwrap().len(), 10);
    }
}
