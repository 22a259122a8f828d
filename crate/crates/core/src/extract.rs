//! Recovering a quota representation from a strategy-proof table.
//!
//! The table is peeled layer by layer. Each layer is a pair `(ℓ, k)`: the
//! smallest number of indifferent voters at which the table still departs
//! from its default on an uncovered profile, and the quota read off the
//! strict profiles of the remaining `n - ℓ` voters. A pair covers the
//! profiles it decides; the first covering pair decides, and uncovered
//! profiles take the default. Interleaving `ℓ + k` with `k` turns the pairs
//! into an ordinary quota sequence, which the canonicalizer then reduces.

use std::fmt;

use crate::canon::canonicalize;
use crate::engine::{is_proper, to_table};
use crate::error::{Error, Result};
use crate::oracle::check_strategy_proof;
use crate::types::{Alternative, CountProfile, CountTable, QuotaSeq};

/// One layer: `ell` indifferent voters and quota `k` on the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LkPair {
    pub ell: u32,
    pub k: u32,
}

impl LkPair {
    /// Dual quota `m = n - ℓ - k + 1` on the remaining voters.
    pub fn m(&self, n: u32) -> u32 {
        n - self.ell - self.k + 1
    }

    fn validate(&self, n: u32) -> Result<()> {
        if self.ell >= n || self.k == 0 || self.k > n - self.ell {
            return Err(Error::InvalidLkSequence(format!(
                "pair (l={}, k={}) needs 0 <= l < {n} and 1 <= k <= n - l",
                self.ell, self.k
            )));
        }
        Ok(())
    }
}

fn check_pair(pair: LkPair, p: CountProfile) -> Result<()> {
    pair.validate(p.n())
}

/// At least `k` prefer `a` and fewer than `m` prefer `b`.
pub fn covered_a(pair: LkPair, p: CountProfile) -> Result<bool> {
    check_pair(pair, p)?;
    Ok(p.n_a() >= pair.k && p.n_b() < pair.m(p.n()))
}

/// Fewer than `k` prefer `a` and at least `m` prefer `b`.
pub fn covered_b(pair: LkPair, p: CountProfile) -> Result<bool> {
    check_pair(pair, p)?;
    Ok(p.n_a() < pair.k && p.n_b() >= pair.m(p.n()))
}

/// A default alternative with an ordered list of layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LkSequence {
    n: u32,
    default: Alternative,
    pairs: Vec<LkPair>,
}

impl LkSequence {
    /// Checks the numeric range of each pair and that `ℓ` starts at 0 and
    /// strictly increases. Monotonicity of `k` is reported separately by
    /// [`LkSequence::check_monotone`].
    pub fn new(n: u32, default: Alternative, pairs: Vec<LkPair>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySociety);
        }
        for pair in &pairs {
            pair.validate(n)?;
        }
        if let Some(first) = pairs.first() {
            if first.ell != 0 {
                return Err(Error::InvalidLkSequence(format!("l_0 = {} must be 0", first.ell)));
            }
        }
        if let Some(w) = pairs.windows(2).find(|w| w[1].ell <= w[0].ell) {
            return Err(Error::InvalidLkSequence(format!(
                "l must strictly increase, found {} then {}",
                w[0].ell, w[1].ell
            )));
        }
        Ok(Self { n, default, pairs })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn default(&self) -> Alternative {
        self.default
    }

    pub fn pairs(&self) -> &[LkPair] {
        &self.pairs
    }

    /// The monotonicity produced by extraction: for default `b`, `k`
    /// strictly decreasing and `ℓ + k` non-decreasing; for default `a`,
    /// `k` non-increasing and `ℓ + k` strictly increasing.
    pub fn check_monotone(&self) -> Result<()> {
        for w in self.pairs.windows(2) {
            let (p, q) = (w[0], w[1]);
            let ok = match self.default {
                Alternative::B => q.k < p.k && q.ell + q.k >= p.ell + p.k,
                Alternative::A => q.k <= p.k && q.ell + q.k > p.ell + p.k,
            };
            if !ok {
                return Err(Error::InvalidLkSequence(format!(
                    "pairs ({},{}) then ({},{}) break the monotonicity required for default {}",
                    p.ell, p.k, q.ell, q.k, self.default
                )));
            }
        }
        Ok(())
    }

    /// The same rule with `a` and `b` exchanged: each `k` becomes `m`.
    pub fn dual(&self) -> Self {
        let pairs = self.pairs.iter().map(|p| LkPair { ell: p.ell, k: p.m(self.n) }).collect();
        Self { n: self.n, default: self.default.swap(), pairs }
    }
}

impl fmt::Display for LkSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x={}; (l,k)=", self.default)?;
        let parts: Vec<String> = self.pairs.iter().map(|p| format!("({},{})", p.ell, p.k)).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn layer_outcome(pair: LkPair, p: CountProfile) -> Option<Alternative> {
    let m = pair.m(p.n());
    if p.n_a() >= pair.k && p.n_b() < m {
        Some(Alternative::A)
    } else if p.n_a() < pair.k && p.n_b() >= m {
        Some(Alternative::B)
    } else {
        None
    }
}

fn psi_at(s: &LkSequence, p: CountProfile) -> Alternative {
    s.pairs.iter().find_map(|&pair| layer_outcome(pair, p)).unwrap_or(s.default)
}

/// Outcome of the first covering layer, or the default when none covers.
pub fn psi_eval(s: &LkSequence, p: CountProfile) -> Result<Alternative> {
    if p.n() != s.n {
        return Err(Error::SocietyMismatch { expected: s.n, found: p.n() });
    }
    Ok(psi_at(s, p))
}

pub fn psi_table(s: &LkSequence) -> CountTable {
    CountTable::from_fn(s.n, |p| psi_at(s, p)).expect("n >= 1")
}

/// The quota sequence `(ℓ_0+k_0, k_0, ℓ_1+k_1, k_1, ..., n+1)` for default
/// `b`, or `(k_0, ℓ_0+k_0, k_1, ℓ_1+k_1, ..., 0)` for default `a`.
///
/// Requires `k` non-increasing and `ℓ + k` non-decreasing.
pub fn interleave(s: &LkSequence) -> Result<QuotaSeq> {
    if let Some(w) = s.pairs.windows(2).find(|w| w[1].k > w[0].k || w[1].ell + w[1].k < w[0].ell + w[0].k) {
        return Err(Error::InterleaveHypothesis(format!(
            "need k non-increasing and l+k non-decreasing, found ({},{}) then ({},{})",
            w[0].ell, w[0].k, w[1].ell, w[1].k
        )));
    }
    let n = s.n;
    let mut quotas = Vec::with_capacity(2 * s.pairs.len() + 1);
    for p in &s.pairs {
        match s.default {
            Alternative::B => quotas.extend([p.ell + p.k, p.k]),
            Alternative::A => quotas.extend([p.k, p.ell + p.k]),
        }
    }
    quotas.push(match s.default {
        Alternative::B => n + 1,
        Alternative::A => 0,
    });
    Ok(QuotaSeq::new(n, quotas).expect("quotas within [0, n+1] and terminal appended"))
}

/// Least number of `a`-supporters giving `a` among strict profiles of the
/// `n - ell` non-indifferent voters; the row must switch from `b` to `a`
/// exactly once.
fn row_quota(f: &CountTable, ell: u32) -> Result<u32> {
    let voters = f.n() - ell;
    let row: Vec<Alternative> = (0..=voters).map(|j| f.at(j, voters - j)).collect();
    let k = row.iter().position(|&o| o == Alternative::A).unwrap_or(row.len()) as u32;
    if row[k as usize..].iter().any(|&o| o != Alternative::A) {
        return Err(Error::NonMonotoneRow { indifferent: ell });
    }
    Ok(k)
}

/// Extraction for a table whose all-indifferent outcome is `b`.
fn extract_default_b(f: &CountTable) -> Result<LkSequence> {
    let n = f.n();
    let mut pairs: Vec<LkPair> = Vec::new();
    let mut covered = vec![false; f.outcomes().len()];
    loop {
        // Uncovered profiles departing from the default, fewest indifferent first.
        let next_ell = f
            .iter()
            .filter(|&(p, o)| !covered[p.index()] && o != Alternative::B)
            .map(|(p, _)| p.indifferent())
            .min();
        let Some(ell) = next_ell else { break };
        if let Some(prev) = pairs.last() {
            if ell <= prev.ell {
                return Err(Error::InvalidLkSequence(format!(
                    "indifference level {ell} does not exceed the previous level {}",
                    prev.ell
                )));
            }
        }
        let k = row_quota(f, ell)?;
        let pair = LkPair { ell, k };
        pair.validate(n)?;
        for (p, _) in f.iter() {
            if layer_outcome(pair, p).is_some() {
                covered[p.index()] = true;
            }
        }
        pairs.push(pair);
    }
    LkSequence::new(n, Alternative::B, pairs)
}

fn swapped_table(f: &CountTable) -> CountTable {
    CountTable::from_fn(f.n(), |p| f.at(p.n_b(), p.n_a()).swap()).expect("n >= 1")
}

/// The layered representation of a strategy-proof table.
///
/// Default-`a` tables are handled by extracting from the `a`/`b`-swapped
/// table and dualising the result.
pub fn extract(f: &CountTable) -> Result<LkSequence> {
    check_strategy_proof(f).map_err(Error::NotStrategyProof)?;
    let default = f.at(0, 0);
    let s = match default {
        Alternative::B => extract_default_b(f)?,
        Alternative::A => extract_default_b(&swapped_table(f))?.dual(),
    };
    s.check_monotone()?;
    let psi = psi_table(&s);
    if let Some((p, _)) = f.iter().find(|&(p, o)| psi.outcomes()[p.index()] != o) {
        return Err(Error::ExtractionMismatch(p.to_string()));
    }
    Ok(s)
}

/// The unique proper sequence of a strategy-proof table.
pub fn represent(f: &CountTable) -> Result<QuotaSeq> {
    let s = extract(f)?;
    let raw = interleave(&s)?;
    let k = canonicalize(raw.quotas(), f.n())?;
    debug_assert!(is_proper(&k));
    debug_assert_eq!(to_table(&k), *f);
    Ok(k)
}

/// [`represent`] together with the intermediate layers and interleaving.
pub fn represent_with_trace(f: &CountTable) -> Result<(QuotaSeq, LkSequence, QuotaSeq)> {
    let s = extract(f)?;
    let raw = interleave(&s)?;
    let k = canonicalize(raw.quotas(), f.n())?;
    Ok((k, s, raw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::dual;
    use crate::types::all_count_profiles;
    use Alternative::{A, B};

    fn pairs(v: &[(u32, u32)]) -> Vec<LkPair> {
        v.iter().map(|&(ell, k)| LkPair { ell, k }).collect()
    }

    fn prof(n_a: u32, n_b: u32, n: u32) -> CountProfile {
        CountProfile::new(n_a, n_b, n).unwrap()
    }

    fn example_table() -> CountTable {
        CountTable::from_fn(11, |p| {
            let (a, b) = (p.n_a(), p.n_b());
            if a >= 5 || ((2..5).contains(&a) && b < 7) {
                A
            } else {
                B
            }
        })
        .unwrap()
    }

    fn majority3() -> CountTable {
        CountTable::from_fn(3, |p| if p.n_a() > p.n_b() { A } else { B }).unwrap()
    }

    fn example_layers() -> LkSequence {
        LkSequence::new(11, B, pairs(&[(0, 5), (1, 4), (2, 3), (3, 2)])).unwrap()
    }

    #[test]
    fn coverage_examples() {
        let p0 = LkPair { ell: 0, k: 5 };
        assert!(covered_a(p0, prof(6, 5, 11)).unwrap());
        assert!(!covered_b(p0, prof(6, 5, 11)).unwrap());
        let p1 = LkPair { ell: 1, k: 4 };
        assert!(covered_b(p1, prof(3, 7, 11)).unwrap());
        assert!(!covered_a(p1, prof(3, 7, 11)).unwrap());
        assert!(!covered_a(p0, prof(4, 6, 11)).unwrap());
        assert!(!covered_b(p0, prof(4, 6, 11)).unwrap());
        assert!(covered_a(LkPair { ell: 11, k: 1 }, prof(0, 0, 11)).is_err());
        assert!(covered_a(LkPair { ell: 3, k: 9 }, prof(0, 0, 11)).is_err());
        assert!(covered_b(LkPair { ell: 0, k: 0 }, prof(0, 0, 11)).is_err());
    }

    #[test]
    fn coverage_is_disjoint() {
        for n in 1..=9 {
            for ell in 0..n {
                for k in 1..=n - ell {
                    let pair = LkPair { ell, k };
                    for p in all_count_profiles(n).unwrap() {
                        assert!(!(covered_a(pair, p).unwrap() && covered_b(pair, p).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn psi_examples() {
        let s = example_layers();
        assert_eq!(psi_eval(&s, prof(3, 6, 11)).unwrap(), A);
        assert_eq!(psi_eval(&s, prof(1, 5, 11)).unwrap(), B);
        assert_eq!(psi_eval(&s, prof(0, 7, 11)).unwrap(), B);
        assert_eq!(psi_table(&s), example_table());
        assert!(psi_eval(&s, prof(0, 0, 3)).is_err());
    }

    #[test]
    fn lk_sequence_validation() {
        assert!(LkSequence::new(11, B, pairs(&[(1, 4)])).is_err());
        assert!(LkSequence::new(11, B, pairs(&[(0, 5), (0, 4)])).is_err());
        assert!(LkSequence::new(11, B, pairs(&[(0, 12)])).is_err());
        assert!(LkSequence::new(11, B, vec![]).is_ok());
        let non_monotone = LkSequence::new(11, B, pairs(&[(0, 5), (1, 6)])).unwrap();
        assert!(non_monotone.check_monotone().is_err());
        assert!(example_layers().check_monotone().is_ok());
    }

    #[test]
    fn interleave_examples() {
        let raw = interleave(&example_layers()).unwrap();
        assert_eq!(raw.quotas(), &[5, 5, 5, 4, 5, 3, 5, 2, 12]);
        let maj = LkSequence::new(3, B, pairs(&[(0, 2), (2, 1)])).unwrap();
        let raw = interleave(&maj).unwrap();
        assert_eq!(raw.quotas(), &[2, 2, 3, 1, 4]);
        assert_eq!(to_table(&raw), majority3());
        let single = LkSequence::new(7, B, pairs(&[(0, 3)])).unwrap();
        assert_eq!(interleave(&single).unwrap().quotas(), &[3, 3, 8]);
        let constant = LkSequence::new(7, A, vec![]).unwrap();
        assert_eq!(interleave(&constant).unwrap().quotas(), &[0]);
    }

    #[test]
    fn interleave_rejects_broken_hypothesis() {
        let rising = LkSequence::new(11, B, pairs(&[(0, 5), (1, 6)])).unwrap();
        assert!(matches!(interleave(&rising), Err(Error::InterleaveHypothesis(_))));
        let falling_sum = LkSequence::new(11, B, pairs(&[(0, 5), (1, 2)])).unwrap();
        assert!(matches!(interleave(&falling_sum), Err(Error::InterleaveHypothesis(_))));
    }

    #[test]
    fn extract_examples() {
        let s = extract(&example_table()).unwrap();
        assert_eq!(s, example_layers());
        let s = extract(&majority3()).unwrap();
        assert_eq!(s.default(), B);
        assert_eq!(s.pairs(), pairs(&[(0, 2), (2, 1)]).as_slice());
        let s = extract(&CountTable::constant(5, A).unwrap()).unwrap();
        assert_eq!(s.default(), A);
        assert!(s.pairs().is_empty());
    }

    #[test]
    fn extract_rejects_manipulable_tables() {
        let mut o = majority3().outcomes().to_vec();
        o[prof(1, 1, 3).index()] = A;
        o[prof(2, 1, 3).index()] = B;
        let broken = CountTable::new(3, o).unwrap();
        match extract(&broken) {
            Err(Error::NotStrategyProof(c)) => assert_eq!(c.profile, prof(2, 1, 3)),
            other => panic!("expected NotStrategyProof, got {other:?}"),
        }
    }

    #[test]
    fn represent_examples() {
        assert_eq!(represent(&example_table()).unwrap().quotas(), &[5, 2, 12]);
        assert_eq!(represent(&majority3()).unwrap().quotas(), &[2, 3, 1, 4]);
        assert_eq!(represent(&CountTable::constant(11, B).unwrap()).unwrap().quotas(), &[12]);
        assert_eq!(represent(&CountTable::constant(11, A).unwrap()).unwrap().quotas(), &[0]);
    }

    #[test]
    fn default_a_extraction_matches_dual() {
        let k = QuotaSeq::new(11, vec![7, 10, 0]).unwrap();
        let s = extract(&to_table(&k)).unwrap();
        assert_eq!(s.default(), A);
        assert_eq!(psi_table(&s), to_table(&k));
        assert_eq!(represent(&to_table(&k)).unwrap(), k);
        let base = QuotaSeq::new(11, vec![5, 2, 12]).unwrap();
        assert_eq!(dual(&base), k);
    }
}
