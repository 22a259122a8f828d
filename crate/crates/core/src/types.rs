//! Domain types shared by every module: voter declarations, anonymous
//! count profiles, quota sequences and the extensional tables of social
//! choice functions.

use std::fmt;

use crate::error::{Error, Result};

/// The two alternatives of a binary choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alternative {
    A,
    B,
}

impl Alternative {
    /// The other alternative.
    pub fn swap(self) -> Self {
        match self {
            Alternative::A => Alternative::B,
            Alternative::B => Alternative::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Alternative::A => 'a',
            Alternative::B => 'b',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'a' | 'A' => Some(Alternative::A),
            'b' | 'B' => Some(Alternative::B),
            _ => None,
        }
    }
}

impl fmt::Display for Alternative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A single voter's declaration over the two alternatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Preference {
    PrefA,
    PrefB,
    Indifferent,
}

impl Preference {
    pub const ALL: [Preference; 3] = [Preference::PrefA, Preference::PrefB, Preference::Indifferent];

    pub fn as_char(self) -> char {
        match self {
            Preference::PrefA => 'a',
            Preference::PrefB => 'b',
            Preference::Indifferent => 'i',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'a' => Some(Preference::PrefA),
            'b' => Some(Preference::PrefB),
            'i' => Some(Preference::Indifferent),
            _ => None,
        }
    }

    /// The alternative this voter strictly prefers, if any.
    pub fn favourite(self) -> Option<Alternative> {
        match self {
            Preference::PrefA => Some(Alternative::A),
            Preference::PrefB => Some(Alternative::B),
            Preference::Indifferent => None,
        }
    }

    fn digit(self) -> usize {
        match self {
            Preference::PrefA => 0,
            Preference::PrefB => 1,
            Preference::Indifferent => 2,
        }
    }
}

impl fmt::Display for Preference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A profile listing every voter's declaration in voter order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FullProfile {
    voters: Vec<Preference>,
}

impl FullProfile {
    pub fn new(voters: Vec<Preference>) -> Result<Self> {
        if voters.is_empty() {
            return Err(Error::EmptySociety);
        }
        Ok(Self { voters })
    }

    /// Parses a string over the alphabet `{a, b, i}`.
    pub fn parse(s: &str) -> Option<Self> {
        let voters = s.chars().map(Preference::from_char).collect::<Option<Vec<_>>>()?;
        Self::new(voters).ok()
    }

    pub fn n(&self) -> u32 {
        self.voters.len() as u32
    }

    pub fn voters(&self) -> &[Preference] {
        &self.voters
    }

    /// Returns a copy with voter `v` replaced by `pref`.
    pub fn with_voter(&self, v: usize, pref: Preference) -> Self {
        let mut voters = self.voters.clone();
        voters[v] = pref;
        Self { voters }
    }

    /// Position of this profile in the base-3 enumeration used by
    /// [`FullTable`] (voter 0 is the most significant digit, `a < b < i`).
    pub fn rank(&self) -> usize {
        self.voters.iter().fold(0, |acc, p| acc * 3 + p.digit())
    }

    fn unrank(n: u32, mut rank: usize) -> Self {
        let mut voters = vec![Preference::PrefA; n as usize];
        for slot in voters.iter_mut().rev() {
            *slot = Preference::ALL[rank % 3];
            rank /= 3;
        }
        Self { voters }
    }
}

impl fmt::Display for FullProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.voters {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Anonymous summary of a profile: how many voters prefer `a`, how many
/// prefer `b`, out of a society of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CountProfile {
    n_a: u32,
    n_b: u32,
    n: u32,
}

impl CountProfile {
    pub fn new(n_a: u32, n_b: u32, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySociety);
        }
        if n_a.checked_add(n_b).is_none_or(|s| s > n) {
            return Err(Error::InvalidProfile { n_a, n_b, n });
        }
        Ok(Self { n_a, n_b, n })
    }

    pub fn n_a(&self) -> u32 {
        self.n_a
    }

    pub fn n_b(&self) -> u32 {
        self.n_b
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn indifferent(&self) -> u32 {
        self.n - self.n_a - self.n_b
    }

    pub fn is_strict(&self) -> bool {
        self.indifferent() == 0
    }

    /// The profile with the roles of `a` and `b` exchanged.
    pub fn swapped(&self) -> Self {
        Self { n_a: self.n_b, n_b: self.n_a, n: self.n }
    }

    /// Position in the lexicographic `(n_a, n_b)` order of
    /// [`all_count_profiles`].
    pub fn index(&self) -> usize {
        profile_index_of(self.n, self.n_a, self.n_b)
    }
}

impl fmt::Display for CountProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n_a, self.n_b)
    }
}

pub(crate) fn profile_index_of(n: u32, n_a: u32, n_b: u32) -> usize {
    let (n, a, b) = (n as usize, n_a as usize, n_b as usize);
    a * (n + 1) - a * a.saturating_sub(1) / 2 + b
}

/// Number of count profiles for a society of `n`: `(n+1)(n+2)/2`.
pub fn count_profile_total(n: u32) -> usize {
    let n = n as usize;
    (n + 1) * (n + 2) / 2
}

pub fn count_of(profile: &FullProfile) -> CountProfile {
    let (mut n_a, mut n_b) = (0, 0);
    for p in profile.voters() {
        match p {
            Preference::PrefA => n_a += 1,
            Preference::PrefB => n_b += 1,
            Preference::Indifferent => {}
        }
    }
    CountProfile { n_a, n_b, n: profile.n() }
}

/// Every count profile of a society of `n`, ordered lexicographically by
/// `(n_a, n_b)`.
pub fn all_count_profiles(n: u32) -> Result<Vec<CountProfile>> {
    if n == 0 {
        return Err(Error::EmptySociety);
    }
    Ok((0..=n)
        .flat_map(|n_a| (0..=n - n_a).map(move |n_b| CountProfile { n_a, n_b, n }))
        .collect())
}

/// A defining sequence of quotas `(k_0, ..., k_r)` over `{0, ..., n+1}`.
///
/// Construction guarantees that every quota is in range and that at least
/// one of them is `0` or `n+1`, so the profile index is always defined.
/// Duplicates and non-terminal tails are allowed here; see
/// [`QuotaSeq::is_valid_tuple`] for the stricter form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotaSeq {
    n: u32,
    quotas: Vec<u32>,
}

impl QuotaSeq {
    pub fn new(n: u32, quotas: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySociety);
        }
        if quotas.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(&value) = quotas.iter().find(|&&q| q > n + 1) {
            return Err(Error::QuotaOutOfRange { value, n });
        }
        if !quotas.iter().any(|&q| q == 0 || q == n + 1) {
            return Err(Error::NoTerminal { n });
        }
        Ok(Self { n, quotas })
    }

    /// The constant rule: `(0)` for `a`, `(n+1)` for `b`.
    pub fn constant(n: u32, outcome: Alternative) -> Result<Self> {
        let q = match outcome {
            Alternative::A => 0,
            Alternative::B => n + 1,
        };
        Self::new(n, vec![q])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn quotas(&self) -> &[u32] {
        &self.quotas
    }

    pub fn is_terminal(&self, q: u32) -> bool {
        q == 0 || q == self.n + 1
    }

    /// Distinct quotas, only the last one in `{0, n+1}`.
    pub fn is_valid_tuple(&self) -> bool {
        let (last, body) = self.quotas.split_last().expect("non-empty by construction");
        if !self.is_terminal(*last) || body.iter().any(|&q| self.is_terminal(q)) {
            return false;
        }
        let mut seen = body.to_vec();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

impl fmt::Display for QuotaSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.quotas.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Truth table of an anonymous social choice function, indexed by count
/// profile in the order of [`all_count_profiles`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CountTable {
    n: u32,
    outcomes: Vec<Alternative>,
}

impl CountTable {
    pub fn new(n: u32, outcomes: Vec<Alternative>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySociety);
        }
        let expected = count_profile_total(n);
        if outcomes.len() != expected {
            return Err(Error::TableSize { expected, found: outcomes.len() });
        }
        Ok(Self { n, outcomes })
    }

    pub fn from_fn(n: u32, mut f: impl FnMut(CountProfile) -> Alternative) -> Result<Self> {
        let outcomes = all_count_profiles(n)?.into_iter().map(&mut f).collect();
        Ok(Self { n, outcomes })
    }

    pub fn constant(n: u32, outcome: Alternative) -> Result<Self> {
        Self::from_fn(n, |_| outcome)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn outcomes(&self) -> &[Alternative] {
        &self.outcomes
    }

    pub fn get(&self, p: CountProfile) -> Result<Alternative> {
        if p.n != self.n {
            return Err(Error::SocietyMismatch { expected: self.n, found: p.n });
        }
        Ok(self.outcomes[p.index()])
    }

    /// Outcome at `(n_a, n_b)`; panics if the pair is not a profile.
    pub fn at(&self, n_a: u32, n_b: u32) -> Alternative {
        assert!(n_a + n_b <= self.n, "({n_a},{n_b}) is not a profile for n={}", self.n);
        self.outcomes[profile_index_of(self.n, n_a, n_b)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (CountProfile, Alternative)> + '_ {
        let n = self.n;
        (0..=n)
            .flat_map(move |n_a| (0..=n - n_a).map(move |n_b| CountProfile { n_a, n_b, n }))
            .zip(self.outcomes.iter().copied())
    }

    /// Outcomes as a string over `{a, b}` in profile order.
    pub fn signature(&self) -> String {
        self.outcomes.iter().map(|o| o.as_char()).collect()
    }
}

/// Truth table of a possibly non-anonymous social choice function over all
/// `3^n` full profiles, in [`FullProfile::rank`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullTable {
    n: u32,
    outcomes: Vec<Alternative>,
}

impl FullTable {
    pub fn new(n: u32, outcomes: Vec<Alternative>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySociety);
        }
        let expected = 3usize.pow(n);
        if outcomes.len() != expected {
            return Err(Error::TableSize { expected, found: outcomes.len() });
        }
        Ok(Self { n, outcomes })
    }

    pub fn from_fn(n: u32, mut f: impl FnMut(&FullProfile) -> Alternative) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySociety);
        }
        let outcomes = all_full_profiles(n).map(|p| f(&p)).collect();
        Ok(Self { n, outcomes })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn outcomes(&self) -> &[Alternative] {
        &self.outcomes
    }

    pub fn get(&self, p: &FullProfile) -> Result<Alternative> {
        if p.n() != self.n {
            return Err(Error::SocietyMismatch { expected: self.n, found: p.n() });
        }
        Ok(self.outcomes[p.rank()])
    }

    pub fn iter(&self) -> impl Iterator<Item = (FullProfile, Alternative)> + '_ {
        all_full_profiles(self.n).zip(self.outcomes.iter().copied())
    }
}

/// All `3^n` full profiles in rank order.
pub fn all_full_profiles(n: u32) -> impl Iterator<Item = FullProfile> {
    (0..3usize.pow(n)).map(move |r| FullProfile::unrank(n, r))
}
