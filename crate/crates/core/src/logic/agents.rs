use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Upper bound on the roster size. Frames store one relation per group, so
/// memory grows as `2^n`.
pub const MAX_AGENTS: usize = 12;

/// A group of agents, packed as a bit set over roster indices.
///
/// The empty group is an ordinary value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AgentSet(u32);

impl AgentSet {
    pub const EMPTY: AgentSet = AgentSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        AgentSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// Index of this group in a dense `2^n` table.
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_AGENTS);
        AgentSet(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(agent: usize) -> Self {
        debug_assert!(agent < MAX_AGENTS);
        AgentSet(1 << agent)
    }

    pub fn from_agents<I: IntoIterator<Item = usize>>(agents: I) -> Self {
        agents
            .into_iter()
            .fold(AgentSet::EMPTY, |acc, a| acc.with(a))
    }

    pub fn contains(self, agent: usize) -> bool {
        agent < 32 && self.0 & (1 << agent) != 0
    }

    #[must_use]
    pub fn with(self, agent: usize) -> Self {
        AgentSet(self.0 | (1 << agent))
    }

    #[must_use]
    pub fn without(self, agent: usize) -> Self {
        AgentSet(self.0 & !(1 << agent))
    }

    #[must_use]
    pub fn union(self, other: Self) -> Self {
        AgentSet(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: Self) -> Self {
        AgentSet(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: Self) -> Self {
        AgentSet(self.0 & !other.0)
    }

    /// `A \ self` for a roster of `n` agents.
    #[must_use]
    pub fn complement(self, n: usize) -> Self {
        AgentSet::full(n).difference(self)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_strict_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Member agents in ascending index order.
    pub fn iter(self) -> impl Iterator<Item = usize> + Clone {
        let bits = self.0;
        (0..32usize).filter(move |a| bits & (1 << a) != 0)
    }

    /// Every subset of `self`, in ascending bit order (starting with the
    /// empty group, ending with `self`).
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// All `2^n` groups over a roster of `n` agents, in ascending bit order.
    pub fn all(n: usize) -> impl Iterator<Item = AgentSet> {
        (0..(1u32 << n)).map(AgentSet)
    }

    /// Position of `agent` within this group's ascending member list.
    pub fn rank_of(self, agent: usize) -> Option<usize> {
        if !self.contains(agent) {
            return None;
        }
        Some((self.0 & ((1 << agent) - 1)).count_ones() as usize)
    }
}

impl fmt::Debug for AgentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterator over the subsets of a bit mask.
#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = AgentSet;

    fn next(&mut self) -> Option<AgentSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(AgentSet(cur))
    }
}

/// One member of a roster.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Agent<'a> {
    pub index: usize,
    pub name: &'a str,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RosterError {
    #[error("duplicate agent name `{0}`")]
    Duplicate(String),
    #[error("invalid agent name `{0}`")]
    InvalidName(String),
    #[error("at most {MAX_AGENTS} agents are supported, got {0}")]
    TooMany(usize),
}

/// The finite, ordered set of agents a model talks about.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Roster {
    names: Vec<String>,
}

impl Roster {
    pub fn new<I, S>(names: I) -> Result<Self, RosterError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_AGENTS {
            return Err(RosterError::TooMany(names.len()));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_agent_name(n) {
                return Err(RosterError::InvalidName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(RosterError::Duplicate(n.clone()));
            }
        }
        Ok(Roster { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn agent(&self, index: usize) -> Option<Agent<'_>> {
        self.names.get(index).map(|name| Agent { index, name })
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn full(&self) -> AgentSet {
        AgentSet::full(self.len())
    }

    pub fn groups(&self) -> impl Iterator<Item = AgentSet> {
        AgentSet::all(self.len())
    }

    /// Number of groups, `2^n`.
    pub fn group_count(&self) -> usize {
        1 << self.len()
    }

    /// Resolves a list of display names into a group. Order and duplicates
    /// are irrelevant.
    pub fn group<'a, I>(&self, names: I) -> Result<AgentSet, &'a str>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut set = AgentSet::EMPTY;
        for n in names {
            set = set.with(self.index_of(n).ok_or(n)?);
        }
        Ok(set)
    }

    /// Renders a group as `{a,b}`.
    pub fn fmt_group(&self, group: AgentSet) -> String {
        let mut out = String::from("{");
        for (i, a) in group.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            match self.names.get(a) {
                Some(n) => out.push_str(n),
                None => out.push('?'),
            }
        }
        out.push('}');
        out
    }
}

pub(crate) fn is_agent_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn subsets_enumerates_powerset() {
        let s = AgentSet::from_agents([0, 2, 3]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert_eq!(subs[0], AgentSet::EMPTY);
        assert_eq!(*subs.last().unwrap(), s);
        assert!(subs.iter().all(|u| u.is_subset(s)));
        assert_eq!(AgentSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn complement_and_rank() {
        let s = AgentSet::from_agents([1]);
        assert_eq!(s.complement(3), AgentSet::from_agents([0, 2]));
        let g = AgentSet::from_agents([0, 2, 3]);
        assert_eq!(g.rank_of(2), Some(1));
        assert_eq!(g.rank_of(1), None);
    }

    #[test]
    fn roster_rejects_duplicates() {
        assert_eq!(
            Roster::new(vec!["a", "b", "a"]),
            Err(RosterError::Duplicate("a".into()))
        );
        let r = Roster::new(vec!["a", "b", "c"]).unwrap();
        assert_eq!(r.fmt_group(AgentSet::from_agents([0, 2])), "{a,c}");
        assert_eq!(r.fmt_group(AgentSet::EMPTY), "{}");
        assert_eq!(r.group(["c", "a", "c"]), Ok(AgentSet::from_agents([0, 2])));
    }
}
