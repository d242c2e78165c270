use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::logic::{AgentSet, Roster};
use crate::witness::{Verdict, WitnessItem};

/// A simplex, addressed by its group (colour set) and position in that
/// group's level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    pub group: AgentSet,
    pub index: usize,
}

impl Simplex {
    /// `|U| - 1`; the empty group gives the `(-1)`-simplices.
    pub fn dimension(self) -> isize {
        self.group.len() as isize - 1
    }
}

/// Simplex data as read from input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawSimplex {
    pub id: String,
    pub group: AgentSet,
    /// Face opposite each agent of `group`, by simplex id.
    pub faces: BTreeMap<usize, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RawCset {
    pub roster: Roster,
    pub simplices: Vec<RawSimplex>,
}

/// Something wrong with cset data, with a simplex witness.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CsetViolation {
    DuplicateId { simplex: String },
    AgentOutOfRange { simplex: String },
    MissingFace { simplex: String, agent: usize },
    ExtraFace { simplex: String, agent: usize },
    UnknownFace { simplex: String, agent: usize, face: String },
    /// The named face does not live at level `group \ {agent}`.
    FaceLevel { simplex: String, agent: usize, face: String },
    /// `∂^a ∂^b s ≠ ∂^b ∂^a s`.
    Commutation { simplex: String, a: usize, b: usize },
}

impl CsetViolation {
    pub fn render(&self, roster: &Roster) -> String {
        let name = |a: &usize| {
            roster
                .agent(*a)
                .map(|x| String::from(x.name))
                .unwrap_or_else(|| format!("#{a}"))
        };
        match self {
            CsetViolation::DuplicateId { simplex } => format!("duplicate-simplex ({simplex})"),
            CsetViolation::AgentOutOfRange { simplex } => {
                format!("agent-out-of-range ({simplex})")
            }
            CsetViolation::MissingFace { simplex, agent } => {
                format!("missing-face ({simplex},{})", name(agent))
            }
            CsetViolation::ExtraFace { simplex, agent } => {
                format!("extra-face ({simplex},{})", name(agent))
            }
            CsetViolation::UnknownFace {
                simplex,
                agent,
                face,
            } => format!("unknown-face ({simplex},{},{face})", name(agent)),
            CsetViolation::FaceLevel {
                simplex,
                agent,
                face,
            } => format!("face-colour ({simplex},{},{face})", name(agent)),
            CsetViolation::Commutation { simplex, a, b } => {
                format!("face-commutation ({simplex},{},{})", name(a), name(b))
            }
        }
    }
}

/// One level `F(U)` of a cset.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Level {
    pub ids: Vec<String>,
    /// `faces[r][s]`: face of simplex `s` opposite the `r`-th member of the
    /// group (ascending), as an index into the level below.
    pub faces: Vec<Vec<usize>>,
}

/// A chromatic augmented semi-simplicial set: one level per group plus
/// codimension-1 face maps satisfying `∂^a ∂^b = ∂^b ∂^a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cset {
    roster: Roster,
    levels: Vec<Level>,
    lookup: BTreeMap<String, Simplex>,
}

/// Checks every simplex's face data and, when the data is well formed,
/// every commutation square. Empty iff the data describes a cset.
pub fn validate_cset(raw: &RawCset) -> Vec<CsetViolation> {
    let mut out = Vec::new();
    let full = raw.roster.full();
    let mut by_id: BTreeMap<&str, &RawSimplex> = BTreeMap::new();
    for s in &raw.simplices {
        if by_id.insert(&s.id, s).is_some() {
            out.push(CsetViolation::DuplicateId {
                simplex: s.id.clone(),
            });
        }
        if !s.group.is_subset(full) {
            out.push(CsetViolation::AgentOutOfRange {
                simplex: s.id.clone(),
            });
        }
    }
    for s in &raw.simplices {
        for a in s.group.iter() {
            match s.faces.get(&a) {
                None => out.push(CsetViolation::MissingFace {
                    simplex: s.id.clone(),
                    agent: a,
                }),
                Some(face) => match by_id.get(face.as_str()) {
                    None => out.push(CsetViolation::UnknownFace {
                        simplex: s.id.clone(),
                        agent: a,
                        face: face.clone(),
                    }),
                    Some(t) if t.group != s.group.without(a) => {
                        out.push(CsetViolation::FaceLevel {
                            simplex: s.id.clone(),
                            agent: a,
                            face: face.clone(),
                        })
                    }
                    Some(_) => {}
                },
            }
        }
        for &a in s.faces.keys() {
            if !s.group.contains(a) {
                out.push(CsetViolation::ExtraFace {
                    simplex: s.id.clone(),
                    agent: a,
                });
            }
        }
    }
    if out.is_empty() {
        let face = |s: &RawSimplex, a: usize| by_id[s.faces[&a].as_str()];
        for s in &raw.simplices {
            let members: Vec<usize> = s.group.iter().collect();
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    if face(face(s, b), a).id != face(face(s, a), b).id {
                        out.push(CsetViolation::Commutation {
                            simplex: s.id.clone(),
                            a,
                            b,
                        });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

impl Cset {
    pub fn from_raw(raw: &RawCset) -> Result<Self, Vec<CsetViolation>> {
        let violations = validate_cset(raw);
        if !violations.is_empty() {
            return Err(violations);
        }
        let mut levels: Vec<Level> = vec![Level::default(); raw.roster.group_count()];
        let mut lookup = BTreeMap::new();
        for s in &raw.simplices {
            let level = &mut levels[s.group.index()];
            lookup.insert(
                s.id.clone(),
                Simplex {
                    group: s.group,
                    index: level.ids.len(),
                },
            );
            level.ids.push(s.id.clone());
        }
        for (u, level) in levels.iter_mut().enumerate() {
            let group = AgentSet::from_bits(u as u32);
            level.faces = group
                .iter()
                .map(|a| {
                    level
                        .ids
                        .iter()
                        .map(|id| {
                            let raw_s = raw.simplices.iter().find(|s| &s.id == id).unwrap();
                            lookup[&raw_s.faces[&a]].index
                        })
                        .collect()
                })
                .collect();
        }
        Ok(Cset {
            roster: raw.roster.clone(),
            levels,
            lookup,
        })
    }

    /// Builds directly from levels; the caller guarantees the face data is
    /// well formed (checked in debug builds).
    pub(crate) fn from_levels(roster: Roster, levels: Vec<Level>) -> Self {
        let mut lookup = BTreeMap::new();
        for (u, level) in levels.iter().enumerate() {
            for (i, id) in level.ids.iter().enumerate() {
                lookup.insert(
                    id.clone(),
                    Simplex {
                        group: AgentSet::from_bits(u as u32),
                        index: i,
                    },
                );
            }
        }
        let cset = Cset {
            roster,
            levels,
            lookup,
        };
        debug_assert!(validate_cset(&cset.to_raw()).is_empty());
        cset
    }

    pub fn to_raw(&self) -> RawCset {
        let mut simplices = Vec::new();
        let mut groups: Vec<AgentSet> = self.roster.groups().collect();
        groups.sort_by_key(|g| (g.len(), g.bits()));
        for group in groups {
            let level = &self.levels[group.index()];
            for (i, id) in level.ids.iter().enumerate() {
                let faces = group
                    .iter()
                    .enumerate()
                    .map(|(r, a)| {
                        let below = &self.levels[group.without(a).index()];
                        (a, below.ids[level.faces[r][i]].clone())
                    })
                    .collect();
                simplices.push(RawSimplex {
                    id: id.clone(),
                    group,
                    faces,
                });
            }
        }
        RawCset {
            roster: self.roster.clone(),
            simplices,
        }
    }

    pub fn roster(&self) -> &Roster {
        &self.roster
    }

    pub fn level(&self, group: AgentSet) -> &Level {
        &self.levels[group.index()]
    }

    pub fn levels(&self) -> impl Iterator<Item = (AgentSet, &Level)> {
        self.roster.groups().map(move |g| (g, &self.levels[g.index()]))
    }

    pub fn simplices(&self) -> impl Iterator<Item = Simplex> + '_ {
        self.levels().flat_map(|(group, level)| {
            (0..level.ids.len()).map(move |index| Simplex { group, index })
        })
    }

    pub fn simplex_count(&self) -> usize {
        self.levels.iter().map(|l| l.ids.len()).sum()
    }

    pub fn id(&self, s: Simplex) -> &str {
        &self.levels[s.group.index()].ids[s.index]
    }

    pub fn find(&self, id: &str) -> Option<Simplex> {
        self.lookup.get(id).copied()
    }

    /// Codimension-1 face opposite `agent`.
    pub fn face(&self, s: Simplex, agent: usize) -> Simplex {
        let rank = s.group.rank_of(agent).expect("agent in simplex colour");
        Simplex {
            group: s.group.without(agent),
            index: self.levels[s.group.index()].faces[rank][s.index],
        }
    }

    /// `∂_{V,U}`: the `V`-face of a `U`-simplex, for `V ⊆ U`, obtained by
    /// removing the agents of `U \ V` in ascending order.
    pub fn face_to(&self, s: Simplex, target: AgentSet) -> Simplex {
        debug_assert!(target.is_subset(s.group));
        s.group
            .difference(target)
            .iter()
            .fold(s, |acc, a| self.face(acc, a))
    }

    /// Vertex of each colour, in ascending agent order.
    pub fn vertices(&self, s: Simplex) -> Vec<Simplex> {
        s.group
            .iter()
            .map(|a| self.face_to(s, AgentSet::singleton(a)))
            .collect()
    }

    /// Number of simplices per dimension (`-1` up to `|A| - 1`).
    pub fn census(&self) -> BTreeMap<isize, usize> {
        let mut out = BTreeMap::new();
        for (g, level) in self.levels() {
            *out.entry(g.len() as isize - 1).or_insert(0) += level.ids.len();
        }
        out
    }

    /// Simplices that are a codimension-1 face of something; every other
    /// simplex is maximal.
    fn covered(&self) -> BTreeSet<Simplex> {
        let mut out = BTreeSet::new();
        for s in self.simplices() {
            for a in s.group.iter() {
                out.insert(self.face(s, a));
            }
        }
        out
    }

    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let covered = self.covered();
        self.simplices().filter(|s| !covered.contains(s)).collect()
    }

    pub fn is_maximal(&self, s: Simplex) -> bool {
        !s.group.complement(self.roster.len()).iter().any(|a| {
            let up = s.group.with(a);
            (0..self.levels[up.index()].ids.len())
                .any(|i| self.face(Simplex { group: up, index: i }, a) == s)
        })
    }

    /// Two simplices of the same non-empty colour with the same vertices
    /// must coincide. The `(-1)`-level is exempt. Witness: the least pair of
    /// offending simplex ids.
    pub fn is_simplicial_complex(&self) -> Verdict {
        let mut worst: Option<(String, String)> = None;
        for (g, level) in self.levels().filter(|(g, _)| !g.is_empty()) {
            let mut seen: BTreeMap<Vec<Simplex>, &str> = BTreeMap::new();
            let mut order: Vec<usize> = (0..level.ids.len()).collect();
            order.sort_by(|a, b| level.ids[*a].cmp(&level.ids[*b]));
            for i in order {
                let vs = self.vertices(Simplex { group: g, index: i });
                let id = level.ids[i].as_str();
                if let Some(first) = seen.get(&vs) {
                    let pair = (String::from(*first), String::from(id));
                    if worst.as_ref().is_none_or(|w| pair < *w) {
                        worst = Some(pair);
                    }
                } else {
                    seen.insert(vs, id);
                }
            }
        }
        match worst {
            Some((s, t)) => Verdict::fail(vec![WitnessItem::Simplex(s), WitnessItem::Simplex(t)]),
            None => Verdict::PASS,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex(id: &str, group: &[usize], faces: &[(usize, &str)]) -> RawSimplex {
        RawSimplex {
            id: id.into(),
            group: AgentSet::from_agents(group.iter().copied()),
            faces: faces.iter().map(|(a, f)| (*a, String::from(*f))).collect(),
        }
    }

    fn triangle(swap: bool) -> RawCset {
        let roster = Roster::new(["a", "b", "c"]).unwrap();
        let (e_ab, e_ac) = if swap { ("ac", "ab") } else { ("ab", "ac") };
        RawCset {
            roster,
            simplices: vec![
                simplex("e", &[], &[]),
                simplex("va", &[0], &[(0, "e")]),
                simplex("vb", &[1], &[(1, "e")]),
                simplex("vc", &[2], &[(2, "e")]),
                simplex("ab", &[0, 1], &[(0, "vb"), (1, "va")]),
                simplex("ac", &[0, 2], &[(0, "vc"), (2, "va")]),
                simplex("bc", &[1, 2], &[(1, "vc"), (2, "vb")]),
                simplex("t", &[0, 1, 2], &[(0, "bc"), (1, e_ac), (2, e_ab)]),
            ],
        }
    }

    #[test]
    fn standard_triangle_is_a_complex() {
        let raw = triangle(false);
        assert!(validate_cset(&raw).is_empty());
        let c = Cset::from_raw(&raw).unwrap();
        assert!(c.is_simplicial_complex().holds);
        assert_eq!(c.maximal_simplices(), vec![c.find("t").unwrap()]);
        let t = c.find("t").unwrap();
        assert_eq!(c.face_to(t, AgentSet::singleton(1)), c.find("vb").unwrap());
        assert!(c.is_maximal(t));
        assert!(!c.is_maximal(c.find("ab").unwrap()));
        assert_eq!(c.to_raw(), raw);
    }

    #[test]
    fn swapped_faces_break_commutation_or_colour() {
        let v = validate_cset(&triangle(true));
        assert!(v
            .iter()
            .all(|x| matches!(x, CsetViolation::FaceLevel { simplex, .. } if simplex == "t")));
        assert!(!v.is_empty());
    }

    #[test]
    fn non_commuting_square() {
        let mut raw = triangle(false);
        // a second b-vertex so that the ab edge can disagree with bc
        raw.simplices.push(simplex("vb2", &[1], &[(1, "e")]));
        raw.simplices[4] = simplex("ab", &[0, 1], &[(0, "vb2"), (1, "va")]);
        let v = validate_cset(&raw);
        assert_eq!(
            v,
            vec![CsetViolation::Commutation {
                simplex: "t".into(),
                a: 0,
                b: 2
            }]
        );
    }
}
