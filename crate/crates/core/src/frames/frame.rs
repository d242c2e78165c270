use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::per::Per;
use crate::bits::WorldSet;
use crate::logic::{AgentSet, Formula, PropId, Roster};

/// A broken frame law, with the lexicographically least witness.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// `(x,y)` listed for `group` but `(y,x)` is not.
    NotSymmetric { group: AgentSet, x: String, y: String },
    /// `(x,y)` and `(y,z)` listed for `group` but `(x,z)` is not.
    NotTransitive {
        group: AgentSet,
        x: String,
        y: String,
        z: String,
    },
    /// `x ∼_group y` but not `x ∼_subgroup y` (compatibility, condition (a)).
    Compatibility {
        group: AgentSet,
        subgroup: AgentSet,
        x: String,
        y: String,
    },
    /// `w ∼_left w` and `w ∼_right w` but not `w ∼_{left∪right} w`
    /// (union closure, condition (b)).
    UnionClosure {
        world: String,
        left: AgentSet,
        right: AgentSet,
    },
    /// `w ≁_∅ w`: the world has no group of alive agents at all.
    OutsideEmptyGroup { world: String },
}

impl Violation {
    pub fn render(&self, roster: &Roster) -> String {
        let g = |u: &AgentSet| roster.fmt_group(*u);
        match self {
            Violation::NotSymmetric { group, x, y } => {
                format!("PER-symmetry {} ({x},{y})", g(group))
            }
            Violation::NotTransitive { group, x, y, z } => {
                format!("PER-transitivity {} ({x},{y},{z})", g(group))
            }
            Violation::Compatibility {
                group,
                subgroup,
                x,
                y,
            } => format!("compatibility {} {} ({x},{y})", g(group), g(subgroup)),
            Violation::UnionClosure { world, left, right } => {
                format!("union-closure ({world},{},{})", g(left), g(right))
            }
            Violation::OutsideEmptyGroup { world } => format!("empty-group-domain ({world})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrameError {
    #[error("duplicate world id `{0}`")]
    DuplicateWorld(String),
    #[error("expected one relation per group ({expected}), got {found}")]
    RelationCount { expected: usize, found: usize },
    #[error("relation carrier size {found} differs from world count {expected}")]
    Carrier { expected: usize, found: usize },
    #[error("pair mentions world index {0} out of range")]
    WorldIndex(usize),
    #[error("frame violates {} law(s)", .0.len())]
    Invalid(Vec<Violation>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("formula mentions agent index {0}, outside the roster")]
    AgentOutOfRange(usize),
    #[error("valuation covers {found} worlds, frame has {expected}")]
    ValuationLength { expected: usize, found: usize },
}

fn check_unique(worlds: &[String]) -> Result<BTreeMap<String, usize>, FrameError> {
    let mut index = BTreeMap::new();
    for (i, w) in worlds.iter().enumerate() {
        if index.insert(w.clone(), i).is_some() {
            return Err(FrameError::DuplicateWorld(w.clone()));
        }
    }
    Ok(index)
}

/// World indices sorted by id.
fn id_order(index: &BTreeMap<String, usize>) -> Vec<usize> {
    index.values().copied().collect()
}

/// Frame data as read from input: explicit pair sets per group, not yet
/// known to satisfy any law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawFrame {
    pub roster: Roster,
    pub worlds: Vec<String>,
    /// Indexed by [`AgentSet::index`]; length `2^n`.
    pub relations: Vec<BTreeSet<(usize, usize)>>,
}

impl RawFrame {
    pub fn new(roster: Roster, worlds: Vec<String>) -> Self {
        let relations = (0..roster.group_count()).map(|_| BTreeSet::new()).collect();
        RawFrame {
            roster,
            worlds,
            relations,
        }
    }

    pub fn relate(&mut self, group: AgentSet, x: usize, y: usize) {
        self.relations[group.index()].insert((x, y));
    }

    /// Loader completion: close every group under the PER laws and add
    /// pairs downward (a pair of `U` becomes a pair of every `U' ⊆ U`)
    /// until nothing changes, then put every world in the domain of `∼_∅`.
    /// Union-closure pairs are never added.
    pub fn complete(&mut self) {
        let n = self.worlds.len();
        let groups = self.roster.group_count();
        // Adding downward then PER-closing terminates: both only grow sets.
        loop {
            let mut changed = false;
            for u in (0..groups).rev() {
                let closed: BTreeSet<(usize, usize)> =
                    Per::closure(n, self.relations[u].iter().copied())
                        .pairs()
                        .collect();
                if closed != self.relations[u] {
                    self.relations[u] = closed;
                    changed = true;
                }
                let group = AgentSet::from_bits(u as u32);
                for a in group.iter() {
                    let sub = group.without(a).index();
                    let before = self.relations[sub].len();
                    let pairs: Vec<_> = self.relations[u].iter().copied().collect();
                    self.relations[sub].extend(pairs);
                    changed |= self.relations[sub].len() != before;
                }
            }
            if !changed {
                break;
            }
        }
        for w in 0..n {
            self.relations[0].insert((w, w));
        }
    }
}

/// Checks the PER laws, compatibility, union closure and that every world
/// lies in the domain of `∼_∅`. Empty iff the raw data is a generalized
/// epistemic frame. Violations come sorted.
pub fn validate_frame(raw: &RawFrame) -> Result<Vec<Violation>, FrameError> {
    let n = raw.worlds.len();
    let index = check_unique(&raw.worlds)?;
    if raw.relations.len() != raw.roster.group_count() {
        return Err(FrameError::RelationCount {
            expected: raw.roster.group_count(),
            found: raw.relations.len(),
        });
    }
    for rel in &raw.relations {
        if let Some(&(x, y)) = rel.iter().find(|(x, y)| *x >= n || *y >= n) {
            return Err(FrameError::WorldIndex(x.max(y)));
        }
    }
    let order = id_order(&index);
    let mut rank = alloc::vec![0usize; n];
    for (r, &w) in order.iter().enumerate() {
        rank[w] = r;
    }
    let id = |i: usize| raw.worlds[i].clone();
    let by_rank = |&(x, y): &(usize, usize)| (rank[x], rank[y]);
    let mut out = Vec::new();

    for group in raw.roster.groups() {
        let rel = &raw.relations[group.index()];
        if let Some(&(x, y)) = rel
            .iter()
            .filter(|(x, y)| !rel.contains(&(*y, *x)))
            .min_by_key(|p| by_rank(p))
        {
            out.push(Violation::NotSymmetric {
                group,
                x: id(x),
                y: id(y),
            });
        }
        let mut succ: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(x, y) in rel {
            succ.entry(x).or_default().push(y);
        }
        let mut worst: Option<(usize, usize, usize)> = None;
        for &(x, y) in rel {
            for &z in succ.get(&y).map(Vec::as_slice).unwrap_or(&[]) {
                if !rel.contains(&(x, z)) {
                    let key = (rank[x], rank[y], rank[z]);
                    if worst.is_none_or(|(a, b, c)| key < (rank[a], rank[b], rank[c])) {
                        worst = Some((x, y, z));
                    }
                }
            }
        }
        if let Some((x, y, z)) = worst {
            out.push(Violation::NotTransitive {
                group,
                x: id(x),
                y: id(y),
                z: id(z),
            });
        }
        for a in group.iter() {
            let sub = group.without(a);
            let lower = &raw.relations[sub.index()];
            if let Some(&(x, y)) = rel
                .iter()
                .filter(|p| !lower.contains(p))
                .min_by_key(|p| by_rank(p))
            {
                out.push(Violation::Compatibility {
                    group,
                    subgroup: sub,
                    x: id(x),
                    y: id(y),
                });
            }
        }
    }
    laws_on_diagonal(
        &raw.roster,
        &order,
        |g, w| raw.relations[g.index()].contains(&(w, w)),
        &id,
        &mut out,
    );
    out.sort();
    Ok(out)
}

/// Union closure and `∼_∅` domain, which only look at reflexive pairs.
fn laws_on_diagonal(
    roster: &Roster,
    order: &[usize],
    refl: impl Fn(AgentSet, usize) -> bool,
    id: &dyn Fn(usize) -> String,
    out: &mut Vec<Violation>,
) {
    for &w in order {
        if !refl(AgentSet::EMPTY, w) {
            out.push(Violation::OutsideEmptyGroup { world: id(w) });
        }
        let alive: Vec<AgentSet> = roster.groups().filter(|&g| refl(g, w)).collect();
        'search: for (i, &l) in alive.iter().enumerate() {
            for &r in &alive[i + 1..] {
                if !refl(l.union(r), w) {
                    out.push(Violation::UnionClosure {
                        world: id(w),
                        left: l,
                        right: r,
                    });
                    break 'search;
                }
            }
        }
    }
}

/// A generalized epistemic frame: worlds plus one PER per group, satisfying
/// compatibility and union closure. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    roster: Roster,
    worlds: Vec<String>,
    index: BTreeMap<String, usize>,
    rel: Vec<Per>,
    live: Vec<AgentSet>,
    order: Vec<usize>,
}

impl Frame {
    /// Builds and validates a frame from per-group PERs (indexed by
    /// [`AgentSet::index`]).
    pub fn new(roster: Roster, worlds: Vec<String>, rel: Vec<Per>) -> Result<Self, FrameError> {
        let frame = Frame::assemble(roster, worlds, rel)?;
        let violations = frame.violations();
        if violations.is_empty() {
            Ok(frame)
        } else {
            Err(FrameError::Invalid(violations))
        }
    }

    /// Builds a frame whose laws hold by construction; checked in debug
    /// builds only.
    pub(crate) fn new_trusted(roster: Roster, worlds: Vec<String>, rel: Vec<Per>) -> Self {
        let frame = Frame::assemble(roster, worlds, rel).expect("well-formed frame data");
        debug_assert_eq!(frame.violations(), Vec::new());
        frame
    }

    fn assemble(roster: Roster, worlds: Vec<String>, rel: Vec<Per>) -> Result<Self, FrameError> {
        let index = check_unique(&worlds)?;
        if rel.len() != roster.group_count() {
            return Err(FrameError::RelationCount {
                expected: roster.group_count(),
                found: rel.len(),
            });
        }
        if let Some(p) = rel.iter().find(|p| p.len() != worlds.len()) {
            return Err(FrameError::Carrier {
                expected: worlds.len(),
                found: p.len(),
            });
        }
        let live = (0..worlds.len())
            .map(|w| {
                roster
                    .groups()
                    .filter(|g| rel[g.index()].in_domain(w))
                    .fold(AgentSet::EMPTY, AgentSet::union)
            })
            .collect();
        let order = id_order(&index);
        Ok(Frame {
            roster,
            worlds,
            index,
            rel,
            live,
            order,
        })
    }

    pub fn from_raw(raw: &RawFrame) -> Result<Self, FrameError> {
        let violations = validate_frame(raw)?;
        if !violations.is_empty() {
            return Err(FrameError::Invalid(violations));
        }
        let n = raw.worlds.len();
        let rel = raw
            .relations
            .iter()
            .map(|pairs| Per::closure(n, pairs.iter().copied()))
            .collect();
        Frame::new(raw.roster.clone(), raw.worlds.clone(), rel)
    }

    /// Back to explicit pair sets (every pair listed).
    pub fn to_raw(&self) -> RawFrame {
        RawFrame {
            roster: self.roster.clone(),
            worlds: self.worlds.clone(),
            relations: self.rel.iter().map(|p| p.pairs().collect()).collect(),
        }
    }

    /// Re-checks compatibility, union closure and the `∼_∅` domain; the PER
    /// laws hold by construction. Empty for every constructed frame.
    pub fn violations(&self) -> Vec<Violation> {
        let id = |i: usize| self.worlds[i].clone();
        let mut out = Vec::new();
        for group in self.roster.groups() {
            let rel = &self.rel[group.index()];
            for a in group.iter() {
                let sub = group.without(a);
                let lower = &self.rel[sub.index()];
                if !rel.is_subrelation(lower) {
                    let (x, y) = rel.first_missing(lower, &self.order).expect("missing pair");
                    out.push(Violation::Compatibility {
                        group,
                        subgroup: sub,
                        x: id(x),
                        y: id(y),
                    });
                }
            }
        }
        laws_on_diagonal(
            &self.roster,
            &self.order,
            |g, w| self.rel[g.index()].in_domain(w),
            &id,
            &mut out,
        );
        out.sort();
        out
    }

    pub fn roster(&self) -> &Roster {
        &self.roster
    }

    pub fn agent_count(&self) -> usize {
        self.roster.len()
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn world_id(&self, w: usize) -> &str {
        &self.worlds[w]
    }

    pub fn world(&self, id: &str) -> Result<usize, ModelError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| ModelError::UnknownWorld(id.into()))
    }

    /// World indices in lexicographic order of their ids.
    pub fn id_order(&self) -> &[usize] {
        &self.order
    }

    pub fn per(&self, group: AgentSet) -> &Per {
        &self.rel[group.index()]
    }

    pub fn pers(&self) -> &[Per] {
        &self.rel
    }

    pub fn related(&self, group: AgentSet, x: usize, y: usize) -> bool {
        self.rel[group.index()].related(x, y)
    }

    /// The ⊆-maximal group `U` with `w ∼_U w`.
    pub fn live(&self, w: usize) -> AgentSet {
        self.live[w]
    }

    pub fn alive_set(&self, id: &str) -> Result<AgentSet, ModelError> {
        Ok(self.live(self.world(id)?))
    }

    /// `w ≤ w2`: `live(w) ⊆ live(w2)` and `w ∼_{live(w)} w2`.
    pub fn subworld(&self, w: usize, w2: usize) -> bool {
        let l = self.live[w];
        l.is_subset(self.live[w2]) && self.related(l, w, w2)
    }

    pub fn is_subworld(&self, w: &str, w2: &str) -> Result<bool, ModelError> {
        Ok(self.subworld(self.world(w)?, self.world(w2)?))
    }

    /// Equivalence classes of `∼_U`, ordered by least member; worlds outside
    /// the domain are absent.
    pub fn quotient_classes(&self, group: AgentSet) -> &[Vec<usize>] {
        self.rel[group.index()].classes()
    }

    /// The ⊆-maximal groups relating `x` and `y` (an antichain; empty when
    /// even `∅` does not relate them).
    pub fn maximal_groups(&self, x: usize, y: usize) -> Vec<AgentSet> {
        let relating: Vec<AgentSet> = self
            .roster
            .groups()
            .filter(|&g| self.related(g, x, y))
            .collect();
        relating
            .iter()
            .copied()
            .filter(|g| !relating.iter().any(|h| g.is_strict_subset(*h)))
            .collect()
    }

    /// Restriction to `keep` (sorted world indices).
    pub fn restrict(&self, keep: &[usize]) -> Frame {
        let worlds = keep.iter().map(|&w| self.worlds[w].clone()).collect();
        let rel = self
            .rel
            .iter()
            .map(|p| {
                Per::from_keys(&keep.iter().map(|&w| p.class_id(w)).collect::<Vec<_>>())
            })
            .collect();
        Frame::new_trusted(self.roster.clone(), worlds, rel)
    }
}

/// A frame together with a valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    frame: Frame,
    valuation: Vec<BTreeSet<PropId>>,
}

/// One `D`-node visited while evaluating a formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DStep {
    pub world: usize,
    pub group: AgentSet,
    pub accessible: Vec<usize>,
    pub holds: bool,
}

impl Model {
    pub fn new(frame: Frame, valuation: Vec<BTreeSet<PropId>>) -> Result<Self, ModelError> {
        if valuation.len() != frame.world_count() {
            return Err(ModelError::ValuationLength {
                expected: frame.world_count(),
                found: valuation.len(),
            });
        }
        Ok(Model { frame, valuation })
    }

    /// Empty valuation everywhere.
    pub fn bare(frame: Frame) -> Self {
        let valuation = alloc::vec![BTreeSet::new(); frame.world_count()];
        Model { frame, valuation }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn into_frame(self) -> Frame {
        self.frame
    }

    pub fn valuation(&self, w: usize) -> &BTreeSet<PropId> {
        &self.valuation[w]
    }

    pub fn valuations(&self) -> &[BTreeSet<PropId>] {
        &self.valuation
    }

    pub fn with_valuation(&self, valuation: Vec<BTreeSet<PropId>>) -> Result<Self, ModelError> {
        Model::new(self.frame.clone(), valuation)
    }

    /// Every atom true somewhere in the model.
    pub fn atoms(&self) -> BTreeSet<PropId> {
        self.valuation.iter().flatten().cloned().collect()
    }

    pub fn check_formula(&self, phi: &Formula) -> Result<(), ModelError> {
        let extra = phi.agents().difference(self.frame.roster.full());
        match extra.iter().next() {
            Some(a) => Err(ModelError::AgentOutOfRange(a)),
            None => Ok(()),
        }
    }

    /// `M, w ⊨ φ`, by recursion on the formula. `D_U φ` quantifies over
    /// `[w]_U` and holds vacuously outside the domain of `∼_U`.
    pub fn satisfies(&self, w: usize, phi: &Formula) -> bool {
        match phi {
            Formula::Atom(p) => p.is_reserved() || self.valuation[w].contains(p),
            Formula::Neg(f) => !self.satisfies(w, f),
            Formula::And(l, r) => self.satisfies(w, l) && self.satisfies(w, r),
            Formula::D(u, f) => self
                .frame
                .per(*u)
                .class(w)
                .iter()
                .all(|&v| self.satisfies(v, f)),
        }
    }

    pub fn satisfies_at(&self, world: &str, phi: &Formula) -> Result<bool, ModelError> {
        self.check_formula(phi)?;
        Ok(self.satisfies(self.frame.world(world)?, phi))
    }

    /// Like [`Model::satisfies`], recording the accessible set used at every
    /// `D`-node visited (in evaluation order).
    pub fn satisfies_traced(&self, w: usize, phi: &Formula, trace: &mut Vec<DStep>) -> bool {
        match phi {
            Formula::Atom(p) => p.is_reserved() || self.valuation[w].contains(p),
            Formula::Neg(f) => !self.satisfies_traced(w, f, trace),
            Formula::And(l, r) => {
                self.satisfies_traced(w, l, trace) && self.satisfies_traced(w, r, trace)
            }
            Formula::D(u, f) => {
                let slot = trace.len();
                let accessible = self.frame.per(*u).class(w).to_vec();
                trace.push(DStep {
                    world: w,
                    group: *u,
                    accessible: accessible.clone(),
                    holds: true,
                });
                let holds = accessible.iter().all(|&v| self.satisfies_traced(v, f, trace));
                trace[slot].holds = holds;
                holds
            }
        }
    }

    /// The set of worlds satisfying `φ`, computed bottom-up over sets.
    pub fn extension(&self, phi: &Formula) -> WorldSet {
        let n = self.frame.world_count();
        match phi {
            Formula::Atom(p) if p.is_reserved() => WorldSet::full(n),
            Formula::Atom(p) => WorldSet::from_fn(n, |w| self.valuation[w].contains(p)),
            Formula::Neg(f) => self.extension(f).complement(),
            Formula::And(l, r) => self.extension(l).and(&self.extension(r)),
            Formula::D(u, f) => {
                let inner = self.extension(f);
                let per = self.frame.per(*u);
                let mut failing = WorldSet::empty(n);
                for class in per.classes() {
                    if !class.iter().all(|&v| inner.contains(v)) {
                        for &v in class {
                            failing.insert(v);
                        }
                    }
                }
                failing.complement()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ab() -> Roster {
        Roster::new(["a", "b"]).unwrap()
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("w{i}")).collect()
    }

    #[test]
    fn union_closure_violation_witness() {
        let mut raw = RawFrame::new(ab(), names(1));
        raw.relate(AgentSet::EMPTY, 0, 0);
        raw.relate(AgentSet::singleton(0), 0, 0);
        raw.relate(AgentSet::singleton(1), 0, 0);
        let v = validate_frame(&raw).unwrap();
        assert_eq!(
            v,
            vec![Violation::UnionClosure {
                world: "w0".into(),
                left: AgentSet::singleton(0),
                right: AgentSet::singleton(1),
            }]
        );
        assert!(Frame::from_raw(&raw).is_err());
    }

    #[test]
    fn compatibility_violation_witness() {
        let mut raw = RawFrame::new(ab(), names(2));
        let full = AgentSet::full(2);
        for g in [AgentSet::EMPTY, AgentSet::singleton(1), full] {
            for x in 0..2 {
                for y in 0..2 {
                    raw.relate(g, x, y);
                }
            }
        }
        // `a` only sees the diagonal, yet {a,b} relates w0 and w1
        raw.relate(AgentSet::singleton(0), 0, 0);
        raw.relate(AgentSet::singleton(0), 1, 1);
        let v = validate_frame(&raw).unwrap();
        assert_eq!(
            v,
            vec![Violation::Compatibility {
                group: full,
                subgroup: AgentSet::singleton(0),
                x: "w0".into(),
                y: "w1".into(),
            }]
        );
    }

    #[test]
    fn per_law_violations() {
        let mut raw = RawFrame::new(ab(), names(3));
        raw.relate(AgentSet::EMPTY, 0, 1);
        raw.relate(AgentSet::EMPTY, 1, 0);
        let v = validate_frame(&raw).unwrap();
        assert!(v.iter().any(|x| matches!(x, Violation::NotTransitive { .. })));
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::OutsideEmptyGroup { world } if world == "w2")));

        let mut raw = RawFrame::new(ab(), names(2));
        raw.relate(AgentSet::EMPTY, 0, 1);
        assert!(validate_frame(&raw)
            .unwrap()
            .iter()
            .any(|x| matches!(x, Violation::NotSymmetric { .. })));
    }

    #[test]
    fn completion_adds_downward_pairs_but_not_unions() {
        let mut raw = RawFrame::new(ab(), names(2));
        raw.relate(AgentSet::full(2), 0, 1);
        raw.complete();
        let f = Frame::from_raw(&raw).unwrap();
        assert!(f.related(AgentSet::singleton(0), 1, 0));
        assert!(f.related(AgentSet::EMPTY, 0, 0));

        let mut raw = RawFrame::new(ab(), names(1));
        raw.relate(AgentSet::singleton(0), 0, 0);
        raw.relate(AgentSet::singleton(1), 0, 0);
        raw.complete();
        assert!(matches!(
            validate_frame(&raw).unwrap().as_slice(),
            [Violation::UnionClosure { .. }]
        ));
    }

    #[test]
    fn duplicate_world_rejected() {
        let raw = RawFrame::new(ab(), vec!["w".into(), "w".into()]);
        assert_eq!(
            validate_frame(&raw),
            Err(FrameError::DuplicateWorld("w".into()))
        );
    }
}
