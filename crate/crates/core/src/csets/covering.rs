use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::cset::{validate_cset, Cset, CsetViolation, RawCset, Simplex};
use crate::frames::{ModelError, Property};
use crate::logic::{AgentSet, Formula, PropId, Roster};
use crate::witness::{Verdict, WitnessItem};

/// A world of the top cset (a maximal simplex `Γ[color]`) and its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawWorld {
    pub id: String,
    pub color: AgentSet,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RawCovering {
    pub base: RawCset,
    pub worlds: Vec<RawWorld>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CoveringViolation {
    Base(CsetViolation),
    DuplicateWorld { world: String },
    UnknownImage { world: String, image: String },
    /// The image simplex is not coloured by the world's colour.
    ColorMismatch { world: String, image: String },
    /// A maximal simplex of the base has no preimage.
    NotSurjective { simplex: String },
}

impl CoveringViolation {
    pub fn render(&self, roster: &Roster) -> String {
        match self {
            CoveringViolation::Base(v) => v.render(roster),
            CoveringViolation::DuplicateWorld { world } => format!("duplicate-world ({world})"),
            CoveringViolation::UnknownImage { world, image } => {
                format!("unknown-image ({world},{image})")
            }
            CoveringViolation::ColorMismatch { world, image } => {
                format!("colour-mismatch ({world},{image})")
            }
            CoveringViolation::NotSurjective { simplex } => {
                format!("no-preimage ({simplex})")
            }
        }
    }
}

/// Checks the base cset, colour agreement of the world map and
/// surjectivity onto the maximal simplices of the base.
pub fn validate_covering(raw: &RawCovering) -> Vec<CoveringViolation> {
    let base_violations = validate_cset(&raw.base);
    if !base_violations.is_empty() {
        return base_violations
            .into_iter()
            .map(CoveringViolation::Base)
            .collect();
    }
    let base = Cset::from_raw(&raw.base).expect("validated");
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut hit = BTreeSet::new();
    for w in &raw.worlds {
        if !seen.insert(w.id.as_str()) {
            out.push(CoveringViolation::DuplicateWorld {
                world: w.id.clone(),
            });
        }
        match base.find(&w.image) {
            None => out.push(CoveringViolation::UnknownImage {
                world: w.id.clone(),
                image: w.image.clone(),
            }),
            Some(s) if s.group != w.color => out.push(CoveringViolation::ColorMismatch {
                world: w.id.clone(),
                image: w.image.clone(),
            }),
            Some(s) => {
                hit.insert(s);
            }
        }
    }
    for s in base.maximal_simplices() {
        if !hit.contains(&s) {
            out.push(CoveringViolation::NotSurjective {
                simplex: base.id(s).into(),
            });
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopWorld {
    pub id: String,
    pub color: AgentSet,
    /// `f(w)`, at level `color`.
    pub image: usize,
}

/// An epistemic covering `f : E → B`. `E` is stored as its maximal
/// simplices (worlds); `f` on sub-simplices is derived through base faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covering {
    base: Cset,
    worlds: Vec<TopWorld>,
    index: BTreeMap<String, usize>,
    order: Vec<usize>,
    /// `faces[U][w]`: index of `∂_U(f(w))` when `U ⊆ color(w)`.
    faces: Vec<Vec<Option<u32>>>,
}

impl Covering {
    pub fn from_raw(raw: &RawCovering) -> Result<Self, Vec<CoveringViolation>> {
        let violations = validate_covering(raw);
        if !violations.is_empty() {
            return Err(violations);
        }
        let base = Cset::from_raw(&raw.base).expect("validated");
        let worlds = raw
            .worlds
            .iter()
            .map(|w| TopWorld {
                id: w.id.clone(),
                color: w.color,
                image: base.find(&w.image).expect("validated").index,
            })
            .collect();
        Ok(Covering::assemble(base, worlds))
    }

    /// For data that is a covering by construction (checked in debug
    /// builds).
    pub(crate) fn new_trusted(base: Cset, worlds: Vec<TopWorld>) -> Self {
        let c = Covering::assemble(base, worlds);
        debug_assert_eq!(validate_covering(&c.to_raw()), Vec::new());
        c
    }

    fn assemble(base: Cset, worlds: Vec<TopWorld>) -> Self {
        let index: BTreeMap<String, usize> = worlds
            .iter()
            .enumerate()
            .map(|(i, w)| (w.id.clone(), i))
            .collect();
        let order = index.values().copied().collect();
        let faces = base
            .roster()
            .groups()
            .map(|u| {
                worlds
                    .iter()
                    .map(|w| {
                        u.is_subset(w.color).then(|| {
                            let img = Simplex {
                                group: w.color,
                                index: w.image,
                            };
                            base.face_to(img, u).index as u32
                        })
                    })
                    .collect()
            })
            .collect();
        Covering {
            base,
            worlds,
            index,
            order,
            faces,
        }
    }

    pub fn to_raw(&self) -> RawCovering {
        RawCovering {
            base: self.base.to_raw(),
            worlds: self
                .worlds
                .iter()
                .map(|w| RawWorld {
                    id: w.id.clone(),
                    color: w.color,
                    image: self.base.id(self.image(self.index[&w.id])).into(),
                })
                .collect(),
        }
    }

    pub fn base(&self) -> &Cset {
        &self.base
    }

    pub fn roster(&self) -> &Roster {
        self.base.roster()
    }

    pub fn worlds(&self) -> &[TopWorld] {
        &self.worlds
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn world(&self, id: &str) -> Result<usize, ModelError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| ModelError::UnknownWorld(id.into()))
    }

    pub fn id_order(&self) -> &[usize] {
        &self.order
    }

    pub fn image(&self, w: usize) -> Simplex {
        Simplex {
            group: self.worlds[w].color,
            index: self.worlds[w].image,
        }
    }

    /// `∂_U(f(w))`, or `None` when `U ⊄ color(w)`.
    pub fn face_of(&self, w: usize, u: AgentSet) -> Option<u32> {
        self.faces[u.index()][w]
    }

    /// Worlds in the star of a base simplex: those whose image has it as a
    /// face.
    pub fn star(&self, s: Simplex) -> Vec<usize> {
        (0..self.worlds.len())
            .filter(|&w| self.face_of(w, s.group) == Some(s.index as u32))
            .collect()
    }
}

/// A covering together with a labelling of its worlds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringModel {
    covering: Covering,
    labels: Vec<BTreeSet<PropId>>,
}

impl CoveringModel {
    pub fn new(covering: Covering, labels: Vec<BTreeSet<PropId>>) -> Result<Self, ModelError> {
        if labels.len() != covering.world_count() {
            return Err(ModelError::ValuationLength {
                expected: covering.world_count(),
                found: labels.len(),
            });
        }
        Ok(CoveringModel { covering, labels })
    }

    pub fn bare(covering: Covering) -> Self {
        let labels = vec![BTreeSet::new(); covering.world_count()];
        CoveringModel { covering, labels }
    }

    pub fn covering(&self) -> &Covering {
        &self.covering
    }

    pub fn label(&self, w: usize) -> &BTreeSet<PropId> {
        &self.labels[w]
    }

    pub fn labels(&self) -> &[BTreeSet<PropId>] {
        &self.labels
    }

    /// `X, s ⊨ φ`. `D_U φ` ranges over the worlds whose image shares the
    /// `U`-face of `f(s)`, and is vacuous when `U ⊄ color(s)`.
    pub fn satisfies(&self, s: usize, phi: &Formula) -> bool {
        match phi {
            Formula::Atom(p) => p.is_reserved() || self.labels[s].contains(p),
            Formula::Neg(f) => !self.satisfies(s, f),
            Formula::And(l, r) => self.satisfies(s, l) && self.satisfies(s, r),
            Formula::D(u, f) => match self.covering.face_of(s, *u) {
                None => true,
                Some(face) => (0..self.covering.world_count())
                    .filter(|&t| self.covering.face_of(t, *u) == Some(face))
                    .all(|t| self.satisfies(t, f)),
            },
        }
    }

    pub fn satisfies_at(&self, world: &str, phi: &Formula) -> Result<bool, ModelError> {
        let extra = phi.agents().difference(self.covering.roster().full());
        if let Some(a) = extra.iter().next() {
            return Err(ModelError::AgentOutOfRange(a));
        }
        Ok(self.satisfies(self.covering.world(world)?, phi))
    }
}

fn simplex_item(c: &Cset, s: Simplex) -> WitnessItem {
    WitnessItem::Simplex(c.id(s).into())
}

/// Evaluates the covering-side clause of `prop`.
pub fn check_covering_property(cov: &Covering, prop: Property) -> Verdict {
    let base = cov.base();
    let world = |w: usize| WitnessItem::World(cov.worlds()[w].id.clone());
    let order = cov.id_order();
    match prop {
        Property::TrivialEmptyGroup => {
            // at most one: the empty covering has none
            let mut ids = base.level(AgentSet::EMPTY).ids.clone();
            ids.sort();
            if ids.len() > 1 {
                Verdict::fail(vec![
                    WitnessItem::Simplex(ids[0].clone()),
                    WitnessItem::Simplex(ids[1].clone()),
                ])
            } else {
                Verdict::PASS
            }
        }
        Property::NoEmptyWorlds => match order.iter().find(|&&w| cov.worlds()[w].color.is_empty()) {
            Some(&w) => Verdict::fail(vec![world(w)]),
            None => Verdict::PASS,
        },
        Property::Proper => {
            for &w in order {
                for &v in order {
                    if w != v && cov.image(w) == cov.image(v) {
                        return Verdict::fail(vec![world(w), world(v)]);
                    }
                }
            }
            Verdict::PASS
        }
        Property::Maximal => {
            let hit: BTreeSet<Simplex> = (0..cov.world_count()).map(|w| cov.image(w)).collect();
            let mut missing: Vec<&str> = base
                .simplices()
                .filter(|s| !s.group.is_empty() && !hit.contains(s))
                .map(|s| base.id(s))
                .collect();
            missing.sort();
            match missing.first() {
                Some(s) => Verdict::fail(vec![WitnessItem::Simplex((*s).into())]),
                None => Verdict::PASS,
            }
        }
        Property::Minimal => {
            match order.iter().find(|&&w| !base.is_maximal(cov.image(w))) {
                Some(&w) => Verdict::fail(vec![world(w), simplex_item(base, cov.image(w))]),
                None => Verdict::PASS,
            }
        }
        Property::Pure => {
            let full = cov.roster().full();
            match order.iter().find(|&&w| cov.worlds()[w].color != full) {
                Some(&w) => Verdict::fail(vec![world(w)]),
                None => Verdict::PASS,
            }
        }
        Property::StandardGroupKnowledge => base.is_simplicial_complex(),
    }
}

/// A pair `(α_E, α_B)` between two coverings over the same roster. `α_E`
/// sends each world to the world whose simplex contains its image; `α_B`
/// maps each base level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringMorphism {
    pub worlds: Vec<usize>,
    /// `base[U][s]`: image of the `s`-th `U`-simplex.
    pub base: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoveringMorphismError {
    #[error("source and target rosters differ")]
    RosterMismatch,
    #[error("morphism data is not total on the source")]
    NotTotal,
    #[error("morphism data points outside the target")]
    OutOfRange,
}

/// Checks colour preservation, face compatibility of `α_B`, the commuting
/// square `f' ∘ α_E = α_B ∘ f` and `ℓ(s) ⊆ ℓ'(↑α_E(s))`.
pub fn check_covering_morphism(
    src: &CoveringModel,
    dst: &CoveringModel,
    alpha: &CoveringMorphism,
) -> Result<Verdict, CoveringMorphismError> {
    let (x, y) = (src.covering(), dst.covering());
    if x.roster() != y.roster() {
        return Err(CoveringMorphismError::RosterMismatch);
    }
    if alpha.worlds.len() != x.world_count() || alpha.base.len() != x.roster().group_count() {
        return Err(CoveringMorphismError::NotTotal);
    }
    for (g, level) in x.base().levels() {
        if alpha.base[g.index()].len() != level.ids.len() {
            return Err(CoveringMorphismError::NotTotal);
        }
        if alpha.base[g.index()]
            .iter()
            .any(|&t| t >= y.base().level(g).ids.len())
        {
            return Err(CoveringMorphismError::OutOfRange);
        }
    }
    if alpha.worlds.iter().any(|&w| w >= y.world_count()) {
        return Err(CoveringMorphismError::OutOfRange);
    }
    let map_b = |s: Simplex| Simplex {
        group: s.group,
        index: alpha.base[s.group.index()][s.index],
    };
    let world = |c: &Covering, w: usize| WitnessItem::World(c.worlds()[w].id.clone());

    for &w in x.id_order() {
        let v = alpha.worlds[w];
        if !x.worlds()[w].color.is_subset(y.worlds()[v].color) {
            return Ok(Verdict::fail(vec![
                WitnessItem::Clause("colour"),
                world(x, w),
                world(y, v),
            ]));
        }
    }
    let mut simplices: Vec<Simplex> = x.base().simplices().collect();
    simplices.sort_by(|a, b| x.base().id(*a).cmp(x.base().id(*b)));
    for s in simplices {
        for a in s.group.iter() {
            if map_b(x.base().face(s, a)) != y.base().face(map_b(s), a) {
                return Ok(Verdict::fail(vec![
                    WitnessItem::Clause("faces"),
                    simplex_item(x.base(), s),
                    WitnessItem::Group(AgentSet::singleton(a)),
                ]));
            }
        }
    }
    for &w in x.id_order() {
        let v = alpha.worlds[w];
        let color = x.worlds()[w].color;
        if map_b(x.image(w)) != y.base().face_to(y.image(v), color) {
            return Ok(Verdict::fail(vec![WitnessItem::Clause("square"), world(x, w)]));
        }
        if let Some(p) = src.label(w).iter().find(|p| !dst.label(v).contains(*p)) {
            return Ok(Verdict::fail(vec![
                WitnessItem::Clause("labels"),
                world(x, w),
                WitnessItem::Prop(p.clone()),
            ]));
        }
    }
    Ok(Verdict::PASS)
}
