use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::covering::{Covering, CoveringModel, CoveringMorphism, TopWorld};
use super::cset::{Cset, Level, Simplex};
use crate::frames::{Frame, Model, Per};
use crate::logic::{AgentSet, PropId};

/// `κ`: worlds are the maximal simplices of the top cset, and
/// `w ∼_U w'` iff both colours contain `U` and the `U`-faces of their
/// images coincide.
pub fn kappa(x: &CoveringModel) -> Model {
    let cov = x.covering();
    let rel = cov
        .roster()
        .groups()
        .map(|u| {
            let keys: Vec<Option<u32>> = (0..cov.world_count()).map(|w| cov.face_of(w, u)).collect();
            Per::from_keys(&keys)
        })
        .collect();
    let worlds = cov.worlds().iter().map(|w| w.id.clone()).collect();
    let frame = Frame::new_trusted(cov.roster().clone(), worlds, rel);
    Model::new(frame, x.labels().to_vec()).expect("one label set per world")
}

/// Least world id (by string order) in each class of `per`.
fn class_names(frame: &Frame, per: &Per) -> Vec<String> {
    per.classes()
        .iter()
        .map(|c| {
            c.iter()
                .map(|&w| frame.world_id(w))
                .min()
                .expect("classes are non-empty")
                .into()
        })
        .collect()
}

/// `σ`: the base has the quotient `M/∼_U` as level `U`, with faces
/// `[w]_U ↦ [w]_{U∖{a}}`; each world becomes a `live(w)`-coloured simplex
/// mapped to `[w]_{live(w)}`. Base simplices are named `{a,b}:w`, after
/// the least world id of the class.
pub fn sigma(m: &Model) -> CoveringModel {
    let frame = m.frame();
    let roster = frame.roster();
    let levels = roster
        .groups()
        .map(|u| {
            let per = frame.per(u);
            let ids = class_names(frame, per)
                .into_iter()
                .map(|w| format!("{}:{}", roster.fmt_group(u), w))
                .collect();
            let faces = u
                .iter()
                .map(|a| {
                    let below = frame.per(u.without(a));
                    per.classes()
                        .iter()
                        .map(|c| below.class_id(c[0]).expect("compatibility") as usize)
                        .collect()
                })
                .collect();
            Level { ids, faces }
        })
        .collect();
    let base = Cset::from_levels(roster.clone(), levels);
    let worlds = (0..frame.world_count())
        .map(|w| {
            let color = frame.live(w);
            TopWorld {
                id: frame.world_id(w).into(),
                color,
                image: frame.per(color).class_id(w).expect("w ∼_live(w) w") as usize,
            }
        })
        .collect();
    let covering = Covering::new_trusted(base, worlds);
    CoveringModel::new(covering, m.valuations().to_vec()).expect("one label set per world")
}

/// `κ` on a morphism: a world goes to the world containing its image,
/// which is exactly `α_E` in this representation.
pub fn kappa_morphism(alpha: &CoveringMorphism) -> Vec<usize> {
    alpha.worlds.clone()
}

/// `σ` on a frame morphism `g : M → N`: `α_E = g` and
/// `α_B([w]_U) = [g(w)]_U`.
pub fn sigma_morphism(src: &Model, dst: &Model, g: &[usize]) -> CoveringMorphism {
    let (sf, df) = (src.frame(), dst.frame());
    let base = sf
        .roster()
        .groups()
        .map(|u| {
            sf.per(u)
                .classes()
                .iter()
                .map(|c| df.per(u).class_id(g[c[0]]).unwrap_or(u32::MAX) as usize)
                .collect()
        })
        .collect();
    CoveringMorphism {
        worlds: g.to_vec(),
        base,
    }
}

/// Name-independent form of a model: worlds by id, relations as sets of
/// id classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalModel {
    pub agents: Vec<String>,
    pub worlds: BTreeMap<String, BTreeSet<PropId>>,
    pub relations: Vec<BTreeSet<Vec<String>>>,
}

pub fn canonical_model(m: &Model) -> CanonicalModel {
    let f = m.frame();
    CanonicalModel {
        agents: f.roster().names().to_vec(),
        worlds: (0..f.world_count())
            .map(|w| (f.world_id(w).into(), m.valuation(w).clone()))
            .collect(),
        relations: f
            .pers()
            .iter()
            .map(|p| {
                p.classes()
                    .iter()
                    .map(|c| {
                        let mut ids: Vec<String> = c.iter().map(|&w| f.world_id(w).into()).collect();
                        ids.sort();
                        ids
                    })
                    .collect()
            })
            .collect(),
    }
}

/// A base simplex named by its colour and the sorted ids of the worlds in
/// its star. Distinct simplices of one level have disjoint, non-empty
/// stars, so this is a faithful renaming.
pub type SimplexKey = (u32, Vec<String>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalCovering {
    pub agents: Vec<String>,
    /// Every base simplex with its faces, keyed canonically.
    pub simplices: BTreeMap<SimplexKey, BTreeMap<usize, SimplexKey>>,
    /// World id to (colour, image, labels).
    pub worlds: BTreeMap<String, (u32, SimplexKey, BTreeSet<PropId>)>,
}

pub fn canonical_covering(x: &CoveringModel) -> CanonicalCovering {
    let cov = x.covering();
    let base = cov.base();
    let key = |s: Simplex| -> SimplexKey {
        let mut ids: Vec<String> = cov
            .star(s)
            .into_iter()
            .map(|w| cov.worlds()[w].id.clone())
            .collect();
        ids.sort();
        (s.group.bits(), ids)
    };
    let simplices = base
        .simplices()
        .map(|s| {
            let faces = s.group.iter().map(|a| (a, key(base.face(s, a)))).collect();
            (key(s), faces)
        })
        .collect();
    let worlds = (0..cov.world_count())
        .map(|w| {
            let tw = &cov.worlds()[w];
            (
                tw.id.clone(),
                (tw.color.bits(), key(cov.image(w)), x.label(w).clone()),
            )
        })
        .collect();
    CanonicalCovering {
        agents: cov.roster().names().to_vec(),
        simplices,
        worlds,
    }
}

/// Simplex counts per dimension of the base, `-1` first.
pub fn base_census(x: &CoveringModel) -> BTreeMap<isize, usize> {
    x.covering().base().census()
}

/// The group of simplices at level `u` together with the ids of the
/// worlds mapped onto each (the annotated representation).
pub fn annotations(cov: &Covering, u: AgentSet) -> Vec<(String, Vec<String>)> {
    let level = cov.base().level(u);
    (0..level.ids.len())
        .map(|i| {
            let s = Simplex { group: u, index: i };
            let mut ws: Vec<String> = (0..cov.world_count())
                .filter(|&w| cov.image(w) == s)
                .map(|w| cov.worlds()[w].id.clone())
                .collect();
            ws.sort();
            (level.ids[i].clone(), ws)
        })
        .collect()
}
