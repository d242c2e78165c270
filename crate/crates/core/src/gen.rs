//! Random frames, models, coverings and formulas for property tests.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::csets::{sigma, CoveringModel};
use crate::frames::{check_property, Frame, Model, Property, RawFrame};
use crate::logic::{AgentSet, Formula, PropId, Roster};

#[derive(Clone, Copy, Debug)]
pub struct FrameConfig {
    pub agents: usize,
    pub worlds: usize,
    /// Probability that a compatible pair is related at a given group.
    pub density: f64,
    /// Every world has all agents alive.
    pub pure: bool,
    /// Every world has some agent alive.
    pub no_empty: bool,
    /// `∼_∅` is total.
    pub trivial_empty: bool,
    /// Worlds with equal live sets are never related at that group.
    pub proper: bool,
    /// No world is a strict sub-world of another.
    pub minimal: bool,
    /// Missing sub-worlds are added until the frame is maximal.
    pub maximal: bool,
}

impl FrameConfig {
    pub fn new(agents: usize, worlds: usize) -> Self {
        FrameConfig {
            agents,
            worlds,
            density: 0.3,
            pure: false,
            no_empty: false,
            trivial_empty: false,
            proper: false,
            minimal: false,
            maximal: false,
        }
    }
}

pub fn roster(n: usize) -> Roster {
    Roster::new((0..n).map(|i| String::from(char::from(b'a' + i as u8)))).expect("n <= 26")
}

/// A random valid frame. Liveness is chosen first; pairs are related only
/// at groups alive in both worlds, then closed.
pub fn random_frame<R: Rng + ?Sized>(rng: &mut R, cfg: &FrameConfig) -> Frame {
    let r = roster(cfg.agents);
    let full = r.full();
    let live: Vec<AgentSet> = (0..cfg.worlds)
        .map(|_| {
            if cfg.pure {
                return full;
            }
            loop {
                let s = AgentSet::from_agents((0..cfg.agents).filter(|_| rng.gen_bool(0.6)));
                if !(cfg.no_empty && s.is_empty() && cfg.agents > 0) {
                    break s;
                }
            }
        })
        .collect();
    let worlds = (0..cfg.worlds).map(|i| format!("w{i}")).collect();
    let mut raw = RawFrame::new(r, worlds);
    for (w, &l) in live.iter().enumerate() {
        for u in l.subsets() {
            raw.relate(u, w, w);
        }
    }
    for x in 0..cfg.worlds {
        for y in x + 1..cfg.worlds {
            let common = live[x].intersection(live[y]);
            for u in common.subsets() {
                let touches_live = u == live[x] || u == live[y];
                if cfg.minimal && touches_live && live[x] != live[y] {
                    continue;
                }
                let p = if u.is_empty() && cfg.trivial_empty { 1.0 } else { cfg.density };
                if rng.gen_bool(p) {
                    raw.relate(u, x, y);
                }
            }
        }
    }
    raw.complete();
    let mut f = Frame::from_raw(&raw).expect("generated frames are valid");
    if cfg.proper {
        f = properize(&f);
    }
    if cfg.maximal {
        f = maximalize(&f);
    }
    f
}

/// Merges worlds with equal live sets related at that group. They share
/// every class, so the quotient is again a frame, and it is proper.
pub fn properize(f: &Frame) -> Frame {
    let keep: Vec<usize> = (0..f.world_count())
        .filter(|&w| {
            let l = f.live(w);
            !f.per(l).class(w).iter().any(|&v| v < w && f.live(v) == l)
        })
        .collect();
    f.restrict(&keep)
}

/// Adds, for every world `w` and non-empty `U ⊊ live(w)` without one, a
/// sub-world of `w` with live set `U`, placed in `w`'s classes below `U`.
pub fn maximalize(f: &Frame) -> Frame {
    let mut raw = f.to_raw();
    let mut cur = f.clone();
    loop {
        let missing = (0..cur.world_count()).find_map(|w| {
            let l = cur.live(w);
            l.subsets()
                .filter(|u| !u.is_empty() && *u != l)
                .find(|&u| !cur.per(u).class(w).iter().any(|&v| cur.live(v) == u))
                .map(|u| (w, u))
        });
        let Some((w, u)) = missing else {
            return cur;
        };
        let new = raw.worlds.len();
        let fresh = (new..)
            .map(|i| format!("w{i}"))
            .find(|id| !raw.worlds.contains(id))
            .expect("unbounded");
        raw.worlds.push(fresh);
        for v in u.subsets() {
            raw.relate(v, new, new);
            for &x in cur.per(v).class(w) {
                raw.relate(v, new, x);
                raw.relate(v, x, new);
            }
        }
        cur = Frame::from_raw(&raw).expect("sub-worlds keep the frame laws");
    }
}

/// Rejection-samples a frame with all of `props`; `None` after `tries`.
pub fn random_frame_with<R: Rng + ?Sized>(
    rng: &mut R,
    cfg: &FrameConfig,
    props: &[Property],
    tries: usize,
) -> Option<Frame> {
    (0..tries)
        .map(|_| random_frame(rng, cfg))
        .find(|f| props.iter().all(|&p| check_property(f, p).holds))
}

pub fn atoms(k: usize) -> Vec<PropId> {
    (0..k)
        .map(|i| PropId::new(format!("p{i}")).expect("valid atom"))
        .collect()
}

pub fn random_valuation<R: Rng + ?Sized>(
    rng: &mut R,
    worlds: usize,
    atoms: &[PropId],
) -> Vec<BTreeSet<PropId>> {
    (0..worlds)
        .map(|_| atoms.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect())
        .collect()
}

pub fn random_model<R: Rng + ?Sized>(rng: &mut R, cfg: &FrameConfig, atoms: &[PropId]) -> Model {
    let f = random_frame(rng, cfg);
    let v = random_valuation(rng, f.world_count(), atoms);
    Model::new(f, v).expect("one label set per world")
}

pub fn random_covering<R: Rng + ?Sized>(
    rng: &mut R,
    cfg: &FrameConfig,
    atoms: &[PropId],
) -> CoveringModel {
    sigma(&random_model(rng, cfg, atoms))
}

fn random_group<R: Rng + ?Sized>(rng: &mut R, agents: usize) -> AgentSet {
    AgentSet::from_agents((0..agents).filter(|_| rng.gen_bool(0.5)))
}

/// A random formula over the primitives with modal depth at most `depth`.
pub fn random_formula<R: Rng + ?Sized>(
    rng: &mut R,
    agents: usize,
    atoms: &[PropId],
    depth: usize,
) -> Formula {
    fn go<R: Rng + ?Sized>(rng: &mut R, n: usize, atoms: &[PropId], depth: usize, size: usize) -> Formula {
        let leaf = size == 0 || rng.gen_bool(0.25);
        if leaf {
            return Formula::atom(atoms[rng.gen_range(0..atoms.len())].clone());
        }
        match rng.gen_range(0..if depth > 0 { 3 } else { 2 }) {
            0 => Formula::not(go(rng, n, atoms, depth, size - 1)),
            1 => Formula::and(
                go(rng, n, atoms, depth, size / 2),
                go(rng, n, atoms, depth, size / 2),
            ),
            _ => Formula::d(random_group(rng, n), go(rng, n, atoms, depth - 1, size - 1)),
        }
    }
    go(rng, agents, atoms, depth, 12)
}
