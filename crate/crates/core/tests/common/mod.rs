//! Brute-force reference semantics over explicit pair sets, written from
//! the definitions and sharing no code with the library's evaluators.
#![allow(dead_code)]

use std::collections::BTreeSet;

use episim_core::gen::FrameConfig;
use episim_core::logic::{AgentSet, Formula};
use episim_core::{Model, Property};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub struct Naive {
    pub agents: usize,
    pub worlds: usize,
    /// Indexed by group bits.
    pub rel: Vec<BTreeSet<(usize, usize)>>,
    pub val: Vec<BTreeSet<String>>,
}

impl Naive {
    pub fn of(m: &Model) -> Self {
        let raw = m.frame().to_raw();
        Naive {
            agents: raw.roster.len(),
            worlds: raw.worlds.len(),
            rel: raw.relations,
            val: (0..m.frame().world_count())
                .map(|w| m.valuation(w).iter().map(|p| p.as_str().to_string()).collect())
                .collect(),
        }
    }

    pub fn groups(&self) -> impl Iterator<Item = u32> {
        0..(1u32 << self.agents)
    }

    pub fn r(&self, u: u32, x: usize, y: usize) -> bool {
        self.rel[u as usize].contains(&(x, y))
    }

    pub fn sat(&self, w: usize, phi: &Formula) -> bool {
        match phi {
            Formula::Atom(p) => p.is_reserved() || self.val[w].contains(p.as_str()),
            Formula::Neg(f) => !self.sat(w, f),
            Formula::And(l, r) => self.sat(w, l) && self.sat(w, r),
            Formula::D(u, f) => (0..self.worlds)
                .filter(|&v| self.r(u.bits(), w, v))
                .all(|v| self.sat(v, f)),
        }
    }

    pub fn live(&self, w: usize) -> u32 {
        self.groups().filter(|&u| self.r(u, w, w)).fold(0, |a, u| a | u)
    }

    fn sub(a: u32, b: u32) -> bool {
        a & !b == 0
    }

    pub fn property(&self, p: Property) -> bool {
        let n = self.worlds;
        let full = (1u32 << self.agents) - 1;
        let ws = || 0..n;
        match p {
            Property::TrivialEmptyGroup => ws().all(|x| ws().all(|y| self.r(0, x, y))),
            Property::NoEmptyWorlds => ws().all(|w| self.live(w) != 0),
            Property::Proper => ws().all(|x| {
                ws().all(|y| {
                    x == y || self.live(x) != self.live(y) || !self.r(self.live(x), x, y)
                })
            }),
            Property::Maximal => ws().all(|w| {
                let l = self.live(w);
                self.groups().filter(|&u| u != 0 && Self::sub(u, l)).all(|u| {
                    ws().any(|v| self.live(v) == u && self.r(u, v, w))
                })
            }),
            Property::Minimal => ws().all(|x| {
                ws().all(|y| {
                    let (lx, ly) = (self.live(x), self.live(y));
                    !(Self::sub(lx, ly) && lx != ly && self.r(lx, x, y))
                })
            }),
            Property::Pure => ws().all(|w| self.live(w) == full),
            Property::StandardGroupKnowledge => ws().all(|x| {
                ws().all(|y| {
                    self.groups().filter(|u| u.count_ones() >= 2).all(|u| {
                        let each = (0..self.agents)
                            .filter(|a| u >> a & 1 == 1)
                            .all(|a| self.r(1 << a, x, y));
                        !each || self.r(u, x, y)
                    })
                })
            }),
        }
    }

    /// The maximal groups relating `x` and `y`, as sorted bit masks.
    pub fn maximal_groups(&self, x: usize, y: usize) -> Vec<u32> {
        let rel: Vec<u32> = self.groups().filter(|&u| self.r(u, x, y)).collect();
        let mut out: Vec<u32> = rel
            .iter()
            .copied()
            .filter(|&u| !rel.iter().any(|&v| v != u && Self::sub(u, v)))
            .collect();
        out.sort();
        out
    }
}

pub fn cfg(agents: usize, worlds: usize) -> FrameConfig {
    FrameConfig::new(agents, worlds)
}

pub fn group(bits: u32) -> AgentSet {
    AgentSet::from_bits(bits)
}
