#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;

use episim_core::csets::CoveringModel;
use episim_core::csets::Simplex;
use episim_core::{Formula, Model, Property};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
}

pub fn fixture_names() -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| p.file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    v.sort();
    v
}

/// Runs the built binary.
pub fn episim(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_episim"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

/// Brute-force semantics straight from the definitions, over explicit
/// adjacency lists taken from the stored pair sets.
pub struct Naive {
    pub n: usize,
    pub agents: usize,
    /// `adj[U][x]`: every `y` with `x ∼_U y`.
    pub adj: Vec<Vec<Vec<usize>>>,
    pub val: Vec<Vec<String>>,
}

impl Naive {
    pub fn of(m: &Model) -> Self {
        let raw = m.frame().to_raw();
        let n = raw.worlds.len();
        let adj = raw
            .relations
            .iter()
            .map(|pairs| {
                let mut a = vec![Vec::new(); n];
                for &(x, y) in pairs {
                    a[x].push(y);
                }
                a
            })
            .collect();
        Naive {
            n,
            agents: raw.roster.len(),
            adj,
            val: (0..n)
                .map(|w| m.valuation(w).iter().map(|p| p.as_str().to_string()).collect())
                .collect(),
        }
    }

    pub fn with_valuation(&self, val: Vec<Vec<String>>) -> Self {
        Naive {
            n: self.n,
            agents: self.agents,
            adj: self.adj.clone(),
            val,
        }
    }

    pub fn r(&self, u: u32, x: usize, y: usize) -> bool {
        self.adj[u as usize][x].contains(&y)
    }

    pub fn sat(&self, w: usize, phi: &Formula) -> bool {
        match phi {
            Formula::Atom(p) => p.is_reserved() || self.val[w].iter().any(|q| q == p.as_str()),
            Formula::Neg(f) => !self.sat(w, f),
            Formula::And(l, r) => self.sat(w, l) && self.sat(w, r),
            Formula::D(u, f) => self.adj[u.bits() as usize][w].iter().all(|&v| self.sat(v, f)),
        }
    }

    pub fn live(&self, w: usize) -> u32 {
        (0..1u32 << self.agents)
            .filter(|&u| self.r(u, w, w))
            .fold(0, |a, u| a | u)
    }

    pub fn property(&self, p: Property) -> bool {
        let full = (1u32 << self.agents) - 1;
        let ws = 0..self.n;
        let pairs = || ws.clone().flat_map(|x| (0..self.n).map(move |y| (x, y)));
        match p {
            Property::TrivialEmptyGroup => pairs().all(|(x, y)| self.r(0, x, y)),
            Property::NoEmptyWorlds => ws.clone().all(|w| self.live(w) != 0),
            Property::Proper => pairs().all(|(x, y)| {
                x == y || self.live(x) != self.live(y) || !self.r(self.live(x), x, y)
            }),
            Property::Maximal => ws.clone().all(|w| {
                let l = self.live(w);
                (1..=l).filter(|u| u & !l == 0).all(|u| {
                    (0..self.n).any(|v| self.r(u, w, v) && self.live(v) == u)
                })
            }),
            Property::Minimal => pairs().all(|(x, y)| {
                let (lx, ly) = (self.live(x), self.live(y));
                !(lx & !ly == 0 && lx != ly && self.r(lx, x, y))
            }),
            Property::Pure => ws.clone().all(|w| self.live(w) == full),
            Property::StandardGroupKnowledge => pairs().all(|(x, y)| {
                (0..=full).filter(|u| u.count_ones() >= 2).all(|u| {
                    let each = (0..self.agents)
                        .filter(|a| u & (1 << a) != 0)
                        .all(|a| self.r(1 << a, x, y));
                    !each || self.r(u, x, y)
                })
            }),
        }
    }

    /// The inclusion-maximal groups relating `x` and `y`, sorted.
    pub fn maximal_groups(&self, x: usize, y: usize) -> Vec<u32> {
        let rel: Vec<u32> = (0..1u32 << self.agents).filter(|&u| self.r(u, x, y)).collect();
        rel.iter()
            .copied()
            .filter(|&u| !rel.iter().any(|&v| v != u && u & !v == 0))
            .collect()
    }

    /// Valid iff true everywhere under every valuation of its atoms.
    pub fn valid(&self, phi: &Formula) -> bool {
        let atoms: Vec<String> = phi
            .atoms()
            .into_iter()
            .filter(|p| !p.is_reserved())
            .map(|p| p.as_str().to_string())
            .collect();
        let bits = atoms.len() * self.n;
        (0u64..1 << bits).all(|code| {
            let val = (0..self.n)
                .map(|w| {
                    atoms
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| code >> (i * self.n + w) & 1 == 1)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let m = self.with_valuation(val);
            (0..self.n).all(|w| m.sat(w, phi))
        })
    }
}

/// Covering semantics from the definition: `D_U φ` at `s` ranges over the
/// worlds whose image has the same `U`-face, vacuous unless `U ⊆ color(s)`.
pub fn covering_sat(x: &CoveringModel, s: usize, phi: &Formula) -> bool {
    let cov = x.covering();
    let face = |w: usize, u| {
        let tw = &cov.worlds()[w];
        let img = Simplex {
            group: tw.color,
            index: tw.image,
        };
        cov.base().face_to(img, u)
    };
    match phi {
        Formula::Atom(p) => p.is_reserved() || x.label(s).contains(p),
        Formula::Neg(f) => !covering_sat(x, s, f),
        Formula::And(l, r) => covering_sat(x, s, l) && covering_sat(x, s, r),
        Formula::D(u, f) => {
            if !u.is_subset(cov.worlds()[s].color) {
                return true;
            }
            let here = face(s, *u);
            (0..cov.world_count())
                .filter(|&t| u.is_subset(cov.worlds()[t].color) && face(t, *u) == here)
                .all(|t| covering_sat(x, t, f))
        }
    }
}

/// Counts base simplices by dimension in a covering document.
pub fn census_of_doc(doc: &serde_json::Value) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for s in doc["base"]["simplices"].as_array().unwrap() {
        let d = s["group"].as_array().unwrap().len() as i64 - 1;
        *out.entry(d).or_default() += 1;
    }
    out
}
