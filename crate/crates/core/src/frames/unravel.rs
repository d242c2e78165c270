use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::frame::{Frame, Model};
use super::per::{Per, UnionFind};
use crate::logic::AgentSet;

/// A depth-bounded unraveling together with the `last` projection.
#[derive(Clone, Debug)]
pub struct Unraveling {
    pub model: Model,
    /// `last(h)` for every history, as a world index of the source model.
    pub last: Vec<usize>,
    /// Number of steps `k` in each history `(w0, U1, w1, ..., Uk, wk)`.
    pub steps: Vec<usize>,
    /// Step bound used.
    pub depth: usize,
}

impl Unraveling {
    /// For each history `h`, a depth `d ≤ k` such that `h` and `last(h)`
    /// agree on every formula of modal depth at most `d`.
    ///
    /// Frontier histories (`k` steps) only guarantee atoms. Otherwise
    /// `d(h) = 1 + min d(h')` over every `h'` in a class of `h`. Classes are
    /// transitive, so `∼_∅` links a root to the whole frontier of its tree
    /// and roots of non-trivial models get at most 1.
    pub fn safe_depths(&self) -> Vec<usize> {
        let f = self.model.frame();
        let n = f.world_count();
        let mut depth = vec![0usize; n];
        for j in 0..self.depth {
            let next: Vec<bool> = (0..n)
                .map(|h| {
                    depth[h] == j
                        && self.steps[h] < self.depth
                        && f.roster()
                            .groups()
                            .all(|u| f.per(u).class(h).iter().all(|&x| depth[x] >= j))
                })
                .collect();
            if !next.contains(&true) {
                break;
            }
            for (d, up) in depth.iter_mut().zip(next) {
                if up {
                    *d += 1;
                }
            }
        }
        depth
    }
}

struct History {
    parent: Option<usize>,
    group: AgentSet,
    last: usize,
    steps: usize,
    id: String,
}

/// All histories with at most `depth` steps. `h ∼_U h'` is the symmetric
/// transitive closure of the extension steps `h → (h, U', w)` with
/// `U ⊆ U'`, plus `(h,h)` whenever `last(h) ∼_U last(h)`.
pub fn unravel(m: &Model, depth: usize) -> Unraveling {
    let frame = m.frame();
    let roster = frame.roster();
    let n = frame.world_count();

    // maximal groups per ordered pair, computed once
    let maximal: Vec<Vec<Vec<AgentSet>>> = (0..n)
        .map(|x| (0..n).map(|y| frame.maximal_groups(x, y)).collect())
        .collect();

    let mut hs: Vec<History> = frame
        .id_order()
        .iter()
        .map(|&w| History {
            parent: None,
            group: AgentSet::EMPTY,
            last: w,
            steps: 0,
            id: frame.world_id(w).into(),
        })
        .collect();
    let mut frontier = 0..hs.len();
    for step in 1..=depth {
        let start = hs.len();
        for h in frontier.clone() {
            let x = hs[h].last;
            for &y in frame.id_order() {
                for &g in &maximal[x][y] {
                    let id = format!("{}>{}>{}", hs[h].id, roster.fmt_group(g), frame.world_id(y));
                    hs.push(History {
                        parent: Some(h),
                        group: g,
                        last: y,
                        steps: step,
                        id,
                    });
                }
            }
        }
        frontier = start..hs.len();
    }

    let total = hs.len();
    let rel: Vec<Per> = roster
        .groups()
        .map(|u| {
            let mut uf = UnionFind::new(total);
            for (i, h) in hs.iter().enumerate() {
                if let Some(p) = h.parent {
                    if u.is_subset(h.group) {
                        uf.union(p, i);
                    }
                }
            }
            let keys: Vec<Option<usize>> = (0..total)
                .map(|i| frame.per(u).in_domain(hs[i].last).then(|| uf.find(i)))
                .collect();
            Per::from_keys(&keys)
        })
        .collect();

    let last: Vec<usize> = hs.iter().map(|h| h.last).collect();
    let steps = hs.iter().map(|h| h.steps).collect();
    let valuation = last.iter().map(|&w| m.valuation(w).clone()).collect();
    let worlds = hs.into_iter().map(|h| h.id).collect();
    let unravelled = Frame::new_trusted(roster.clone(), worlds, rel);
    Unraveling {
        model: Model::new(unravelled, valuation).expect("one valuation per history"),
        last,
        steps,
        depth,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{check_property, Property};
    use crate::logic::Roster;
    use alloc::vec;

    fn nonstandard() -> Model {
        let r = Roster::new(["a", "b"]).unwrap();
        let rel = vec![
            Per::total(2),
            Per::total(2),
            Per::total(2),
            Per::identity(2),
        ];
        Model::bare(Frame::new(r, vec!["w0".into(), "w1".into()], rel).unwrap())
    }

    #[test]
    fn depth_zero_keeps_worlds() {
        let m = nonstandard();
        let u = unravel(&m, 0);
        assert_eq!(u.model.frame().world_count(), 2);
        for g in m.frame().roster().groups() {
            assert_eq!(u.model.frame().per(g), &Per::identity(2));
        }
    }

    #[test]
    fn unravelling_restores_standard_group_knowledge() {
        let m = nonstandard();
        assert!(!check_property(m.frame(), Property::StandardGroupKnowledge).holds);
        let u = unravel(&m, 1);
        // w0 has three maximal-group steps: {a}->w1, {b}->w1, {a,b}->w0
        assert_eq!(u.model.frame().world_count(), 2 + 2 * 3);
        assert!(u.model.frame().violations().is_empty());
        assert!(check_property(u.model.frame(), Property::StandardGroupKnowledge).holds);
        assert!(u.model.frame().world("w0>{a}>w1").is_ok());
    }
}
