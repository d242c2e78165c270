use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::frame::{Frame, Model};
use crate::logic::AgentSet;
use crate::witness::{Verdict, WitnessItem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("source and target rosters differ")]
    RosterMismatch,
    #[error("map has no image for world `{0}`")]
    Missing(String),
    #[error("map mentions unknown world `{0}`")]
    UnknownWorld(String),
    #[error("map has {found} entries, source has {expected} worlds")]
    Length { expected: usize, found: usize },
}

/// Turns a map between world ids into index form, checking totality.
pub fn resolve_map(
    src: &Frame,
    dst: &Frame,
    map: &BTreeMap<String, String>,
) -> Result<Vec<usize>, MapError> {
    if let Some(k) = map.keys().find(|k| src.world(k).is_err()) {
        return Err(MapError::UnknownWorld(k.clone()));
    }
    (0..src.world_count())
        .map(|w| {
            let id = src.world_id(w);
            let img = map.get(id).ok_or_else(|| MapError::Missing(id.into()))?;
            dst.world(img)
                .map_err(|_| MapError::UnknownWorld(img.clone()))
        })
        .collect()
}

fn check_shape(src: &Frame, dst: &Frame, map: &[usize]) -> Result<(), MapError> {
    if src.roster() != dst.roster() {
        return Err(MapError::RosterMismatch);
    }
    if map.len() != src.world_count() {
        return Err(MapError::Length {
            expected: src.world_count(),
            found: map.len(),
        });
    }
    if let Some(&bad) = map.iter().find(|&&v| v >= dst.world_count()) {
        return Err(MapError::UnknownWorld(alloc::format!("#{bad}")));
    }
    Ok(())
}

fn w(f: &Frame, i: usize) -> WitnessItem {
    WitnessItem::World(f.world_id(i).into())
}

/// Least `(u, v, U)` with `u ∼_U v` but `f(u) ≁_U f(v)`, among sources `u`
/// accepted by `at`.
fn forth_failure(
    src: &Frame,
    dst: &Frame,
    map: &[usize],
    at: &dyn Fn(usize) -> bool,
) -> Option<(usize, usize, AgentSet)> {
    let broken = src.roster().groups().any(|u| {
        src.per(u).classes().iter().any(|c| {
            let head = map[c[0]];
            c.iter().any(|&v| !dst.related(u, head, map[v]))
        })
    });
    if !broken {
        return None;
    }
    for &x in src.id_order() {
        if !at(x) {
            continue;
        }
        for &y in src.id_order() {
            for u in src.roster().groups() {
                if src.related(u, x, y) && !dst.related(u, map[x], map[y]) {
                    return Some((x, y, u));
                }
            }
        }
    }
    None
}

/// Frame-and-valuation morphism check: every `∼_U` pair is preserved and
/// `L_M(w) ⊆ L_N(f(w))`. Witness `(u,v,U)` or `(w,p)`.
pub fn check_morphism(src: &Model, dst: &Model, map: &[usize]) -> Result<Verdict, MapError> {
    let (sf, df) = (src.frame(), dst.frame());
    check_shape(sf, df, map)?;
    if let Some((x, y, u)) = forth_failure(sf, df, map, &|_| true) {
        return Ok(Verdict::fail(vec![w(sf, x), w(sf, y), WitnessItem::Group(u)]));
    }
    for &x in sf.id_order() {
        if let Some(p) = src
            .valuation(x)
            .iter()
            .find(|p| !dst.valuation(map[x]).contains(*p))
        {
            return Ok(Verdict::fail(vec![w(sf, x), WitnessItem::Prop(p.clone())]));
        }
    }
    Ok(Verdict::PASS)
}

/// Checks (atoms), (forth) and (back) in that order and reports the first
/// violated clause.
pub fn check_functional_bisimulation(
    src: &Model,
    dst: &Model,
    map: &[usize],
) -> Result<Verdict, MapError> {
    check_functional_bisimulation_at(src, dst, map, &|_| true)
}

/// As [`check_functional_bisimulation`], but every clause is only required
/// at source worlds accepted by `at` (used for truncated unravelings, where
/// the frontier has no extensions).
pub fn check_functional_bisimulation_at(
    src: &Model,
    dst: &Model,
    map: &[usize],
    at: &dyn Fn(usize) -> bool,
) -> Result<Verdict, MapError> {
    let (sf, df) = (src.frame(), dst.frame());
    check_shape(sf, df, map)?;
    for &x in sf.id_order().iter().filter(|&&x| at(x)) {
        let (mine, theirs) = (src.valuation(x), dst.valuation(map[x]));
        if let Some(p) = mine.symmetric_difference(theirs).next() {
            return Ok(Verdict::fail(vec![
                WitnessItem::Clause("atoms"),
                w(sf, x),
                WitnessItem::Prop(p.clone()),
            ]));
        }
    }
    if let Some((x, y, u)) = forth_failure(sf, df, map, at) {
        return Ok(Verdict::fail(vec![
            WitnessItem::Clause("forth"),
            w(sf, x),
            w(sf, y),
            WitnessItem::Group(u),
        ]));
    }
    for &x in sf.id_order().iter().filter(|&&x| at(x)) {
        for u in sf.roster().groups() {
            let reached: Vec<usize> = sf.per(u).class(x).iter().map(|&y| map[y]).collect();
            let mut missing: Vec<usize> = df
                .per(u)
                .class(map[x])
                .iter()
                .copied()
                .filter(|v| !reached.contains(v))
                .collect();
            missing.sort_by(|a, b| df.world_id(*a).cmp(df.world_id(*b)));
            if let Some(&v) = missing.first() {
                return Ok(Verdict::fail(vec![
                    WitnessItem::Clause("back"),
                    w(sf, x),
                    w(df, v),
                    WitnessItem::Group(u),
                ]));
            }
        }
    }
    Ok(Verdict::PASS)
}

/// The depth-`k` approximant of bisimilarity between the worlds of two
/// models over the same roster: `rel[x][y]` holds iff `(m1,x)` and `(m2,y)`
/// satisfy the same formulas of modal depth at most `k`.
pub fn bounded_bisimilarity(m1: &Model, m2: &Model, depth: usize) -> Vec<Vec<bool>> {
    let (f1, f2) = (m1.frame(), m2.frame());
    let (n1, n2) = (f1.world_count(), f2.world_count());
    let mut rel: Vec<Vec<bool>> = (0..n1)
        .map(|x| (0..n2).map(|y| m1.valuation(x) == m2.valuation(y)).collect())
        .collect();
    if f1.roster() != f2.roster() {
        return vec![vec![false; n2]; n1];
    }
    for _ in 0..depth {
        let mut next = rel.clone();
        for u in f1.roster().groups() {
            let (p1, p2) = (f1.per(u), f2.per(u));
            let c1 = p1.classes();
            let c2 = p2.classes();
            // zig-zag compatibility of each pair of classes
            let ok: Vec<Vec<bool>> = c1
                .iter()
                .map(|a| {
                    c2.iter()
                        .map(|b| {
                            a.iter().all(|&x| b.iter().any(|&y| rel[x][y]))
                                && b.iter().all(|&y| a.iter().any(|&x| rel[x][y]))
                        })
                        .collect()
                })
                .collect();
            for (x, row) in next.iter_mut().enumerate() {
                for (y, cell) in row.iter_mut().enumerate() {
                    if !*cell {
                        continue;
                    }
                    *cell = match (p1.class_id(x), p2.class_id(y)) {
                        (None, None) => true,
                        (Some(a), Some(b)) => ok[a as usize][b as usize],
                        _ => false,
                    };
                }
            }
        }
        if next == rel {
            break;
        }
        rel = next;
    }
    rel
}

/// Whether `(m1,w1)` and `(m2,w2)` agree on every formula of modal depth at
/// most `depth`, decided by the bounded back-and-forth game.
pub fn modal_equiv_upto(m1: &Model, w1: usize, m2: &Model, w2: usize, depth: usize) -> bool {
    bounded_bisimilarity(m1, m2, depth)[w1][w2]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::Per;
    use crate::logic::{PropId, Roster};
    use alloc::collections::BTreeSet;
    use alloc::format;

    fn two_world(props: [&str; 2]) -> Model {
        let r = Roster::new(["a"]).unwrap();
        let rel = vec![Per::total(2), Per::total(2)];
        let frame = Frame::new(r, vec!["w0".into(), "w1".into()], rel).unwrap();
        let val = props
            .iter()
            .map(|p| {
                p.split(',')
                    .filter(|s| !s.is_empty())
                    .map(|s| PropId::new(s).unwrap())
                    .collect::<BTreeSet<_>>()
            })
            .collect();
        Model::new(frame, val).unwrap()
    }

    #[test]
    fn identity_is_a_bisimulation() {
        let m = two_world(["p", ""]);
        let id = [0, 1];
        assert!(check_morphism(&m, &m, &id).unwrap().holds);
        assert!(check_functional_bisimulation(&m, &m, &id).unwrap().holds);
        assert!(modal_equiv_upto(&m, 0, &m, 0, 3));
        assert!(!modal_equiv_upto(&m, 0, &m, 1, 0));
    }

    #[test]
    fn collapsing_different_valuations_breaks_atoms() {
        let m = two_world(["p", ""]);
        let v = check_functional_bisimulation(&m, &m, &[0, 0]).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness.unwrap().0[0], WitnessItem::Clause("atoms"));
    }

    #[test]
    fn unrelated_image_breaks_morphism() {
        let r = Roster::new(["a"]).unwrap();
        let src = Model::bare(
            Frame::new(r.clone(), vec!["u".into(), "v".into()], vec![Per::total(2), Per::total(2)])
                .unwrap(),
        );
        let dst = Model::bare(
            Frame::new(
                r,
                vec!["x".into(), "y".into()],
                vec![Per::total(2), Per::identity(2)],
            )
            .unwrap(),
        );
        let v = check_morphism(&src, &dst, &[0, 1]).unwrap();
        let wit = v.witness.unwrap();
        assert_eq!(
            format!("{:?}", wit.0),
            format!(
                "{:?}",
                vec![
                    WitnessItem::World("u".into()),
                    WitnessItem::World("v".into()),
                    WitnessItem::Group(AgentSet::singleton(0))
                ]
            )
        );
    }
}
