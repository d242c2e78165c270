use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::sensor::{build_sensor_frame, three_sensor_scenario, SensorScenario};
use crate::csets::{Covering, CoveringModel, RawCovering, RawCset, RawSimplex, RawWorld};
use crate::frames::{Frame, Model, Property, RawFrame};
use crate::logic::{AgentSet, PropId, Roster};

#[derive(Clone, Debug)]
pub enum FixturePayload {
    Frame(Model),
    Covering(CoveringModel),
    Scenario(SensorScenario),
}

impl FixturePayload {
    /// The file-format kind tag.
    pub fn kind(&self) -> &'static str {
        match self {
            FixturePayload::Frame(_) => "frame",
            FixturePayload::Covering(_) => "covering",
            FixturePayload::Scenario(_) => "scenario",
        }
    }
}

/// A named example with the verdicts stated for it in the text.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub description: &'static str,
    pub payload: FixturePayload,
    pub expected: Vec<(Property, bool)>,
}

impl Fixture {
    /// The epistemic model of a frame or scenario fixture.
    pub fn model(&self) -> Option<Model> {
        match &self.payload {
            FixturePayload::Frame(m) => Some(m.clone()),
            FixturePayload::Scenario(sc) => build_sensor_frame(sc).ok(),
            FixturePayload::Covering(_) => None,
        }
    }

    pub fn covering(&self) -> Option<&CoveringModel> {
        match &self.payload {
            FixturePayload::Covering(c) => Some(c),
            _ => None,
        }
    }
}

fn roster(agents: &str) -> Roster {
    Roster::new(agents.chars().map(String::from)).expect("distinct agent names")
}

fn group(r: &Roster, letters: &str) -> AgentSet {
    let names: Vec<String> = letters.chars().map(String::from).collect();
    r.group(names.iter().map(String::as_str))
        .expect("fixture agents exist")
}

fn labels(ids: &[&str], props: &[(&str, &str)]) -> Vec<BTreeSet<PropId>> {
    ids.iter()
        .map(|w| {
            props
                .iter()
                .filter(|(x, _)| x == w)
                .map(|(_, p)| PropId::new(*p).expect("valid atom"))
                .collect()
        })
        .collect()
}

type Classes<'a> = &'a [(&'a str, &'a [&'a [&'a str]])];

/// Builds a frame from generating classes, closed downwards.
fn frame(agents: &str, worlds: &[&str], classes: Classes, props: &[(&str, &str)]) -> Model {
    let r = roster(agents);
    let mut raw = RawFrame::new(r.clone(), worlds.iter().map(|w| String::from(*w)).collect());
    let idx = |w: &str| worlds.iter().position(|x| *x == w).expect("fixture world");
    for (g, cs) in classes {
        let u = group(&r, g);
        for c in cs.iter() {
            for x in c.iter() {
                for y in c.iter() {
                    raw.relate(u, idx(x), idx(y));
                }
            }
        }
    }
    raw.complete();
    let f = Frame::from_raw(&raw).expect("fixture frames are valid");
    Model::new(f, labels(worlds, props)).expect("one label set per world")
}

type Simplices<'a> = &'a [(&'a str, &'a str, &'a [&'a str])];

/// Builds a covering from `(id, colour, faces in agent order)` simplices and
/// `(world, colour, image)` worlds.
fn covering(
    agents: &str,
    simplices: Simplices,
    worlds: &[(&str, &str, &str)],
    props: &[(&str, &str)],
) -> CoveringModel {
    let r = roster(agents);
    let simplices = simplices
        .iter()
        .map(|(id, g, faces)| {
            let u = group(&r, g);
            RawSimplex {
                id: (*id).into(),
                group: u,
                faces: u.iter().zip(faces.iter()).map(|(a, f)| (a, (*f).into())).collect(),
            }
        })
        .collect();
    let raw = RawCovering {
        base: RawCset {
            roster: r.clone(),
            simplices,
        },
        worlds: worlds
            .iter()
            .map(|(id, g, img)| RawWorld {
                id: (*id).into(),
                color: group(&r, g),
                image: (*img).into(),
            })
            .collect(),
    };
    let cov = Covering::from_raw(&raw).expect("fixture coverings are valid");
    let ids: Vec<&str> = worlds.iter().map(|w| w.0).collect();
    CoveringModel::new(cov, labels(&ids, props)).expect("one label set per world")
}

fn fig3_frame() -> Model {
    frame(
        "abc",
        &["w0", "w1", "w1'", "w2", "w3", "w4", "w5"],
        &[
            ("", &[&["w0", "w1", "w1'", "w2", "w3", "w4"], &["w5"]]),
            ("a", &[&["w1", "w1'", "w2"], &["w3"], &["w4"]]),
            ("b", &[&["w0", "w1", "w1'"], &["w2", "w3"]]),
            ("c", &[&["w2", "w3"], &["w4"]]),
            ("ab", &[&["w1", "w1'"], &["w2"], &["w3"]]),
            ("ac", &[&["w2"], &["w3"], &["w4"]]),
            ("bc", &[&["w2"], &["w3"]]),
            ("abc", &[&["w2"], &["w3"]]),
        ],
        &[
            ("w0", "p0"),
            ("w1", "p1"),
            ("w1'", "q1"),
            ("w2", "p2"),
            ("w3", "p3"),
            ("w4", "p4"),
            ("w5", "p5"),
        ],
    )
}

fn fig2_covering() -> CoveringModel {
    covering(
        "abc",
        &[
            ("e", "", &[]),
            ("e5", "", &[]),
            ("a12", "a", &["e"]),
            ("a3", "a", &["e"]),
            ("a4", "a", &["e"]),
            ("b01", "b", &["e"]),
            ("b23", "b", &["e"]),
            ("c23", "c", &["e"]),
            ("c4", "c", &["e"]),
            ("ab1", "ab", &["b01", "a12"]),
            ("ab2", "ab", &["b23", "a12"]),
            ("ab3", "ab", &["b23", "a3"]),
            ("ac2", "ac", &["c23", "a12"]),
            ("ac3", "ac", &["c23", "a3"]),
            ("ac4", "ac", &["c4", "a4"]),
            ("bc2", "bc", &["c23", "b23"]),
            ("bc3", "bc", &["c23", "b23"]),
            ("t2", "abc", &["bc2", "ac2", "ab2"]),
            ("t3", "abc", &["bc3", "ac3", "ab3"]),
        ],
        &[
            ("w0", "b", "b01"),
            ("w1", "ab", "ab1"),
            ("w1'", "ab", "ab1"),
            ("w2", "abc", "t2"),
            ("w3", "abc", "t3"),
            ("w4", "ac", "ac4"),
            ("w5", "", "e5"),
        ],
        &[
            ("w0", "p0"),
            ("w1", "p1"),
            ("w1'", "q1"),
            ("w2", "p2"),
            ("w3", "p3"),
            ("w4", "p4"),
            ("w5", "p5"),
        ],
    )
}

const W3: &[&str] = &["w0", "w1", "w2"];
const W2: &[&str] = &["w0", "w1"];
const P0: &[(&str, &str)] = &[("w0", "p")];

fn small_frames() -> Vec<(&'static str, &'static [&'static str], &'static str, Model)> {
    alloc::vec![
        (
            "fig4-trivial-empty",
            &[][..],
            "trivial empty-group knowledge, with an empty world",
            frame("ab", W3, &[("", &[W3]), ("ab", &[W2])], P0),
        ),
        (
            "fig4-no-empty",
            &[],
            "no empty worlds, but two empty-group classes",
            frame("ab", W3, &[("", &[W2, &["w2"]]), ("ab", &[W2]), ("a", &[&["w2"]])], P0),
        ),
        (
            "fig4-proper",
            &[],
            "proper, with an isolated empty world",
            frame(
                "ab",
                W3,
                &[("", &[W2, &["w2"]]), ("ab", &[&["w0"], &["w1"]]), ("a", &[W2])],
                P0,
            ),
        ),
        (
            "fig5-maximal",
            &[],
            "maximal: every alive subgroup has its own sub-world",
            frame(
                "ab",
                W3,
                &[("", &[W3]), ("ab", &[&["w1"]]), ("a", &[&["w0", "w1"]]), ("b", &[&["w1", "w2"]])],
                P0,
            ),
        ),
        (
            "fig5-minimal",
            &[],
            "minimal: no world is a strict sub-world of another",
            frame("abc", W2, &[("", &[W2]), ("ab", &[&["w0"]]), ("ac", &[&["w1"]]), ("a", &[W2])], P0),
        ),
        (
            "pure-2-worlds",
            &[],
            "pure: all agents alive everywhere",
            frame("abc", W2, &[("", &[W2]), ("abc", &[&["w0"], &["w1"]]), ("bc", &[W2])], P0),
        ),
        (
            "nonstandard",
            &["fig5-bottom-right"],
            "non-standard group knowledge: a and b each confuse the worlds, together they do not",
            frame(
                "ab",
                W2,
                &[("", &[W2]), ("ab", &[&["w0"], &["w1"]]), ("a", &[W2]), ("b", &[W2])],
                P0,
            ),
        ),
    ]
}

fn small_coverings() -> Vec<(&'static str, &'static str, CoveringModel)> {
    const AB: &[(&str, &str, &[&str])] = &[
        ("e", "", &[]),
        ("va", "a", &["e"]),
        ("vb", "b", &["e"]),
        ("ab", "ab", &["vb", "va"]),
    ];
    alloc::vec![
        (
            "cov-teg",
            "one (-1)-simplex; the empty world sits on it",
            covering("ab", AB, &[("w0", "ab", "ab"), ("w1", "ab", "ab"), ("w2", "", "e")], P0),
        ),
        (
            "cov-ne",
            "no world on a (-1)-simplex",
            covering(
                "ab",
                &[
                    ("e0", "", &[]),
                    ("e1", "", &[]),
                    ("va0", "a", &["e0"]),
                    ("vb0", "b", &["e0"]),
                    ("va1", "a", &["e1"]),
                    ("ab0", "ab", &["vb0", "va0"]),
                ],
                &[("w0", "ab", "ab0"), ("w1", "ab", "ab0"), ("w2", "a", "va1")],
                P0,
            ),
        ),
        (
            "cov-prop",
            "proper: distinct worlds have distinct images",
            covering(
                "ab",
                &[
                    ("e0", "", &[]),
                    ("e1", "", &[]),
                    ("va", "a", &["e0"]),
                    ("vb0", "b", &["e0"]),
                    ("vb1", "b", &["e0"]),
                    ("ab0", "ab", &["vb0", "va"]),
                    ("ab1", "ab", &["vb1", "va"]),
                ],
                &[("w0", "ab", "ab0"), ("w1", "ab", "ab1"), ("w2", "", "e1")],
                P0,
            ),
        ),
        (
            "cov-max",
            "maximal: every non-empty simplex is annotated",
            covering("ab", AB, &[("w0", "a", "va"), ("w1", "ab", "ab"), ("w2", "b", "vb")], P0),
        ),
        (
            "cov-min",
            "minimal: every annotated simplex is maximal",
            covering(
                "abc",
                &[
                    ("e", "", &[]),
                    ("va", "a", &["e"]),
                    ("vb", "b", &["e"]),
                    ("vc", "c", &["e"]),
                    ("ab", "ab", &["vb", "va"]),
                    ("ac", "ac", &["vc", "va"]),
                ],
                &[("w0", "ab", "ab"), ("w1", "ac", "ac")],
                P0,
            ),
        ),
        (
            "cov-pure",
            "pure: every world is a full triangle",
            covering(
                "abc",
                &[
                    ("e", "", &[]),
                    ("va0", "a", &["e"]),
                    ("va1", "a", &["e"]),
                    ("vb", "b", &["e"]),
                    ("vc", "c", &["e"]),
                    ("ab0", "ab", &["vb", "va0"]),
                    ("ab1", "ab", &["vb", "va1"]),
                    ("ac0", "ac", &["vc", "va0"]),
                    ("ac1", "ac", &["vc", "va1"]),
                    ("bc", "bc", &["vc", "vb"]),
                    ("t0", "abc", &["bc", "ac0", "ab0"]),
                    ("t1", "abc", &["bc", "ac1", "ab1"]),
                ],
                &[("w0", "abc", "t0"), ("w1", "abc", "t1")],
                P0,
            ),
        ),
        (
            "cov-nsg",
            "two edges on the same pair of vertices",
            covering(
                "ab",
                &[
                    ("e", "", &[]),
                    ("va", "a", &["e"]),
                    ("vb", "b", &["e"]),
                    ("ab0", "ab", &["vb", "va"]),
                    ("ab1", "ab", &["vb", "va"]),
                ],
                &[("w0", "ab", "ab0"), ("w1", "ab", "ab1")],
                P0,
            ),
        ),
    ]
}

fn fig1_sset() -> CoveringModel {
    covering(
        "abc",
        &[
            ("e", "", &[]),
            ("a1", "a", &["e"]),
            ("a2", "a", &["e"]),
            ("b", "b", &["e"]),
            ("c", "c", &["e"]),
            ("ab1", "ab", &["b", "a1"]),
            ("ab2", "ab", &["b", "a2"]),
            ("ac1", "ac", &["c", "a1"]),
            ("ac2", "ac", &["c", "a2"]),
            ("bc1", "bc", &["c", "b"]),
            ("bc2", "bc", &["c", "b"]),
            ("t1", "abc", &["bc1", "ac1", "ab1"]),
            ("t2", "abc", &["bc2", "ac2", "ab2"]),
        ],
        &[("w1", "abc", "t1"), ("w2", "abc", "t2")],
        &[],
    )
}

fn expected(name: &str) -> Vec<(Property, bool)> {
    use Property::*;
    let sgk = (StandardGroupKnowledge, true);
    match name {
        "fig3-frame" => alloc::vec![
            (TrivialEmptyGroup, false),
            (NoEmptyWorlds, false),
            (Proper, false),
            (Pure, false),
            (StandardGroupKnowledge, false),
        ],
        "fig2-covering" => alloc::vec![(Proper, false), (StandardGroupKnowledge, false)],
        "fig4-trivial-empty" | "cov-teg" => {
            alloc::vec![(TrivialEmptyGroup, true), (NoEmptyWorlds, false), (Proper, false), sgk]
        }
        "fig4-no-empty" | "cov-ne" => {
            alloc::vec![(TrivialEmptyGroup, false), (NoEmptyWorlds, true), (Proper, false), sgk]
        }
        "fig4-proper" | "cov-prop" => {
            alloc::vec![(TrivialEmptyGroup, false), (NoEmptyWorlds, false), (Proper, true), sgk]
        }
        "fig5-maximal" | "cov-max" => alloc::vec![(Maximal, true), sgk],
        "fig5-minimal" | "cov-min" => alloc::vec![(Minimal, true), sgk],
        "pure-2-worlds" | "cov-pure" => alloc::vec![(Pure, true), sgk],
        "nonstandard" | "cov-nsg" | "fig1-sset" => alloc::vec![(StandardGroupKnowledge, false)],
        "sensor-network" => alloc::vec![(Pure, true), (TrivialEmptyGroup, true)],
        _ => Vec::new(),
    }
}

/// Every built-in fixture, in a stable order.
pub fn builtin_fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    let mut push = |name, aliases, description, payload| {
        out.push(Fixture {
            name,
            aliases,
            description,
            payload,
            expected: expected(name),
        })
    };
    push(
        "fig3-frame",
        &["gef-example"][..],
        "seven-world frame over agents a, b, c",
        FixturePayload::Frame(fig3_frame()),
    );
    push(
        "fig2-covering",
        &["cset-example"],
        "the covering of the seven-world frame",
        FixturePayload::Covering(fig2_covering()),
    );
    for (name, aliases, description, m) in small_frames() {
        push(name, aliases, description, FixturePayload::Frame(m));
    }
    for (name, description, c) in small_coverings() {
        push(name, &[], description, FixturePayload::Covering(c));
    }
    push(
        "fig1-sset",
        &[],
        "two triangles sharing two vertices but not the edge between them",
        FixturePayload::Covering(fig1_sset()),
    );
    push(
        "sensor-network",
        &["sensors"],
        "three disk sensors and five target configurations",
        FixturePayload::Scenario(three_sensor_scenario()),
    );
    out
}

/// Looks a fixture up by name or alias.
pub fn fixture(name: &str) -> Option<Fixture> {
    builtin_fixtures()
        .into_iter()
        .find(|f| f.name == name || f.aliases.contains(&name))
}

/// The curated counterexample for each characteristic axiom: a frame
/// lacking the corresponding property.
pub fn counterexamples() -> BTreeMap<&'static str, &'static str> {
    [
        ("NE", "fig4-trivial-empty"),
        ("P", "fig4-no-empty"),
        ("Max", "fig5-minimal"),
        ("Min", "fig5-maximal"),
        ("Pure", "fig4-proper"),
    ]
    .into_iter()
    .collect()
}
