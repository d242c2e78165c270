mod common;

use std::collections::BTreeMap;

use common::Naive;
use episim_core::csets::{base_census, canonical_covering, check_covering_property, kappa, sigma};
use episim_core::frames::check_property;
use episim_core::logic::parse_formula;
use episim_core::scenarios::{builtin_fixtures, fixture, three_sensor_scenario, build_sensor_frame};
use episim_core::{AgentSet, Model};

fn model(name: &str) -> Model {
    fixture(name).unwrap().model().unwrap()
}

#[test]
fn fixtures_meet_their_stated_verdicts() {
    let all = builtin_fixtures();
    assert!(all.len() >= 18);
    for f in &all {
        assert!(!f.expected.is_empty(), "{}", f.name);
        for &(p, want) in &f.expected {
            let got = match (f.model(), f.covering()) {
                (Some(m), _) => check_property(m.frame(), p).holds,
                (None, Some(c)) => check_covering_property(c.covering(), p).holds,
                _ => unreachable!(),
            };
            assert_eq!(got, want, "{} {p}", f.name);
        }
    }
}

#[test]
fn aliases_resolve() {
    assert_eq!(fixture("fig5-bottom-right").unwrap().name, "nonstandard");
    assert!(fixture("no-such-fixture").is_none());
}

#[test]
fn seven_world_frame_matches_its_description() {
    let m = model("fig3-frame");
    let f = m.frame();
    let g = |s: &str| {
        let names: Vec<String> = s.chars().map(String::from).collect();
        f.roster().group(names.iter().map(String::as_str)).unwrap()
    };
    let w = |id: &str| f.world(id).unwrap();
    assert_eq!(f.world_count(), 7);
    let lives = [
        ("w0", "b"),
        ("w1", "ab"),
        ("w1'", "ab"),
        ("w2", "abc"),
        ("w3", "abc"),
        ("w4", "ac"),
        ("w5", ""),
    ];
    for (id, l) in lives {
        assert_eq!(f.live(w(id)), g(l), "{id}");
    }
    for other in ["w0", "w1", "w1'", "w2", "w3", "w4"] {
        assert!(!f.related(AgentSet::EMPTY, w("w5"), w(other)));
        if other != "w4" {
            assert!(f.related(AgentSet::EMPTY, w("w4"), w(other)));
            assert!(!f.related(g("a"), w("w4"), w(other)));
            assert!(!f.related(g("c"), w("w4"), w(other)));
        }
    }
    assert!(f.related(g("b"), w("w2"), w("w3")));
    assert!(f.related(g("c"), w("w2"), w("w3")));
    assert!(!f.related(g("bc"), w("w2"), w("w3")));
    assert!(f.related(g("ab"), w("w1"), w("w1'")));
    assert!(f.is_subworld("w0", "w1").unwrap());
    assert!(f.is_subworld("w0", "w1'").unwrap());

    let r = f.roster();
    let sat = |id: &str, s: &str| m.satisfies_at(id, &parse_formula(s, r).unwrap()).unwrap();
    assert!(sat("w2", "D{b,c} p2"));
    assert!(!sat("w2", "K{b} p2"));
    assert!(!sat("w2", "K{c} p2"));
    assert!(sat("w5", "D{a} false"));
    assert!(sat("w0", "dead{a,c} & alive{b}"));
}

#[test]
fn seven_world_frame_covering() {
    let m = model("fig3-frame");
    let c = sigma(&m);
    let census: BTreeMap<isize, usize> = [(0, 7), (1, 8), (2, 2), (-1, 2)].into_iter().collect();
    assert_eq!(base_census(&c), census);
    let stored = fixture("fig2-covering").unwrap();
    let stored = stored.covering().unwrap();
    assert_eq!(canonical_covering(&c), canonical_covering(stored));
    assert_eq!(base_census(stored), census);

    let cov = stored.covering();
    let w = |id: &str| cov.world(id).unwrap();
    assert_eq!(cov.image(w("w1")), cov.image(w("w1'")));
    let b = cov.base();
    let edge = cov.image(w("w1"));
    assert_eq!(cov.image(w("w0")), b.face_to(edge, AgentSet::singleton(1)));
    assert!(!b.is_simplicial_complex().holds);
    assert_eq!(canonical_covering(&sigma(&kappa(stored))), canonical_covering(stored));
}

/// Maximal groups per pair from the sensor figure; agents 1, 2, 3 are
/// sensors s1, s2, s3.
const SENSOR_TABLE: [(&str, &str, &[&[usize]]); 10] = [
    ("w1", "w2", &[&[1], &[2, 3]]),
    ("w2", "w3", &[&[1, 2], &[3]]),
    ("w3", "w4", &[&[1], &[2, 3]]),
    ("w4", "w5", &[&[1, 3], &[2, 3]]),
    ("w5", "w1", &[&[1], &[2], &[3]]),
    ("w2", "w5", &[&[1, 2], &[1, 3]]),
    ("w2", "w4", &[&[2], &[1, 3]]),
    ("w3", "w5", &[&[1, 2], &[2, 3]]),
    ("w1", "w4", &[&[1, 2], &[3]]),
    ("w1", "w3", &[&[2], &[1, 3]]),
];

#[test]
fn sensor_frame_matches_the_figure() {
    let m = build_sensor_frame(&three_sensor_scenario()).unwrap();
    let f = m.frame();
    assert!(f.violations().is_empty());
    let naive = Naive::of(&m);
    let mask = |g: &[usize]| g.iter().fold(0u32, |a, s| a | 1 << (s - 1));
    for (x, y, groups) in SENSOR_TABLE {
        let mut want: Vec<u32> = groups.iter().map(|g| mask(g)).collect();
        want.sort();
        let (i, j) = (f.world(x).unwrap(), f.world(y).unwrap());
        assert_eq!(naive.maximal_groups(i, j), want, "{x}-{y}");
        assert_eq!(naive.maximal_groups(j, i), want, "{y}-{x}");
    }
    for w in 0..5 {
        assert_eq!(naive.maximal_groups(w, w), vec![0b111]);
        assert_eq!(f.live(w), AgentSet::full(3));
    }
}
