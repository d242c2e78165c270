mod common;

use common::{fixture_names, fixture_path};
use episim::io::{self, Document, LoadError};
use episim_core::csets::{canonical_covering, canonical_model};
use episim_core::scenarios::{builtin_fixtures, FixturePayload};

#[test]
fn every_fixture_file_loads_strictly() {
    let names = fixture_names();
    assert_eq!(names.len(), builtin_fixtures().len());
    for n in names {
        let d = io::load(&fixture_path(&n), false).unwrap_or_else(|e| panic!("{n}: {e}"));
        assert!(matches!(d.kind(), "frame" | "covering" | "scenario"));
    }
}

#[test]
fn fixture_files_match_the_library() {
    for f in builtin_fixtures() {
        let d = io::load(&fixture_path(f.name), false).unwrap();
        match (&f.payload, &d) {
            (FixturePayload::Frame(m), Document::Frame(m2)) => {
                assert_eq!(canonical_model(m), canonical_model(m2), "{}", f.name)
            }
            (FixturePayload::Covering(x), Document::Covering(x2)) => {
                assert_eq!(canonical_covering(x), canonical_covering(x2), "{}", f.name)
            }
            (FixturePayload::Scenario(sc), Document::Scenario(sc2, _)) => assert_eq!(sc, sc2),
            _ => panic!("{} changed kind", f.name),
        }
    }
}

#[test]
fn write_then_read_is_identity() {
    for n in fixture_names() {
        let text = std::fs::read_to_string(fixture_path(&n)).unwrap();
        let d = io::parse_document(&text, false).unwrap();
        assert_eq!(io::document_json(&d), text, "{n}");
    }
}

const BROKEN: &str = r#"{"kind":"frame","agents":["a","b"],
  "worlds":[{"id":"x","props":["p"]},{"id":"y"}],
  "relations":[{"group":["a","b"],"pairs":[["x","y"]]}]}"#;

#[test]
fn strict_mode_reports_violations() {
    let e = io::parse_document(BROKEN, false).unwrap_err();
    assert!(e.is_validation());
    let LoadError::Invalid(vs) = e else { panic!() };
    assert!(vs.iter().any(|v| v.starts_with("PER-symmetry {a,b} (x,y)")), "{vs:?}");
    assert!(vs.iter().any(|v| v.starts_with("empty-group-domain")));
}

#[test]
fn complete_mode_closes_downward_and_adds_the_empty_diagonal() {
    let Document::Frame(m) = io::parse_document(BROKEN, true).unwrap() else { panic!() };
    let f = m.frame();
    let (x, y) = (f.world("x").unwrap(), f.world("y").unwrap());
    for g in f.roster().groups() {
        assert!(f.related(g, x, y) && f.related(g, y, x), "{}", f.roster().fmt_group(g));
    }
}

#[test]
fn classes_are_shorthand_for_pairs() {
    let text = r#"{"kind":"frame","agents":["a"],"worlds":[{"id":"x"},{"id":"y"},{"id":"z"}],
      "relations":[{"group":[],"classes":[["x","y","z"]]},{"group":["a"],"classes":[["x","y"],["z"]]}]}"#;
    let Document::Frame(m) = io::parse_document(text, false).unwrap() else { panic!() };
    let f = m.frame();
    assert!(f.related(f.roster().full(), 0, 1));
    assert!(!f.related(f.roster().full(), 0, 2));
}

#[test]
fn syntax_errors_are_not_validation_errors() {
    let cases = [
        "not json",
        r#"{"agents":[],"worlds":[]}"#,
        r#"{"kind":"graph"}"#,
        r#"{"kind":"frame","agents":["a"],"worlds":[],"extra":1}"#,
        r#"{"kind":"frame","agents":["a"],"worlds":[{"id":"x"}],"relations":[{"group":["z"],"pairs":[]}]}"#,
        r#"{"kind":"frame","agents":["a"],"worlds":[{"id":"x"}],"relations":[{"group":[],"pairs":[["x","q"]]}]}"#,
        r#"{"kind":"frame","agents":["a"],"worlds":[{"id":"x","props":["Bad"]}]}"#,
        r#"{"kind":"frame","agents":["a","a"],"worlds":[]}"#,
    ];
    for c in cases {
        let e = io::parse_document(c, false).unwrap_err();
        assert!(!e.is_validation(), "{c}: {e}");
    }
}

#[test]
fn kind_comes_from_the_document_not_the_file_name() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("model.covering");
    std::fs::copy(fixture_path("nonstandard"), &p).unwrap();
    assert_eq!(io::load(&p, false).unwrap().kind(), "frame");
}

#[test]
fn covering_errors_name_the_simplex() {
    let text = r#"{"kind":"covering","agents":["a"],
      "base":{"simplices":[{"id":"e","group":[]},{"id":"v","group":["a"],"faces":{"a":"nope"}}]},
      "worlds":[{"id":"w","color":["a"],"image":"v"}]}"#;
    let LoadError::Invalid(vs) = io::parse_document(text, false).unwrap_err() else { panic!() };
    assert!(vs.iter().any(|v| v.contains('v')), "{vs:?}");
}

#[test]
fn sensor_targets_on_a_boundary_are_rejected() {
    let text = r#"{"kind":"scenario","sensors":[{"name":"s1","center":[0,0],"radius":1}],
      "worlds":[{"id":"w1","targets":[[1,0]]}]}"#;
    let e = io::parse_document(text, false).unwrap_err();
    assert!(e.is_validation());
    assert!(e.to_string().contains("boundary"), "{e}");
}
