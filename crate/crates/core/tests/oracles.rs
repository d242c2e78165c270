mod common;

use common::{cfg, rng, Naive};
use episim_core::csets::{check_covering_property, sigma};
use episim_core::frames::check_property;
use episim_core::gen::{atoms, random_formula, random_frame, random_model};
use episim_core::{Model, Property};

#[test]
fn evaluation_matches_brute_force() {
    let mut r = rng(1);
    let ps = atoms(3);
    for i in 0..300 {
        let m = random_model(&mut r, &cfg(1 + i % 4, 1 + i % 7), &ps);
        let naive = Naive::of(&m);
        for _ in 0..20 {
            let phi = random_formula(&mut r, m.frame().agent_count(), &ps, 4);
            let ext = m.extension(&phi);
            for w in 0..m.frame().world_count() {
                let expect = naive.sat(w, &phi);
                assert_eq!(m.satisfies(w, &phi), expect);
                assert_eq!(ext.contains(w), expect);
            }
        }
    }
}

#[test]
fn covering_semantics_match_frame_semantics() {
    let mut r = rng(2);
    let ps = atoms(2);
    for i in 0..200 {
        let m = random_model(&mut r, &cfg(1 + i % 3, 1 + i % 6), &ps);
        let naive = Naive::of(&m);
        let cov = sigma(&m);
        for _ in 0..10 {
            let phi = random_formula(&mut r, m.frame().agent_count(), &ps, 3);
            for w in 0..m.frame().world_count() {
                let id = m.frame().world_id(w);
                assert_eq!(cov.satisfies_at(id, &phi).unwrap(), naive.sat(w, &phi));
            }
        }
    }
}

#[test]
fn frame_properties_match_definitions() {
    let mut r = rng(3);
    let mut seen = [[0usize; 2]; 7];
    for i in 0..1500 {
        let mut c = cfg(1 + i % 4, 1 + i % 6);
        c.density = [0.1, 0.3, 0.6][i % 3];
        c.trivial_empty = i % 5 == 0;
        c.no_empty = i % 7 == 0;
        c.pure = i % 11 == 0;
        let f = random_frame(&mut r, &c);
        let naive = Naive::of(&Model::bare(f.clone()));
        for (k, p) in Property::ALL.into_iter().enumerate() {
            let v = check_property(&f, p);
            assert_eq!(v.holds, naive.property(p), "{p} on {:?}", f.to_raw());
            assert_eq!(v.holds, v.witness.is_none());
            seen[k][v.holds as usize] += 1;
        }
    }
    // both outcomes were exercised for every property
    for (k, s) in seen.iter().enumerate() {
        assert!(s[0] > 0 && s[1] > 0, "{:?}: {s:?}", Property::ALL[k]);
    }
}

#[test]
fn covering_properties_agree_with_frame_properties() {
    let mut r = rng(4);
    let ps = atoms(1);
    for i in 0..600 {
        let mut c = cfg(1 + i % 3, 1 + i % 6);
        c.trivial_empty = i % 4 == 0;
        c.pure = i % 9 == 0;
        let m = random_model(&mut r, &c, &ps);
        let cov = sigma(&m);
        for p in Property::ALL {
            assert_eq!(
                check_covering_property(cov.covering(), p).holds,
                check_property(m.frame(), p).holds,
                "{p}"
            );
        }
    }
}

#[test]
fn maximal_groups_match_brute_force() {
    let mut r = rng(5);
    for i in 0..200 {
        let f = random_frame(&mut r, &cfg(1 + i % 4, 1 + i % 5));
        let naive = Naive::of(&Model::bare(f.clone()));
        for x in 0..f.world_count() {
            for y in 0..f.world_count() {
                let mut got: Vec<u32> = f.maximal_groups(x, y).iter().map(|g| g.bits()).collect();
                got.sort();
                assert_eq!(got, naive.maximal_groups(x, y));
            }
        }
    }
}
