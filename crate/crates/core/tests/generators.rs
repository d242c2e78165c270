mod common;

use common::{cfg, rng};
use episim_core::frames::check_property;
use episim_core::gen::random_frame;
use episim_core::Property;

fn holds(f: &episim_core::Frame, p: Property) -> bool {
    check_property(f, p).holds
}

#[test]
fn class_flags_produce_their_class() {
    let mut r = rng(40);
    for i in 0..300 {
        let mut c = cfg(1 + i % 3, 1 + i % 5);
        c.no_empty = true;
        c.density = 0.5;
        match i % 3 {
            0 => {
                c.proper = true;
                c.maximal = true;
            }
            1 => {
                c.proper = true;
                c.minimal = true;
            }
            _ => {
                c.proper = true;
                c.pure = true;
            }
        }
        let f = random_frame(&mut r, &c);
        assert!(f.violations().is_empty());
        assert!(holds(&f, Property::NoEmptyWorlds));
        assert!(holds(&f, Property::Proper), "{:?}", f.to_raw());
        if c.maximal {
            assert!(holds(&f, Property::Maximal), "{:?}", f.to_raw());
        }
        if c.minimal {
            assert!(holds(&f, Property::Minimal), "{:?}", f.to_raw());
        }
        if c.pure {
            assert!(holds(&f, Property::Pure));
        }
    }
}

#[test]
fn maximal_frames_are_not_all_trivial() {
    let mut r = rng(41);
    let mut grown = 0;
    for i in 0..100 {
        let mut c = cfg(3, 1 + i % 4);
        c.maximal = true;
        let f = random_frame(&mut r, &c);
        if f.world_count() > c.worlds {
            grown += 1;
        }
    }
    assert!(grown > 10);
}
