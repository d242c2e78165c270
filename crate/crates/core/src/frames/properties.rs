use alloc::string::ToString;
use alloc::vec;
use core::fmt;
use core::str::FromStr;

use super::frame::Frame;
use crate::logic::AgentSet;
use crate::witness::{Verdict, WitnessItem};

/// The seven structural sub-class properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    TrivialEmptyGroup,
    NoEmptyWorlds,
    Proper,
    Maximal,
    Minimal,
    Pure,
    StandardGroupKnowledge,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::TrivialEmptyGroup,
        Property::NoEmptyWorlds,
        Property::Proper,
        Property::Maximal,
        Property::Minimal,
        Property::Pure,
        Property::StandardGroupKnowledge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::TrivialEmptyGroup => "TrivialEmptyGroup",
            Property::NoEmptyWorlds => "NoEmptyWorlds",
            Property::Proper => "Proper",
            Property::Maximal => "Maximal",
            Property::Minimal => "Minimal",
            Property::Pure => "Pure",
            Property::StandardGroupKnowledge => "StandardGroupKnowledge",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown property `{0}`")]
pub struct UnknownProperty(pub alloc::string::String);

impl FromStr for Property {
    type Err = UnknownProperty;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownProperty(s.to_string()))
    }
}

fn world(f: &Frame, w: usize) -> WitnessItem {
    WitnessItem::World(f.world_id(w).into())
}

/// Evaluates the quantified clause of `prop` on `frame`. Witnesses are the
/// lexicographically least counterexample (worlds by id, then groups by
/// bit order).
pub fn check_property(frame: &Frame, prop: Property) -> Verdict {
    let order = frame.id_order();
    let n_agents = frame.agent_count();
    match prop {
        Property::TrivialEmptyGroup => {
            for &w in order {
                for &v in order {
                    if !frame.related(AgentSet::EMPTY, w, v) {
                        return Verdict::fail(vec![world(frame, w), world(frame, v)]);
                    }
                }
            }
            Verdict::PASS
        }
        Property::NoEmptyWorlds => match order.iter().find(|&&w| frame.live(w).is_empty()) {
            Some(&w) => Verdict::fail(vec![world(frame, w)]),
            None => Verdict::PASS,
        },
        Property::Proper => {
            for &w in order {
                for &v in order {
                    if w != v
                        && frame.live(w) == frame.live(v)
                        && frame.related(frame.live(w), w, v)
                    {
                        return Verdict::fail(vec![world(frame, w), world(frame, v)]);
                    }
                }
            }
            Verdict::PASS
        }
        Property::Maximal => {
            for &w in order {
                for u in frame.live(w).subsets().filter(|u| !u.is_empty()) {
                    let found = frame
                        .per(u)
                        .class(w)
                        .iter()
                        .any(|&v| frame.live(v) == u);
                    if !found {
                        return Verdict::fail(vec![world(frame, w), WitnessItem::Group(u)]);
                    }
                }
            }
            Verdict::PASS
        }
        Property::Minimal => {
            for &w in order {
                for &v in order {
                    let (lw, lv) = (frame.live(w), frame.live(v));
                    if lw.is_strict_subset(lv) && frame.related(lw, w, v) {
                        return Verdict::fail(vec![world(frame, w), world(frame, v)]);
                    }
                }
            }
            Verdict::PASS
        }
        Property::Pure => {
            let full = AgentSet::full(n_agents);
            match order.iter().find(|&&w| frame.live(w) != full) {
                Some(&w) => Verdict::fail(vec![world(frame, w)]),
                None => Verdict::PASS,
            }
        }
        Property::StandardGroupKnowledge => {
            // Only non-empty groups: the empty premise is vacuous and would
            // otherwise restate trivial empty-group knowledge.
            for &w in order {
                for &v in order {
                    for u in frame.roster().groups().filter(|u| u.len() >= 2) {
                        if u.iter().all(|a| frame.related(AgentSet::singleton(a), w, v))
                            && !frame.related(u, w, v)
                        {
                            return Verdict::fail(vec![
                                world(frame, w),
                                world(frame, v),
                                WitnessItem::Group(u),
                            ]);
                        }
                    }
                }
            }
            Verdict::PASS
        }
    }
}

/// Every property, in [`Property::ALL`] order.
pub fn check_all(frame: &Frame) -> [(Property, Verdict); 7] {
    Property::ALL.map(|p| (p, check_property(frame, p)))
}
