//! Verdicts with concrete counterexamples.

use alloc::string::String;
use alloc::vec::Vec;

use crate::logic::{AgentSet, PropId, Roster};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum WitnessItem {
    World(String),
    Group(AgentSet),
    Simplex(String),
    Prop(PropId),
    /// Name of a violated clause, e.g. `back`.
    Clause(&'static str),
}

/// A tuple of items explaining why a check failed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Witness(pub Vec<WitnessItem>);

impl Witness {
    pub fn new(items: Vec<WitnessItem>) -> Self {
        Witness(items)
    }

    /// Renders as `(w0,w1,{a,b})`.
    pub fn render(&self, roster: &Roster) -> String {
        let mut out = String::from("(");
        for (i, item) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            match item {
                WitnessItem::World(w) | WitnessItem::Simplex(w) => out.push_str(w),
                WitnessItem::Group(g) => out.push_str(&roster.fmt_group(*g)),
                WitnessItem::Prop(p) => out.push_str(p.as_str()),
                WitnessItem::Clause(c) => out.push_str(c),
            }
        }
        out.push(')');
        out
    }

    pub fn worlds(&self) -> impl Iterator<Item = &str> {
        self.0.iter().filter_map(|i| match i {
            WitnessItem::World(w) => Some(w.as_str()),
            _ => None,
        })
    }
}

/// Outcome of a quantified check: `holds`, or a witness of failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub const PASS: Verdict = Verdict {
        holds: true,
        witness: None,
    };

    pub fn fail(items: Vec<WitnessItem>) -> Self {
        Verdict {
            holds: false,
            witness: Some(Witness(items)),
        }
    }

    pub fn from_witness(w: Option<Witness>) -> Self {
        Verdict {
            holds: w.is_none(),
            witness: w,
        }
    }
}
