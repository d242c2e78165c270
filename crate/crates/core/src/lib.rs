//! Epistemic logic with distributed knowledge over two isomorphic model
//! classes: generalized epistemic models (one partial equivalence relation
//! per agent group) and epistemic covering models (chromatic augmented
//! semi-simplicial sets with a projective top space).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, DOT export and
//! the command line live in the companion `episim` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod axioms;
pub mod bits;
pub mod csets;
pub mod frames;
pub mod logic;
pub mod scenarios;
pub mod witness;

#[cfg(feature = "gen")]
pub mod gen;

pub use axioms::{AxiomScheme, LogicVariant};
pub use csets::{Cset, Covering, CoveringModel};
pub use frames::{Frame, Model, Per, Property, RawFrame};
pub use logic::{AgentSet, Formula, PropId, Roster};
pub use witness::{Verdict, Witness, WitnessItem};
