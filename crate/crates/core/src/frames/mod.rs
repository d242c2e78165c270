//! Generalized epistemic frames and models.

mod frame;
mod morphism;
mod per;
mod properties;
mod unravel;

pub use frame::{validate_frame, DStep, Frame, FrameError, Model, ModelError, RawFrame, Violation};
pub use morphism::{
    bounded_bisimilarity, check_functional_bisimulation, check_functional_bisimulation_at,
    check_morphism, modal_equiv_upto, resolve_map, MapError,
};
pub use per::Per;
pub use properties::{check_all, check_property, Property, UnknownProperty};
pub use unravel::{unravel, Unraveling};
