//! Chromatic augmented semi-simplicial sets and epistemic coverings.

mod covering;
mod cset;
mod functors;

pub use covering::{
    check_covering_morphism, check_covering_property, validate_covering, Covering,
    CoveringModel, CoveringMorphism, CoveringMorphismError, CoveringViolation, RawCovering,
    RawWorld, TopWorld,
};
pub use cset::{validate_cset, Cset, CsetViolation, Level, RawCset, RawSimplex, Simplex};
pub use functors::{
    annotations, base_census, canonical_covering, canonical_model, kappa, kappa_morphism, sigma,
    sigma_morphism, CanonicalCovering, CanonicalModel, SimplexKey,
};
