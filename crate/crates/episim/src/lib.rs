//! File formats, Graphviz export and the `episim` command line, on top of
//! `episim-core`.

pub mod cli;
pub mod dot;
pub mod io;

pub use cli::{run, Outcome};
