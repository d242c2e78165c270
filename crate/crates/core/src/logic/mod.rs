//! The language of distributed knowledge: agents, groups, formulas and their
//! concrete syntax.

mod agents;
mod formula;
mod parser;

pub use agents::{Agent, AgentSet, Roster, RosterError, Subsets, MAX_AGENTS};
pub use formula::{Formula, FormulaDisplay, PropId, PropIdError};
pub use parser::{parse_formula, ParseError};
