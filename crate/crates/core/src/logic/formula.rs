use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use core::fmt;

use super::agents::{AgentSet, Roster};

/// Name of the reserved atom used to encode `true` as `__t | !__t`.
pub(crate) const TRUE_ATOM: &str = "__t";

/// An atomic proposition name, `[a-z][a-zA-Z0-9_]*`, excluding keywords.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropId(String);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid proposition name `{0}`")]
pub struct PropIdError(pub String);

impl PropId {
    pub fn new(name: impl Into<String>) -> Result<Self, PropIdError> {
        let name = name.into();
        if is_prop_name(&name) {
            Ok(PropId(name))
        } else {
            Err(PropIdError(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub(crate) fn reserved_true() -> Self {
        PropId(TRUE_ATOM.to_owned())
    }

    pub fn is_reserved(&self) -> bool {
        self.0 == TRUE_ATOM
    }
}

impl fmt::Debug for PropId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for PropId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) const KEYWORDS: [&str; 7] = ["D", "K", "hatD", "alive", "dead", "true", "false"];

pub(crate) fn is_prop_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !KEYWORDS.contains(&s)
}

/// A formula of the language with distributed knowledge. Only the four
/// primitive constructors exist; every other connective is a definition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    Atom(PropId),
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    D(AgentSet, Box<Formula>),
}

impl Formula {
    pub fn atom(p: PropId) -> Self {
        Formula::Atom(p)
    }

    /// Convenience for tests and fixtures; panics on an invalid name.
    pub fn prop(name: &str) -> Self {
        Formula::Atom(PropId::new(name).expect("valid proposition name"))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Neg(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::not(Formula::and(Formula::not(l), Formula::not(r)))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::not(Formula::and(l, Formula::not(r)))
    }

    pub fn d(group: AgentSet, f: Formula) -> Self {
        Formula::D(group, Box::new(f))
    }

    /// `K_a φ := D_{a} φ`.
    pub fn k(agent: usize, f: Formula) -> Self {
        Formula::d(AgentSet::singleton(agent), f)
    }

    /// `hatD_U φ := ¬D_U ¬φ`.
    pub fn hat_d(group: AgentSet, f: Formula) -> Self {
        Formula::not(Formula::d(group, Formula::not(f)))
    }

    /// `true`, encoded as `__t ∨ ¬__t`.
    pub fn top() -> Self {
        let t = Formula::Atom(PropId::reserved_true());
        Formula::or(t.clone(), Formula::not(t))
    }

    pub fn bottom() -> Self {
        Formula::not(Formula::top())
    }

    /// `alive_U := hatD_U true`.
    pub fn alive(group: AgentSet) -> Self {
        Formula::hat_d(group, Formula::top())
    }

    /// `dead_a := K_a false`.
    pub fn dead_agent(agent: usize) -> Self {
        Formula::k(agent, Formula::bottom())
    }

    /// `dead_U := ⋀_{a∈U} dead_a`, left-nested in ascending agent order;
    /// `dead_∅` is `true`.
    pub fn dead(group: AgentSet) -> Self {
        let mut agents = group.iter();
        match agents.next() {
            None => Formula::top(),
            Some(first) => agents.fold(Formula::dead_agent(first), |acc, a| {
                Formula::and(acc, Formula::dead_agent(a))
            }),
        }
    }

    /// Conjunction of a non-empty list, left-nested; `true` for an empty one.
    pub fn conj<I: IntoIterator<Item = Formula>>(parts: I) -> Self {
        let mut it = parts.into_iter();
        match it.next() {
            None => Formula::top(),
            Some(first) => it.fold(first, Formula::and),
        }
    }

    /// Disjunction of a list; `false` for an empty one.
    pub fn disj<I: IntoIterator<Item = Formula>>(parts: I) -> Self {
        let mut it = parts.into_iter();
        match it.next() {
            None => Formula::bottom(),
            Some(first) => it.fold(first, Formula::or),
        }
    }

    pub fn is_top(&self) -> bool {
        // ¬(¬t ∧ ¬¬t)
        let Formula::Neg(inner) = self else { return false };
        let Formula::And(l, r) = inner.as_ref() else { return false };
        let (Formula::Neg(l), Formula::Neg(r)) = (l.as_ref(), r.as_ref()) else {
            return false;
        };
        let Formula::Neg(r) = r.as_ref() else { return false };
        matches!((l.as_ref(), r.as_ref()),
            (Formula::Atom(a), Formula::Atom(b)) if a.is_reserved() && b.is_reserved())
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Formula::Neg(inner) if inner.is_top())
    }

    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Neg(f) => f.modal_depth(),
            Formula::And(l, r) => l.modal_depth().max(r.modal_depth()),
            Formula::D(_, f) => 1 + f.modal_depth(),
        }
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Neg(f) | Formula::D(_, f) => 1 + f.size(),
            Formula::And(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Atoms occurring in the formula, excluding the reserved `true` atom.
    pub fn atoms(&self) -> BTreeSet<PropId> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<PropId>) {
        match self {
            Formula::Atom(p) if !p.is_reserved() => {
                out.insert(p.clone());
            }
            Formula::Atom(_) => {}
            Formula::Neg(f) | Formula::D(_, f) => f.collect_atoms(out),
            Formula::And(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Union of every group mentioned under a `D`.
    pub fn agents(&self) -> AgentSet {
        match self {
            Formula::Atom(_) => AgentSet::EMPTY,
            Formula::Neg(f) => f.agents(),
            Formula::And(l, r) => l.agents().union(r.agents()),
            Formula::D(u, f) => u.union(f.agents()),
        }
    }

    /// Replaces atoms according to `subst`; atoms it maps to `None` stay.
    pub fn substitute(&self, subst: &dyn Fn(&PropId) -> Option<Formula>) -> Formula {
        match self {
            Formula::Atom(p) => subst(p).unwrap_or_else(|| self.clone()),
            Formula::Neg(f) => Formula::not(f.substitute(subst)),
            Formula::And(l, r) => Formula::and(l.substitute(subst), r.substitute(subst)),
            Formula::D(u, f) => Formula::d(*u, f.substitute(subst)),
        }
    }

    /// Printer in the concrete syntax accepted by [`super::parse_formula`].
    pub fn display<'a>(&'a self, roster: &'a Roster) -> FormulaDisplay<'a> {
        FormulaDisplay {
            formula: self,
            roster,
        }
    }
}

/// Borrowed formula + roster pair implementing [`fmt::Display`].
pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    roster: &'a Roster,
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self.formula, self.roster, f)
    }
}

fn write_formula(phi: &Formula, roster: &Roster, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if phi.is_top() {
        return f.write_str("true");
    }
    if phi.is_bottom() {
        return f.write_str("false");
    }
    match phi {
        Formula::Atom(p) => f.write_str(p.as_str()),
        Formula::Neg(inner) => {
            f.write_str("!")?;
            write_formula(inner, roster, f)
        }
        Formula::And(l, r) => {
            f.write_str("(")?;
            write_formula(l, roster, f)?;
            f.write_str(" & ")?;
            write_formula(r, roster, f)?;
            f.write_str(")")
        }
        Formula::D(u, inner) => {
            write!(f, "D{} ", roster.fmt_group(*u))?;
            write_formula(inner, roster, f)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn roster() -> Roster {
        Roster::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn modal_depth_examples() {
        let p = Formula::prop("p");
        let q = Formula::prop("q");
        assert_eq!(p.modal_depth(), 0);
        let ab = AgentSet::from_agents([0, 1]);
        assert_eq!(Formula::k(0, p.clone()).modal_depth(), 1);
        let nested = Formula::k(0, Formula::and(Formula::d(ab, p), q));
        assert_eq!(nested.modal_depth(), 2);
    }

    #[test]
    fn printer_examples() {
        let r = roster();
        let p = Formula::prop("p");
        let q = Formula::prop("q");
        assert_eq!(Formula::k(0, p.clone()).display(&r).to_string(), "D{a} p");
        assert_eq!(
            Formula::and(p.clone(), Formula::not(q)).display(&r).to_string(),
            "(p & !q)"
        );
        assert_eq!(
            Formula::d(AgentSet::EMPTY, p).display(&r).to_string(),
            "D{} p"
        );
        assert_eq!(Formula::top().display(&r).to_string(), "true");
        assert_eq!(Formula::dead_agent(1).display(&r).to_string(), "D{b} false");
    }

    #[test]
    fn true_encoding_shape() {
        assert!(Formula::top().is_top());
        assert!(Formula::bottom().is_bottom());
        assert!(!Formula::prop("p").is_top());
        assert!(Formula::top().atoms().is_empty());
        assert_eq!(Formula::dead(AgentSet::EMPTY), Formula::top());
    }

    #[test]
    fn prop_names() {
        assert!(PropId::new("p0").is_ok());
        assert!(PropId::new("x_Y9").is_ok());
        assert!(PropId::new("P").is_err());
        assert!(PropId::new("alive").is_err());
        assert!(PropId::new("__t").is_err());
        assert!(PropId::new("").is_err());
    }
}
