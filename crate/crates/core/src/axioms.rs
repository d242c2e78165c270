//! Axiom schemes, exhaustive frame-validity and the property/axiom
//! registry.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::frames::{check_property, Frame, Property};
use crate::logic::{AgentSet, Formula, PropId, Roster};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomScheme {
    K,
    Four,
    B,
    Mono,
    Union,
    NE,
    P,
    Max,
    Min,
    Pure,
    T,
}

impl AxiomScheme {
    pub const ALL: [AxiomScheme; 11] = [
        AxiomScheme::K,
        AxiomScheme::Four,
        AxiomScheme::B,
        AxiomScheme::Mono,
        AxiomScheme::Union,
        AxiomScheme::NE,
        AxiomScheme::P,
        AxiomScheme::Max,
        AxiomScheme::Min,
        AxiomScheme::Pure,
        AxiomScheme::T,
    ];

    /// The schemes of `EC_n`.
    pub const ECN: [AxiomScheme; 5] = [
        AxiomScheme::K,
        AxiomScheme::Four,
        AxiomScheme::B,
        AxiomScheme::Mono,
        AxiomScheme::Union,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomScheme::K => "K",
            AxiomScheme::Four => "4",
            AxiomScheme::B => "B",
            AxiomScheme::Mono => "Mono",
            AxiomScheme::Union => "Union",
            AxiomScheme::NE => "NE",
            AxiomScheme::P => "P",
            AxiomScheme::Max => "Max",
            AxiomScheme::Min => "Min",
            AxiomScheme::Pure => "Pure",
            AxiomScheme::T => "T",
        }
    }

    /// Number of group parameters.
    pub fn group_arity(self) -> usize {
        match self {
            AxiomScheme::Mono | AxiomScheme::Union => 2,
            AxiomScheme::NE | AxiomScheme::Pure => 0,
            _ => 1,
        }
    }

    /// Number of formula parameters (instantiated by fresh atoms).
    pub fn atom_arity(self) -> usize {
        match self {
            AxiomScheme::K => 2,
            AxiomScheme::Four
            | AxiomScheme::B
            | AxiomScheme::Mono
            | AxiomScheme::P
            | AxiomScheme::T => 1,
            _ => 0,
        }
    }

    /// The property this scheme corresponds to, if any.
    pub fn property(self) -> Option<Property> {
        match self {
            AxiomScheme::NE => Some(Property::NoEmptyWorlds),
            AxiomScheme::P => Some(Property::Proper),
            AxiomScheme::Max => Some(Property::Maximal),
            AxiomScheme::Min => Some(Property::Minimal),
            AxiomScheme::Pure => Some(Property::Pure),
            _ => None,
        }
    }
}

impl fmt::Display for AxiomScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown axiom scheme `{0}`")]
pub struct UnknownScheme(pub String);

impl FromStr for AxiomScheme {
    type Err = UnknownScheme;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s2 = if s.eq_ignore_ascii_case("four") { "4" } else { s };
        AxiomScheme::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s2))
            .ok_or_else(|| UnknownScheme(s.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstantiateError {
    #[error("{scheme} takes {expected} group parameter(s), got {found}")]
    GroupArity {
        scheme: AxiomScheme,
        expected: usize,
        found: usize,
    },
    #[error("{scheme} takes {expected} formula parameter(s), got {found}")]
    AtomArity {
        scheme: AxiomScheme,
        expected: usize,
        found: usize,
    },
    #[error("Mono needs its first group to be a subset of the second")]
    NotSubgroup,
    #[error("Max is only stated for non-empty groups")]
    EmptyGroup,
    #[error("group mentions an agent outside the roster")]
    AgentOutOfRange,
}

/// Instantiates `scheme` with group parameters and atoms for its formula
/// parameters, over a roster of `n_agents` agents.
pub fn instantiate(
    scheme: AxiomScheme,
    groups: &[AgentSet],
    atoms: &[PropId],
    n_agents: usize,
) -> Result<Formula, InstantiateError> {
    if groups.len() != scheme.group_arity() {
        return Err(InstantiateError::GroupArity {
            scheme,
            expected: scheme.group_arity(),
            found: groups.len(),
        });
    }
    if atoms.len() != scheme.atom_arity() {
        return Err(InstantiateError::AtomArity {
            scheme,
            expected: scheme.atom_arity(),
            found: atoms.len(),
        });
    }
    let full = AgentSet::full(n_agents);
    if groups.iter().any(|g| !g.is_subset(full)) {
        return Err(InstantiateError::AgentOutOfRange);
    }
    let phi = || Formula::Atom(atoms[0].clone());
    let psi = || Formula::Atom(atoms[1].clone());
    let u = groups.first().copied().unwrap_or(AgentSet::EMPTY);
    let dead_c = || Formula::dead(u.complement(n_agents));
    use Formula as F;
    Ok(match scheme {
        AxiomScheme::K => F::implies(
            F::d(u, F::implies(phi(), psi())),
            F::implies(F::d(u, phi()), F::d(u, psi())),
        ),
        AxiomScheme::Four => F::implies(F::d(u, phi()), F::d(u, F::d(u, phi()))),
        AxiomScheme::B => F::implies(phi(), F::d(u, F::not(F::d(u, F::not(phi()))))),
        AxiomScheme::Mono => {
            if !u.is_subset(groups[1]) {
                return Err(InstantiateError::NotSubgroup);
            }
            F::implies(F::d(u, phi()), F::d(groups[1], phi()))
        }
        AxiomScheme::Union => F::implies(
            F::and(F::alive(u), F::alive(groups[1])),
            F::alive(u.union(groups[1])),
        ),
        AxiomScheme::NE => F::disj((0..n_agents).map(|a| F::alive(AgentSet::singleton(a)))),
        AxiomScheme::P => F::implies(
            F::and(F::and(F::alive(u), dead_c()), phi()),
            F::d(u, F::implies(dead_c(), phi())),
        ),
        AxiomScheme::Max => {
            if u.is_empty() {
                return Err(InstantiateError::EmptyGroup);
            }
            F::implies(F::alive(u), F::not(F::d(u, F::not(dead_c()))))
        }
        AxiomScheme::Min => F::implies(F::and(F::alive(u), dead_c()), F::d(u, dead_c())),
        AxiomScheme::Pure => F::alive(full),
        AxiomScheme::T => F::implies(F::d(u, phi()), phi()),
    })
}

/// Fresh atoms `p, q, r, ...` used for formula parameters.
pub fn fresh_atoms(k: usize) -> Vec<PropId> {
    ["p", "q", "r", "s"]
        .iter()
        .take(k)
        .map(|n| PropId::new(*n).expect("valid"))
        .collect()
}

/// One instantiation of a scheme (or derived theorem) with its group
/// parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub label: String,
    pub groups: Vec<AgentSet>,
    pub formula: Formula,
}

/// Every instantiation of `scheme` over all admissible group parameters
/// (all subsets, every ordered pair where two are needed; `U ⊆ U'` for
/// Mono; `U ≠ ∅` for Max).
pub fn instances(scheme: AxiomScheme, n_agents: usize) -> Vec<Instance> {
    let atoms = fresh_atoms(scheme.atom_arity());
    let groups: Vec<AgentSet> = AgentSet::all(n_agents).collect();
    let params: Vec<Vec<AgentSet>> = match scheme.group_arity() {
        0 => vec![vec![]],
        1 => groups.iter().map(|&g| vec![g]).collect(),
        _ => groups
            .iter()
            .flat_map(|&g| groups.iter().map(move |&h| vec![g, h]))
            .collect(),
    };
    params
        .into_iter()
        .filter_map(|gs| {
            instantiate(scheme, &gs, &atoms, n_agents)
                .ok()
                .map(|formula| Instance {
                    label: scheme.name().into(),
                    groups: gs,
                    formula,
                })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("frame-validity budget exceeded: {atoms} atom(s) over {worlds} world(s) (limit {MAX_ATOMS} atoms, {MAX_WORLDS} worlds)")]
pub struct BudgetError {
    pub atoms: usize,
    pub worlds: usize,
}

pub const MAX_ATOMS: usize = 3;
pub const MAX_WORLDS: usize = 12;

/// A falsifying valuation: the world where the formula fails and, for
/// each atom, the worlds where it is true.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countervaluation {
    pub world: usize,
    pub valuation: BTreeMap<PropId, Vec<usize>>,
}

impl Countervaluation {
    /// `(w1, p={w0,w1}, q={})`
    pub fn render(&self, frame: &Frame) -> String {
        let mut out = format!("({}", frame.world_id(self.world));
        for (p, ws) in &self.valuation {
            let mut ids: Vec<&str> = ws.iter().map(|&w| frame.world_id(w)).collect();
            ids.sort();
            out.push_str(&format!(", {p}={{{}}}", ids.join(",")));
        }
        out.push(')');
        out
    }
}

enum Node {
    Top,
    Atom(usize),
    Neg(Box<Node>),
    And(Box<Node>, Box<Node>),
    D(usize, Box<Node>),
}

fn compile(phi: &Formula, atoms: &[PropId]) -> Node {
    match phi {
        Formula::Atom(p) if p.is_reserved() => Node::Top,
        Formula::Atom(p) => Node::Atom(atoms.iter().position(|a| a == p).expect("known atom")),
        Formula::Neg(f) => Node::Neg(Box::new(compile(f, atoms))),
        Formula::And(l, r) => Node::And(Box::new(compile(l, atoms)), Box::new(compile(r, atoms))),
        Formula::D(u, f) => Node::D(u.index(), Box::new(compile(f, atoms))),
    }
}

/// Per group, per world: the mask of the world's class (0 outside the
/// domain).
fn class_masks(frame: &Frame) -> Vec<Vec<u64>> {
    frame
        .pers()
        .iter()
        .map(|per| {
            (0..frame.world_count())
                .map(|w| per.class(w).iter().fold(0u64, |m, &v| m | 1 << v))
                .collect()
        })
        .collect()
}

fn eval(node: &Node, masks: &[u64], classes: &[Vec<u64>], all: u64) -> u64 {
    match node {
        Node::Top => all,
        Node::Atom(i) => masks[*i],
        Node::Neg(f) => !eval(f, masks, classes, all) & all,
        Node::And(l, r) => eval(l, masks, classes, all) & eval(r, masks, classes, all),
        Node::D(u, f) => {
            let inner = eval(f, masks, classes, all);
            classes[*u]
                .iter()
                .enumerate()
                .filter(|(_, c)| *c & !inner == 0)
                .fold(0u64, |m, (w, _)| m | 1 << w)
        }
    }
}

/// Frame-validity by exhaustive enumeration of the valuations of the
/// formula's atoms. `Ok(None)` when valid, otherwise the first falsifying
/// valuation found (valuations in counting order, least world id).
pub fn frame_valid(frame: &Frame, phi: &Formula) -> Result<Option<Countervaluation>, BudgetError> {
    let atoms: Vec<PropId> = phi.atoms().into_iter().collect();
    let n = frame.world_count();
    if atoms.len() > MAX_ATOMS || n > MAX_WORLDS {
        return Err(BudgetError {
            atoms: atoms.len(),
            worlds: n,
        });
    }
    let node = compile(phi, &atoms);
    let classes = class_masks(frame);
    let all: u64 = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let bits = atoms.len() * n;
    let mut masks = vec![0u64; atoms.len()];
    for code in 0u64..(1u64 << bits) {
        for (i, m) in masks.iter_mut().enumerate() {
            *m = (code >> (i * n)) & all;
        }
        let holds = eval(&node, &masks, &classes, all);
        if holds != all {
            let failing = !holds & all;
            let world = frame
                .id_order()
                .iter()
                .copied()
                .find(|&w| failing & (1 << w) != 0)
                .expect("some world fails");
            let valuation = atoms
                .iter()
                .zip(&masks)
                .map(|(p, &m)| (p.clone(), (0..n).filter(|&w| m & (1 << w) != 0).collect()))
                .collect();
            return Ok(Some(Countervaluation { world, valuation }));
        }
    }
    Ok(None)
}

/// A named bundle of axiom schemes and the frame properties it is sound
/// and complete for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicVariant {
    pub name: String,
    pub axioms: BTreeSet<AxiomScheme>,
    pub properties: BTreeSet<Property>,
}

/// Extensions of `EC_n` in the variant cube, by extra axioms.
const CUBE: [&[AxiomScheme]; 13] = {
    use AxiomScheme::*;
    [
        &[],
        &[NE],
        &[P],
        &[Max],
        &[Min],
        &[NE, P],
        &[NE, Max],
        &[P, Max],
        &[NE, Min],
        &[P, Min],
        &[NE, P, Max],
        &[NE, P, Min],
        &[NE, P, Pure],
    ]
};

impl LogicVariant {
    fn from_extras(extras: &[AxiomScheme]) -> Self {
        let mut name = String::from("ECn");
        for e in extras {
            name.push('+');
            name.push_str(e.name());
        }
        LogicVariant {
            name,
            axioms: AxiomScheme::ECN.iter().chain(extras).copied().collect(),
            properties: extras.iter().filter_map(|e| e.property()).collect(),
        }
    }

    /// Every node of the variant cube, `ECn` first.
    pub fn registry() -> Vec<LogicVariant> {
        CUBE.iter().map(|e| LogicVariant::from_extras(e)).collect()
    }

    pub fn ecn() -> Self {
        LogicVariant::from_extras(&[])
    }

    /// Looks a variant up by name; the extras may come in any order and
    /// case (`ECn+P+NE` names the same node as `ECn+NE+P`).
    pub fn by_name(name: &str) -> Option<Self> {
        let mut parts = name.split('+').map(str::trim);
        let head = parts.next()?;
        if !head.eq_ignore_ascii_case("ECn") {
            return None;
        }
        let mut extras = BTreeSet::new();
        for p in parts {
            extras.insert(p.parse::<AxiomScheme>().ok()?);
        }
        LogicVariant::registry().into_iter().find(|v| {
            v.axioms
                .iter()
                .filter(|a| !AxiomScheme::ECN.contains(a))
                .copied()
                .collect::<BTreeSet<_>>()
                == extras
        })
    }
}

/// One line of a validity report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportLine {
    pub label: String,
    pub groups: Vec<AgentSet>,
    pub counter: Option<Countervaluation>,
}

impl ReportLine {
    pub fn holds(&self) -> bool {
        self.counter.is_none()
    }

    pub fn params(&self, roster: &Roster) -> String {
        const NAMES: [&str; 2] = ["U", "U'"];
        if self.groups.is_empty() {
            return "-".into();
        }
        self.groups
            .iter()
            .enumerate()
            .map(|(i, g)| format!("{}={}", NAMES[i.min(1)], roster.fmt_group(*g)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// `SCHEME params VERDICT [witness]`
    pub fn render(&self, frame: &Frame) -> String {
        let mut out = format!(
            "{} {} {}",
            self.label,
            self.params(frame.roster()),
            if self.holds() { "PASS" } else { "FAIL" }
        );
        if let Some(c) = &self.counter {
            out.push(' ');
            out.push_str(&c.render(frame));
        }
        out
    }
}

/// Report lines sorted by label, then parameters.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Report {
    pub lines: Vec<ReportLine>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(ReportLine::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportLine> {
        self.lines.iter().filter(|l| !l.holds())
    }

    fn run(frame: &Frame, instances: Vec<Instance>) -> Result<Report, BudgetError> {
        let mut lines = instances
            .into_iter()
            .map(|i| {
                Ok(ReportLine {
                    label: i.label,
                    groups: i.groups,
                    counter: frame_valid(frame, &i.formula)?,
                })
            })
            .collect::<Result<Vec<_>, BudgetError>>()?;
        lines.sort_by(|a, b| (&a.label, &a.groups).cmp(&(&b.label, &b.groups)));
        Ok(Report { lines })
    }
}

/// Runs the frame-validity oracle on every instantiation of every scheme
/// of `variant`.
pub fn check_soundness(frame: &Frame, variant: &LogicVariant) -> Result<Report, BudgetError> {
    let n = frame.agent_count();
    let all = variant
        .axioms
        .iter()
        .flat_map(|&s| instances(s, n))
        .collect();
    Report::run(frame, all)
}

/// Instances of the `EC_n` theorems about dead and alive agents:
/// `dead_a ⇒ D_U p` for `a ∈ U`, `alive_U ⇒ D_U alive_U` and
/// `alive_U ⇒ (D_U p ⇒ p)`, over every group.
pub fn derived_instances(n_agents: usize) -> Vec<Instance> {
    let p = || Formula::prop("p");
    let mut out = Vec::new();
    for u in AgentSet::all(n_agents) {
        for a in u.iter() {
            out.push(Instance {
                label: "DeadKnows".into(),
                groups: vec![AgentSet::singleton(a), u],
                formula: Formula::implies(Formula::dead_agent(a), Formula::d(u, p())),
            });
        }
        out.push(Instance {
            label: "AliveKnowsAlive".into(),
            groups: vec![u],
            formula: Formula::implies(Formula::alive(u), Formula::d(u, Formula::alive(u))),
        });
        out.push(Instance {
            label: "AliveT".into(),
            groups: vec![u],
            formula: Formula::implies(Formula::alive(u), Formula::implies(Formula::d(u, p()), p())),
        });
    }
    out
}

/// The derived theorems, plus T, NE, Min and Union when the frame is pure.
pub fn derived_theorems_check(frame: &Frame) -> Result<Report, BudgetError> {
    let n = frame.agent_count();
    let mut all = derived_instances(n);
    if check_property(frame, Property::Pure).holds {
        for s in [AxiomScheme::T, AxiomScheme::NE, AxiomScheme::Min, AxiomScheme::Union] {
            all.extend(instances(s, n));
        }
    }
    Report::run(frame, all)
}

/// Property verdicts plus the registry's matching axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub properties: Vec<(Property, bool)>,
    /// `EC_n` plus every axiom whose property holds.
    pub axioms: BTreeSet<AxiomScheme>,
    /// The largest cube node whose properties all hold.
    pub variant: LogicVariant,
}

pub fn classify_model(frame: &Frame) -> Classification {
    let properties: Vec<(Property, bool)> = Property::ALL
        .iter()
        .map(|&p| (p, check_property(frame, p).holds))
        .collect();
    let holding: BTreeSet<Property> = properties.iter().filter(|x| x.1).map(|x| x.0).collect();
    let axioms = AxiomScheme::ALL
        .iter()
        .copied()
        .filter(|a| {
            AxiomScheme::ECN.contains(a) || a.property().is_some_and(|p| holding.contains(&p))
        })
        .collect();
    // later cube nodes win ties, so the pure node beats the minimal one
    let variant = LogicVariant::registry()
        .into_iter()
        .filter(|v| v.properties.is_subset(&holding))
        .fold(None::<LogicVariant>, |best, v| match best {
            Some(b) if b.properties.len() > v.properties.len() => Some(b),
            _ => Some(v),
        })
        .expect("ECn always applies");
    Classification {
        properties,
        axioms,
        variant,
    }
}

impl fmt::Display for LogicVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FromStr for LogicVariant {
    type Err = UnknownScheme;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LogicVariant::by_name(s).ok_or_else(|| UnknownScheme(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::Per;
    use crate::logic::parse_formula;

    fn roster() -> Roster {
        Roster::new(["a", "b"]).unwrap()
    }

    #[test]
    fn templates_match_concrete_syntax() {
        let r = roster();
        let p = fresh_atoms(1);
        let a = AgentSet::singleton(0);
        let b = AgentSet::singleton(1);
        assert_eq!(
            instantiate(AxiomScheme::B, &[a], &p, 2).unwrap(),
            parse_formula("p -> D{a} !D{a} !p", &r).unwrap()
        );
        assert_eq!(
            instantiate(AxiomScheme::Union, &[a, b], &[], 2).unwrap(),
            parse_formula("alive{a} & alive{b} -> alive{a,b}", &r).unwrap()
        );
        assert_eq!(
            instantiate(AxiomScheme::Pure, &[], &[], 2).unwrap(),
            parse_formula("alive{a,b}", &r).unwrap()
        );
        assert_eq!(
            instantiate(AxiomScheme::P, &[a], &p, 2).unwrap(),
            parse_formula("alive{a} & dead{b} & p -> D{a} (dead{b} -> p)", &r).unwrap()
        );
    }

    #[test]
    fn arity_errors() {
        assert!(matches!(
            instantiate(AxiomScheme::K, &[], &fresh_atoms(2), 2),
            Err(InstantiateError::GroupArity { .. })
        ));
        assert!(matches!(
            instantiate(AxiomScheme::T, &[AgentSet::EMPTY], &[], 2),
            Err(InstantiateError::AtomArity { .. })
        ));
        assert_eq!(
            instantiate(AxiomScheme::Max, &[AgentSet::EMPTY], &[], 2),
            Err(InstantiateError::EmptyGroup)
        );
        assert_eq!(
            instantiate(
                AxiomScheme::Mono,
                &[AgentSet::full(2), AgentSet::EMPTY],
                &fresh_atoms(1),
                2
            ),
            Err(InstantiateError::NotSubgroup)
        );
    }

    #[test]
    fn t_fails_at_a_dead_world() {
        let r = Roster::new(["a"]).unwrap();
        let frame = Frame::new(r, vec!["w".into()], vec![Per::total(1), Per::empty(1)]).unwrap();
        let t = instantiate(AxiomScheme::T, &[AgentSet::singleton(0)], &fresh_atoms(1), 1).unwrap();
        let c = frame_valid(&frame, &t).unwrap().unwrap();
        assert_eq!(c.world, 0);
        assert_eq!(c.valuation[&PropId::new("p").unwrap()], Vec::<usize>::new());
    }

    #[test]
    fn registry_shape() {
        let reg = LogicVariant::registry();
        assert_eq!(reg.len(), 13);
        assert_eq!(reg[0].name, "ECn");
        let v = LogicVariant::by_name("ECn+Max+P+NE").unwrap();
        assert_eq!(v.name, "ECn+NE+P+Max");
        assert!(v.properties.contains(&Property::Maximal));
        assert!(LogicVariant::by_name("ECn+T").is_none());
    }

    #[test]
    fn budget_is_enforced() {
        let r = Roster::new(["a"]).unwrap();
        let n = 13;
        let frame = Frame::new(
            r,
            (0..n).map(|i| format!("w{i}")).collect(),
            vec![Per::total(n), Per::total(n)],
        )
        .unwrap();
        assert_eq!(
            frame_valid(&frame, &Formula::prop("p")),
            Err(BudgetError {
                atoms: 1,
                worlds: 13
            })
        );
    }
}
