//! JSON file formats. Every document carries a top-level `"kind"` of
//! `frame`, `covering` or `scenario`; nothing is inferred from file names.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use episim_core::csets::{Covering, CoveringModel, RawCovering, RawCset, RawSimplex, RawWorld};
use episim_core::frames::{validate_frame, FrameError};
use episim_core::logic::RosterError;
use episim_core::scenarios::{build_sensor_frame, Sensor, SensorError, SensorScenario, SensorWorld};
use episim_core::{AgentSet, Frame, Model, PropId, RawFrame, Roster};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown \"kind\" `{0}` (expected frame, covering or scenario)")]
    Kind(String),
    #[error("missing \"kind\" (expected frame, covering or scenario)")]
    NoKind,
    #[error("{0}")]
    Roster(#[from] RosterError),
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("pair mentions unknown world `{0}`")]
    UnknownWorld(String),
    #[error("invalid proposition name `{0}`")]
    Prop(String),
    #[error("relation for group {group} gives both pairs and classes")]
    PairsAndClasses { group: String },
    #[error("{}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Sensor(#[from] SensorError),
}

impl LoadError {
    /// True for errors in the data rather than in its syntax.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            LoadError::Invalid(_) | LoadError::Frame(_) | LoadError::Sensor(_)
        )
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorldDoc {
    pub id: String,
    #[serde(default)]
    pub props: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDoc {
    pub group: Vec<String>,
    #[serde(default)]
    pub pairs: Vec<(String, String)>,
    /// Shorthand for the pairs of a partial equivalence with these classes.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDoc {
    pub kind: String,
    pub agents: Vec<String>,
    pub worlds: Vec<WorldDoc>,
    #[serde(default)]
    pub relations: Vec<RelationDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexDoc {
    pub id: String,
    pub group: Vec<String>,
    #[serde(default)]
    pub faces: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseDoc {
    pub simplices: Vec<SimplexDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopWorldDoc {
    pub id: String,
    pub color: Vec<String>,
    pub image: String,
    #[serde(default)]
    pub props: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoveringDoc {
    pub kind: String,
    pub agents: Vec<String>,
    pub base: BaseDoc,
    pub worlds: Vec<TopWorldDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensorDoc {
    pub name: String,
    pub center: [f64; 2],
    pub radius: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensorWorldDoc {
    pub id: String,
    pub targets: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDoc {
    pub kind: String,
    pub sensors: Vec<SensorDoc>,
    pub worlds: Vec<SensorWorldDoc>,
}

/// A world-to-world map for `bisim`. `kind` is optional here.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub map: BTreeMap<String, String>,
}

/// A document after syntax checks, before any law is checked.
#[derive(Clone, Debug)]
pub enum RawDocument {
    Frame(RawFrame, Vec<BTreeSet<PropId>>),
    Covering(RawCovering, Vec<BTreeSet<PropId>>),
    Scenario(SensorScenario),
}

/// A validated document.
#[derive(Clone, Debug)]
pub enum Document {
    Frame(Model),
    Covering(CoveringModel),
    Scenario(SensorScenario, Model),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Frame(_) => "frame",
            Document::Covering(_) => "covering",
            Document::Scenario(..) => "scenario",
        }
    }

    /// The epistemic model, through `κ` for coverings.
    pub fn model(&self) -> Model {
        match self {
            Document::Frame(m) | Document::Scenario(_, m) => m.clone(),
            Document::Covering(c) => episim_core::csets::kappa(c),
        }
    }

    pub fn roster(&self) -> &Roster {
        match self {
            Document::Frame(m) | Document::Scenario(_, m) => m.frame().roster(),
            Document::Covering(c) => c.covering().roster(),
        }
    }
}

fn props(names: &[String]) -> Result<BTreeSet<PropId>, LoadError> {
    names
        .iter()
        .map(|p| PropId::new(p.as_str()).map_err(|_| LoadError::Prop(p.clone())))
        .collect()
}

fn group(roster: &Roster, names: &[String]) -> Result<AgentSet, LoadError> {
    roster
        .group(names.iter().map(String::as_str))
        .map_err(|a| LoadError::UnknownAgent(a.into()))
}

fn names(roster: &Roster, g: AgentSet) -> Vec<String> {
    g.iter().map(|a| roster.names()[a].clone()).collect()
}

fn sorted(set: &BTreeSet<PropId>) -> Vec<String> {
    set.iter().map(|p| p.as_str().to_string()).collect()
}

pub fn parse_raw(text: &str) -> Result<RawDocument, LoadError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let Some(kind) = value.get("kind").and_then(|k| k.as_str()).map(str::to_string) else {
        return Err(LoadError::NoKind);
    };
    match kind.as_str() {
        "frame" => raw_frame(serde_json::from_value(value)?),
        "covering" => raw_covering(serde_json::from_value(value)?),
        "scenario" => Ok(RawDocument::Scenario(scenario(serde_json::from_value(value)?))),
        _ => Err(LoadError::Kind(kind)),
    }
}

fn raw_frame(doc: FrameDoc) -> Result<RawDocument, LoadError> {
    let roster = Roster::new(doc.agents)?;
    let ids: Vec<String> = doc.worlds.iter().map(|w| w.id.clone()).collect();
    let index: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, w)| (w.as_str(), i)).collect();
    let world = |id: &str| {
        index
            .get(id)
            .copied()
            .ok_or_else(|| LoadError::UnknownWorld(id.into()))
    };
    let mut raw = RawFrame::new(roster.clone(), ids.clone());
    for rel in &doc.relations {
        let g = group(&roster, &rel.group)?;
        if !rel.pairs.is_empty() && !rel.classes.is_empty() {
            return Err(LoadError::PairsAndClasses {
                group: roster.fmt_group(g),
            });
        }
        for (x, y) in &rel.pairs {
            raw.relate(g, world(x)?, world(y)?);
        }
        for class in &rel.classes {
            let members = class.iter().map(|w| world(w)).collect::<Result<Vec<_>, _>>()?;
            for &x in &members {
                for &y in &members {
                    raw.relate(g, x, y);
                }
            }
        }
    }
    let valuation = doc
        .worlds
        .iter()
        .map(|w| props(&w.props))
        .collect::<Result<_, _>>()?;
    Ok(RawDocument::Frame(raw, valuation))
}

fn raw_covering(doc: CoveringDoc) -> Result<RawDocument, LoadError> {
    let roster = Roster::new(doc.agents)?;
    let simplices = doc
        .base
        .simplices
        .iter()
        .map(|s| {
            let faces = s
                .faces
                .iter()
                .map(|(a, id)| {
                    let agent = roster
                        .index_of(a)
                        .ok_or_else(|| LoadError::UnknownAgent(a.clone()))?;
                    Ok((agent, id.clone()))
                })
                .collect::<Result<_, LoadError>>()?;
            Ok(RawSimplex {
                id: s.id.clone(),
                group: group(&roster, &s.group)?,
                faces,
            })
        })
        .collect::<Result<_, LoadError>>()?;
    let worlds = doc
        .worlds
        .iter()
        .map(|w| {
            Ok(RawWorld {
                id: w.id.clone(),
                color: group(&roster, &w.color)?,
                image: w.image.clone(),
            })
        })
        .collect::<Result<_, LoadError>>()?;
    let labels = doc
        .worlds
        .iter()
        .map(|w| props(&w.props))
        .collect::<Result<_, _>>()?;
    let raw = RawCovering {
        base: RawCset { roster, simplices },
        worlds,
    };
    Ok(RawDocument::Covering(raw, labels))
}

fn scenario(doc: ScenarioDoc) -> SensorScenario {
    SensorScenario {
        sensors: doc
            .sensors
            .into_iter()
            .map(|s| Sensor {
                name: s.name,
                center: (s.center[0], s.center[1]),
                radius: s.radius,
            })
            .collect(),
        worlds: doc
            .worlds
            .into_iter()
            .map(|w| SensorWorld {
                id: w.id,
                targets: w.targets.into_iter().map(|[x, y]| (x, y)).collect(),
            })
            .collect(),
    }
}

/// Law violations of a raw document, rendered one per line; empty iff it
/// validates. `complete` applies the frame loader completion first.
pub fn violations(raw: &RawDocument, complete: bool) -> Result<Vec<String>, LoadError> {
    match raw {
        RawDocument::Frame(f, _) => {
            let mut f = f.clone();
            if complete {
                f.complete();
            }
            let vs = validate_frame(&f)?;
            Ok(vs.iter().map(|v| v.render(&f.roster)).collect())
        }
        RawDocument::Covering(c, _) => Ok(episim_core::csets::validate_covering(c)
            .iter()
            .map(|v| v.render(&c.base.roster))
            .collect()),
        RawDocument::Scenario(sc) => Ok(match build_sensor_frame(sc) {
            Ok(_) => Vec::new(),
            Err(e) => vec![e.to_string()],
        }),
    }
}

pub fn build(raw: RawDocument, complete: bool) -> Result<Document, LoadError> {
    match raw {
        RawDocument::Frame(mut f, valuation) => {
            if complete {
                f.complete();
            }
            let vs = validate_frame(&f)?;
            if !vs.is_empty() {
                return Err(LoadError::Invalid(
                    vs.iter().map(|v| v.render(&f.roster)).collect(),
                ));
            }
            let frame = Frame::from_raw(&f)?;
            Ok(Document::Frame(
                Model::new(frame, valuation).expect("one label set per world"),
            ))
        }
        RawDocument::Covering(c, labels) => {
            let cov = Covering::from_raw(&c).map_err(|vs| {
                LoadError::Invalid(vs.iter().map(|v| v.render(&c.base.roster)).collect())
            })?;
            Ok(Document::Covering(
                CoveringModel::new(cov, labels).expect("one label set per world"),
            ))
        }
        RawDocument::Scenario(sc) => {
            let m = build_sensor_frame(&sc)?;
            Ok(Document::Scenario(sc, m))
        }
    }
}

pub fn parse_document(text: &str, complete: bool) -> Result<Document, LoadError> {
    build(parse_raw(text)?, complete)
}

pub fn read_text(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load(path: &Path, complete: bool) -> Result<Document, LoadError> {
    parse_document(&read_text(path)?, complete)
}

pub fn load_map(path: &Path) -> Result<BTreeMap<String, String>, LoadError> {
    let doc: MapDoc = serde_json::from_str(&read_text(path)?)?;
    match doc.kind.as_deref() {
        None | Some("map") => Ok(doc.map),
        Some(k) => Err(LoadError::Kind(k.into())),
    }
}

/// Every non-empty relation, listed pair by pair in world order.
pub fn frame_doc(m: &Model) -> FrameDoc {
    let f = m.frame();
    let roster = f.roster();
    FrameDoc {
        kind: "frame".into(),
        agents: roster.names().to_vec(),
        worlds: (0..f.world_count())
            .map(|w| WorldDoc {
                id: f.world_id(w).into(),
                props: sorted(m.valuation(w)),
            })
            .collect(),
        relations: roster
            .groups()
            .filter(|&g| !f.per(g).is_empty())
            .map(|g| RelationDoc {
                group: names(roster, g),
                pairs: f
                    .per(g)
                    .pairs()
                    .map(|(x, y)| (f.world_id(x).into(), f.world_id(y).into()))
                    .collect(),
                classes: Vec::new(),
            })
            .collect(),
    }
}

pub fn covering_doc(x: &CoveringModel) -> CoveringDoc {
    let raw = x.covering().to_raw();
    let roster = &raw.base.roster;
    CoveringDoc {
        kind: "covering".into(),
        agents: roster.names().to_vec(),
        base: BaseDoc {
            simplices: raw
                .base
                .simplices
                .iter()
                .map(|s| SimplexDoc {
                    id: s.id.clone(),
                    group: names(roster, s.group),
                    faces: s
                        .faces
                        .iter()
                        .map(|(&a, id)| (roster.names()[a].clone(), id.clone()))
                        .collect(),
                })
                .collect(),
        },
        worlds: raw
            .worlds
            .iter()
            .enumerate()
            .map(|(i, w)| TopWorldDoc {
                id: w.id.clone(),
                color: names(roster, w.color),
                image: w.image.clone(),
                props: sorted(x.label(i)),
            })
            .collect(),
    }
}

pub fn scenario_doc(sc: &SensorScenario) -> ScenarioDoc {
    ScenarioDoc {
        kind: "scenario".into(),
        sensors: sc
            .sensors
            .iter()
            .map(|s| SensorDoc {
                name: s.name.clone(),
                center: [s.center.0, s.center.1],
                radius: s.radius,
            })
            .collect(),
        worlds: sc
            .worlds
            .iter()
            .map(|w| SensorWorldDoc {
                id: w.id.clone(),
                targets: w.targets.iter().map(|&(x, y)| [x, y]).collect(),
            })
            .collect(),
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn document_json(doc: &Document) -> String {
    match doc {
        Document::Frame(m) => to_json(&frame_doc(m)),
        Document::Covering(c) => to_json(&covering_doc(c)),
        Document::Scenario(sc, _) => to_json(&scenario_doc(sc)),
    }
}
