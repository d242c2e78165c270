//! `episim <command> [flags] files...`
//!
//! Exit codes: 0 success, 1 the check ran and failed, 2 usage, I/O or parse
//! error, 3 validation error, 4 unknown world, 5 frame-validity budget
//! exceeded.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use episim_core::axioms::{check_soundness, classify_model, derived_theorems_check, Report};
use episim_core::csets::{
    canonical_covering, canonical_model, check_covering_property, kappa, sigma, CanonicalCovering,
    CanonicalModel,
};
use episim_core::frames::{
    check_functional_bisimulation, check_morphism, check_property, resolve_map, unravel, DStep,
    MapError,
};
use episim_core::logic::parse_formula;
use episim_core::scenarios::{builtin_fixtures, Fixture, FixturePayload};
use episim_core::{LogicVariant, Model, Property, Roster, Verdict};
use serde_json::{json, Value};

use crate::dot::covering_dot;
use crate::io::{self, Document, LoadError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_UNKNOWN_WORLD: i32 = 4;
pub const EXIT_BUDGET: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "episim", version, about = "Epistemic frames and coverings with distributed knowledge")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Common {
    /// Machine-readable output.
    #[arg(long)]
    pub json: bool,
    /// Close frame relations under the PER laws and downward before
    /// validating.
    #[arg(long)]
    pub complete: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Covering,
    Frame,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a formula at a world.
    Eval {
        #[command(flatten)]
        common: Common,
        /// Print the accessible worlds used at every D-node.
        #[arg(long)]
        explain: bool,
        file: PathBuf,
        world: String,
        formula: String,
    },
    /// Check the seven structural properties.
    Properties {
        #[command(flatten)]
        common: Common,
        /// Fail (exit 1) unless this property holds. Repeatable.
        #[arg(long = "require", value_name = "PROPERTY")]
        require: Vec<String>,
        file: PathBuf,
    },
    /// Check every axiom instance of a logic variant by frame validity.
    Axioms {
        #[command(flatten)]
        common: Common,
        /// Variant name such as `ECn+NE+P`, or `auto` for the classified one.
        #[arg(long, default_value = "ECn")]
        variant: String,
        /// Check the derived theorems instead.
        #[arg(long)]
        derived: bool,
        file: PathBuf,
    },
    /// Translate between frames and coverings.
    Convert {
        #[command(flatten)]
        common: Common,
        /// Output kind; defaults to the other model class.
        #[arg(long, value_enum)]
        to: Option<Target>,
        /// Translate there and back and print the difference to the input.
        #[arg(long)]
        roundtrip: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        file: PathBuf,
    },
    /// Unravel a model into histories of bounded length.
    Unravel {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        depth: usize,
        /// Write the unraveled frame here.
        #[arg(short, long)]
        output: Option<PathBuf>,
        file: PathBuf,
    },
    /// Check that a world map is a morphism and a functional bisimulation.
    Bisim {
        #[command(flatten)]
        common: Common,
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
    },
    /// List the built-in examples or write them as files.
    Fixtures {
        #[command(flatten)]
        common: Common,
        /// Write one `<name>.json` per fixture into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Restrict to these fixtures; with no `--out`, print their files.
        names: Vec<String>,
    },
    /// Render a covering (or the covering of a frame) as Graphviz DOT.
    ExportDot {
        #[command(flatten)]
        common: Common,
        #[arg(short, long)]
        output: Option<PathBuf>,
        file: PathBuf,
    },
    /// Check a file against the laws of its kind.
    Validate {
        #[command(flatten)]
        common: Common,
        file: PathBuf,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    UnknownWorld(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Budget(#[from] episim_core::axioms::BudgetError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Load(e) if e.is_validation() => EXIT_INVALID,
            CliError::Load(_) | CliError::Usage(_) | CliError::Write { .. } => EXIT_PARSE,
            CliError::UnknownWorld(_) => EXIT_UNKNOWN_WORLD,
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

struct Out {
    text: String,
    code: i32,
}

impl Out {
    fn ok(text: String) -> Self {
        Out { text, code: EXIT_OK }
    }

    fn check(text: String, pass: bool) -> Self {
        Out {
            text,
            code: if pass { EXIT_OK } else { EXIT_FAILED },
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stderr: text,
                    code: EXIT_PARSE,
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    stdout: text,
                    code: EXIT_OK,
                    ..Outcome::default()
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => Outcome {
            stdout: out.text,
            stderr: String::new(),
            code: out.code,
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("episim: {e}\n"),
            code: e.code(),
        },
    }
}

fn dispatch(cmd: Command) -> Result<Out, CliError> {
    match cmd {
        Command::Eval {
            common,
            explain,
            file,
            world,
            formula,
        } => eval(common, explain, &file, &world, &formula),
        Command::Properties {
            common,
            require,
            file,
        } => properties(common, &require, &file),
        Command::Axioms {
            common,
            variant,
            derived,
            file,
        } => axioms(common, &variant, derived, &file),
        Command::Convert {
            common,
            to,
            roundtrip,
            output,
            file,
        } => convert(common, to, roundtrip, output.as_deref(), &file),
        Command::Unravel {
            common,
            depth,
            output,
            file,
        } => unravel_cmd(common, depth, output.as_deref(), &file),
        Command::Bisim {
            common,
            source,
            target,
            map,
        } => bisim(common, &source, &target, &map),
        Command::Fixtures { common, out, names } => fixtures(common, out.as_deref(), &names),
        Command::ExportDot {
            common,
            output,
            file,
        } => export_dot(common, output.as_deref(), &file),
        Command::Validate { common, file } => validate(common, &file),
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn ids(m: &Model, ws: &[usize]) -> Vec<String> {
    let mut v: Vec<String> = ws.iter().map(|&w| m.frame().world_id(w).to_string()).collect();
    v.sort();
    v
}

fn verdict_word(b: bool) -> &'static str {
    if b {
        "TRUE"
    } else {
        "FALSE"
    }
}

fn eval(c: Common, explain: bool, file: &Path, world: &str, text: &str) -> Result<Out, CliError> {
    let doc = io::load(file, c.complete)?;
    let phi = parse_formula(text, doc.roster()).map_err(|e| {
        CliError::Usage(format!("formula: {e}\n  {text}\n  {}^", " ".repeat(e.offset())))
    })?;
    let m = doc.model();
    let w = m
        .frame()
        .world(world)
        .map_err(|_| CliError::UnknownWorld(format!("unknown world `{world}`")))?;
    let holds = match &doc {
        Document::Covering(x) => x.satisfies(w, &phi),
        _ => m.satisfies(w, &phi),
    };
    let mut trace: Vec<DStep> = Vec::new();
    if explain {
        m.satisfies_traced(w, &phi, &mut trace);
    }
    let roster = m.frame().roster();
    let text = if c.json {
        let mut v = json!({
            "world": world,
            "formula": phi.display(roster).to_string(),
            "holds": holds,
        });
        if explain {
            v["explain"] = trace
                .iter()
                .map(|s| {
                    json!({
                        "world": m.frame().world_id(s.world),
                        "group": roster.fmt_group(s.group),
                        "accessible": ids(&m, &s.accessible),
                        "holds": s.holds,
                    })
                })
                .collect();
        }
        json_text(&v)
    } else {
        let mut out = String::new();
        for s in &trace {
            let _ = writeln!(
                out,
                "D{} at {}: {{{}}} {}",
                roster.fmt_group(s.group),
                m.frame().world_id(s.world),
                ids(&m, &s.accessible).join(","),
                verdict_word(s.holds)
            );
        }
        out.push_str(verdict_word(holds));
        out.push('\n');
        out
    };
    Ok(Out::check(text, holds))
}

fn property_verdicts(doc: &Document) -> Vec<(Property, Verdict)> {
    match doc {
        Document::Covering(x) => Property::ALL
            .iter()
            .map(|&p| (p, check_covering_property(x.covering(), p)))
            .collect(),
        _ => {
            let m = doc.model();
            Property::ALL
                .iter()
                .map(|&p| (p, check_property(m.frame(), p)))
                .collect()
        }
    }
}

fn properties(c: Common, require: &[String], file: &Path) -> Result<Out, CliError> {
    let required = require
        .iter()
        .map(|r| r.parse::<Property>().map_err(|e| CliError::Usage(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let doc = io::load(file, c.complete)?;
    let roster = doc.roster();
    let verdicts = property_verdicts(&doc);
    let pass = required
        .iter()
        .all(|p| verdicts.iter().any(|(q, v)| q == p && v.holds));
    let text = if c.json {
        let v: Vec<Value> = verdicts
            .iter()
            .map(|(p, v)| {
                json!({
                    "property": p.name(),
                    "holds": v.holds,
                    "witness": v.witness.as_ref().map(|w| w.render(roster)),
                })
            })
            .collect();
        json_text(&json!({ "properties": v }))
    } else {
        let mut out = String::new();
        for (p, v) in &verdicts {
            let _ = write!(out, "{} {}", p.name(), verdict_word(v.holds));
            if let Some(w) = &v.witness {
                let _ = write!(out, " {}", w.render(roster));
            }
            out.push('\n');
        }
        out
    };
    Ok(Out::check(text, pass))
}

fn axioms(c: Common, variant: &str, derived: bool, file: &Path) -> Result<Out, CliError> {
    let doc = io::load(file, c.complete)?;
    let frame = doc.model().into_frame();
    let (name, report): (String, Report) = if derived {
        ("derived".into(), derived_theorems_check(&frame)?)
    } else {
        let v = if variant.eq_ignore_ascii_case("auto") {
            classify_model(&frame).variant
        } else {
            LogicVariant::by_name(variant)
                .ok_or_else(|| CliError::Usage(format!("unknown logic variant `{variant}`")))?
        };
        let r = check_soundness(&frame, &v)?;
        (v.name, r)
    };
    let text = if c.json {
        let lines: Vec<Value> = report
            .lines
            .iter()
            .map(|l| {
                json!({
                    "scheme": l.label,
                    "params": l.params(frame.roster()),
                    "holds": l.holds(),
                    "witness": l.counter.as_ref().map(|cv| cv.render(&frame)),
                })
            })
            .collect();
        json_text(&json!({ "variant": name, "all_pass": report.all_pass(), "lines": lines }))
    } else {
        report
            .lines
            .iter()
            .map(|l| l.render(&frame) + "\n")
            .collect()
    };
    Ok(Out::check(text, report.all_pass()))
}

fn diff_models(want: &CanonicalModel, got: &CanonicalModel, roster: &Roster) -> Vec<String> {
    let mut out = Vec::new();
    if want.agents != got.agents {
        out.push(format!("agents {:?} != {:?}", want.agents, got.agents));
        return out;
    }
    diff_maps(&want.worlds, &got.worlds, "world", &mut out);
    for (i, g) in roster.groups().enumerate() {
        let (a, b) = (&want.relations[i], &got.relations[i]);
        for cls in a.difference(b) {
            out.push(format!("- relation {} class {{{}}}", roster.fmt_group(g), cls.join(",")));
        }
        for cls in b.difference(a) {
            out.push(format!("+ relation {} class {{{}}}", roster.fmt_group(g), cls.join(",")));
        }
    }
    out
}

fn diff_maps<K: Ord + std::fmt::Debug, V: PartialEq + std::fmt::Debug>(
    want: &BTreeMap<K, V>,
    got: &BTreeMap<K, V>,
    what: &str,
    out: &mut Vec<String>,
) {
    for (k, v) in want {
        match got.get(k) {
            None => out.push(format!("- {what} {k:?} {v:?}")),
            Some(v2) if v2 != v => {
                out.push(format!("- {what} {k:?} {v:?}"));
                out.push(format!("+ {what} {k:?} {v2:?}"));
            }
            _ => {}
        }
    }
    for (k, v) in got {
        if !want.contains_key(k) {
            out.push(format!("+ {what} {k:?} {v:?}"));
        }
    }
}

fn diff_coverings(want: &CanonicalCovering, got: &CanonicalCovering) -> Vec<String> {
    let mut out = Vec::new();
    if want.agents != got.agents {
        out.push(format!("agents {:?} != {:?}", want.agents, got.agents));
        return out;
    }
    diff_maps(&want.simplices, &got.simplices, "simplex", &mut out);
    diff_maps(&want.worlds, &got.worlds, "world", &mut out);
    out
}

/// Differences between the input and its image under the round trip, in
/// canonical form; empty when the translation is faithful.
pub fn roundtrip_diff(doc: &Document) -> Vec<String> {
    match doc {
        Document::Covering(x) => diff_coverings(
            &canonical_covering(x),
            &canonical_covering(&sigma(&kappa(x))),
        ),
        _ => {
            let m = doc.model();
            diff_models(
                &canonical_model(&m),
                &canonical_model(&kappa(&sigma(&m))),
                m.frame().roster(),
            )
        }
    }
}

fn convert(
    c: Common,
    to: Option<Target>,
    roundtrip: bool,
    output: Option<&Path>,
    file: &Path,
) -> Result<Out, CliError> {
    let doc = io::load(file, c.complete)?;
    if roundtrip {
        let diff = roundtrip_diff(&doc);
        let text = if c.json {
            json_text(&json!({ "empty": diff.is_empty(), "diff": diff }))
        } else {
            diff.iter().map(|l| format!("{l}\n")).collect()
        };
        return Ok(Out::check(text, diff.is_empty()));
    }
    let target = to.unwrap_or(match doc {
        Document::Covering(_) => Target::Frame,
        _ => Target::Covering,
    });
    let converted = match (target, &doc) {
        (Target::Frame, Document::Covering(x)) => io::to_json(&io::frame_doc(&kappa(x))),
        (Target::Frame, _) => io::to_json(&io::frame_doc(&doc.model())),
        (Target::Covering, Document::Covering(x)) => io::to_json(&io::covering_doc(x)),
        (Target::Covering, _) => io::to_json(&io::covering_doc(&sigma(&doc.model()))),
    };
    // the output must load back as a valid document of its kind
    io::parse_document(&converted, false)?;
    emit(output, converted, c.json)
}

/// Writes `text` to `output` if given, else returns it as stdout.
fn emit(output: Option<&Path>, text: String, json: bool) -> Result<Out, CliError> {
    match output {
        None => Ok(Out::ok(text)),
        Some(p) => {
            write_file(p, &text)?;
            let shown = p.display().to_string();
            Ok(Out::ok(if json {
                json_text(&json!({ "written": shown }))
            } else {
                format!("wrote {shown}\n")
            }))
        }
    }
}

fn unravel_cmd(c: Common, depth: usize, output: Option<&Path>, file: &Path) -> Result<Out, CliError> {
    let doc = io::load(file, c.complete)?;
    let u = unravel(&doc.model(), depth);
    let frame_json = io::to_json(&io::frame_doc(&u.model));
    if let Some(p) = output {
        write_file(p, &frame_json)?;
    }
    if c.json {
        return Ok(Out::ok(frame_json));
    }
    let f = u.model.frame();
    let src = doc.model();
    let safe = u.safe_depths();
    let mut out = format!("histories {} depth {}\n", f.world_count(), depth);
    for h in 0..f.world_count() {
        let _ = writeln!(
            out,
            "{} last={} steps={} safe-depth={}",
            f.world_id(h),
            src.frame().world_id(u.last[h]),
            u.steps[h],
            safe[h]
        );
    }
    Ok(Out::ok(out))
}

fn map_error(e: MapError) -> CliError {
    match e {
        MapError::UnknownWorld(_) => CliError::UnknownWorld(e.to_string()),
        _ => CliError::Invalid(e.to_string()),
    }
}

fn bisim(c: Common, source: &Path, target: &Path, map: &Path) -> Result<Out, CliError> {
    let m1 = io::load(source, c.complete)?.model();
    let m2 = io::load(target, c.complete)?.model();
    let raw = io::load_map(map)?;
    if m1.frame().roster() != m2.frame().roster() {
        return Err(CliError::Invalid("source and target rosters differ".into()));
    }
    let g = resolve_map(m1.frame(), m2.frame(), &raw).map_err(map_error)?;
    let morphism = check_morphism(&m1, &m2, &g).map_err(map_error)?;
    let bis = check_functional_bisimulation(&m1, &m2, &g).map_err(map_error)?;
    let roster = m1.frame().roster();
    let row = |name: &str, v: &Verdict| {
        let mut s = format!("{name} {}", if v.holds { "PASS" } else { "FAIL" });
        if let Some(w) = &v.witness {
            s.push(' ');
            s.push_str(&w.render(roster));
        }
        s + "\n"
    };
    let text = if c.json {
        let item = |v: &Verdict| json!({ "holds": v.holds, "witness": v.witness.as_ref().map(|w| w.render(roster)) });
        json_text(&json!({ "morphism": item(&morphism), "bisimulation": item(&bis) }))
    } else {
        row("morphism", &morphism) + &row("bisimulation", &bis)
    };
    Ok(Out::check(text, bis.holds))
}

fn fixture_json(f: &Fixture) -> String {
    match &f.payload {
        FixturePayload::Frame(m) => io::to_json(&io::frame_doc(m)),
        FixturePayload::Covering(x) => io::to_json(&io::covering_doc(x)),
        FixturePayload::Scenario(sc) => io::to_json(&io::scenario_doc(sc)),
    }
}

fn fixtures(c: Common, out: Option<&Path>, names: &[String]) -> Result<Out, CliError> {
    let all = builtin_fixtures();
    let mut chosen: Vec<&Fixture> = Vec::new();
    for n in names {
        let f = all
            .iter()
            .find(|f| f.name == n || f.aliases.contains(&n.as_str()))
            .ok_or_else(|| CliError::Usage(format!("unknown fixture `{n}`")))?;
        chosen.push(f);
    }
    if names.is_empty() {
        chosen = all.iter().collect();
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
            path: dir.to_path_buf(),
            source,
        })?;
        let mut written = Vec::new();
        for f in &chosen {
            let p = dir.join(format!("{}.json", f.name));
            write_file(&p, &fixture_json(f))?;
            written.push(p.display().to_string());
        }
        let text = if c.json {
            json_text(&json!({ "written": written }))
        } else {
            written.iter().map(|p| format!("wrote {p}\n")).collect()
        };
        return Ok(Out::ok(text));
    }
    if !names.is_empty() {
        if chosen.len() == 1 {
            return Ok(Out::ok(fixture_json(chosen[0])));
        }
        let docs: Vec<Value> = chosen
            .iter()
            .map(|f| serde_json::from_str(&fixture_json(f)).expect("fixture json"))
            .collect();
        return Ok(Out::ok(json_text(&Value::Array(docs))));
    }
    let text = if c.json {
        let v: Vec<Value> = chosen
            .iter()
            .map(|f| {
                json!({
                    "name": f.name,
                    "aliases": f.aliases,
                    "kind": f.payload.kind(),
                    "description": f.description,
                })
            })
            .collect();
        json_text(&Value::Array(v))
    } else {
        let width = chosen.iter().map(|f| f.name.len()).max().unwrap_or(0);
        chosen
            .iter()
            .map(|f| format!("{:width$}  {:8}  {}\n", f.name, f.payload.kind(), f.description))
            .collect()
    };
    Ok(Out::ok(text))
}

fn export_dot(c: Common, output: Option<&Path>, file: &Path) -> Result<Out, CliError> {
    let doc = io::load(file, c.complete)?;
    let x = match &doc {
        Document::Covering(x) => x.clone(),
        _ => sigma(&doc.model()),
    };
    let dot = covering_dot(&x);
    if c.json && output.is_none() {
        return Ok(Out::ok(json_text(&json!({ "dot": dot }))));
    }
    emit(output, dot, c.json)
}

fn validate(c: Common, file: &Path) -> Result<Out, CliError> {
    let raw = io::parse_raw(&io::read_text(file)?)?;
    let vs = io::violations(&raw, c.complete)?;
    let text = if c.json {
        json_text(&json!({ "valid": vs.is_empty(), "violations": vs }))
    } else if vs.is_empty() {
        "VALID\n".to_string()
    } else {
        vs.iter().map(|v| format!("{v}\n")).collect()
    };
    Ok(Out {
        text,
        code: if vs.is_empty() { EXIT_OK } else { EXIT_INVALID },
    })
}
