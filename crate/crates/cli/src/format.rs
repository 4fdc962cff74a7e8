//! Text instance formats and the JSON scenario format.
//!
//! ```text
//! PARAPAC BOOL kind=kcnf n=3 k=1
//! 110 1
//! 011 1
//! 000 0
//! ```
//!
//! ```text
//! PARAPAC GRAPH kind=hdeletion N=4 k=1 family=K2
//! SAMPLE 1
//! 1 2
//! END
//! ```
//!
//! ```text
//! PARAPAC HS n=3 k=1
//! 1 2
//! 2 3
//! ```
//!
//! Blank lines and lines starting with `#` are ignored everywhere.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use parapac_core::oracle::{FiniteDistribution, HiddenScenario};
use parapac_core::reductions::HittingSetInstance;
use parapac_core::{
    Assignment, Clause, CnfFormula, ConceptKind, ConsistencyInstance, DnfFormula, ForbiddenFamily,
    Graph, GraphSampleSet, Hypothesis, InstanceSamples, LabeledSample, Literal, ParamInfo,
    SampleSet, Term, VertexSet,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Core(#[from] parapac_core::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

type Result<T> = std::result::Result<T, FormatError>;

fn line_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Line {
        line,
        message: message.into(),
    }
}

fn field_err(field: &str, message: impl Into<String>) -> FormatError {
    FormatError::Field {
        field: field.to_string(),
        message: message.into(),
    }
}

/// Anything `parse_instance` can read.
#[derive(Debug, Clone)]
pub enum ParsedFile {
    Consistency(ConsistencyInstance),
    HittingSet(HittingSetInstance),
    Scenario(HiddenScenario),
}

/// Dispatches on the header line (or a leading `{` for scenarios).
pub fn parse_instance(text: &str) -> Result<ParsedFile> {
    if text.trim_start().starts_with('{') {
        return parse_scenario(text).map(ParsedFile::Scenario);
    }
    let (_, header) = content_lines(text)
        .next()
        .ok_or_else(|| line_err(1, "empty file"))?;
    match header.split_whitespace().nth(1) {
        Some("BOOL") => parse_bool_instance(text).map(ParsedFile::Consistency),
        Some("GRAPH") => parse_graph_instance(text).map(ParsedFile::Consistency),
        Some("HS") => parse_hitting_set(text).map(ParsedFile::HittingSet),
        _ => Err(line_err(1, "expected `PARAPAC BOOL|GRAPH|HS ...` header")),
    }
}

/// Non-blank, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

struct Header {
    line: usize,
    fields: BTreeMap<String, String>,
}

impl Header {
    fn parse(line: usize, text: &str, tag: &str, allowed: &[&str]) -> Result<Self> {
        let mut words = text.split_whitespace();
        if words.next() != Some("PARAPAC") || words.next() != Some(tag) {
            return Err(line_err(
                line,
                format!("expected header `PARAPAC {tag} ...`"),
            ));
        }
        let mut fields = BTreeMap::new();
        for w in words {
            let (key, value) = w
                .split_once('=')
                .ok_or_else(|| line_err(line, format!("expected key=value, found `{w}`")))?;
            if !allowed.contains(&key) {
                return Err(line_err(line, format!("unknown header field `{key}`")));
            }
            if fields.insert(key.to_string(), value.to_string()).is_some() {
                return Err(line_err(line, format!("repeated header field `{key}`")));
            }
        }
        Ok(Self { line, fields })
    }

    fn get(&self, key: &str) -> Result<&str> {
        self.fields
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| line_err(self.line, format!("missing header field `{key}`")))
    }

    fn number(&self, key: &str) -> Result<usize> {
        self.get(key)?
            .parse()
            .map_err(|_| line_err(self.line, format!("`{key}` must be a non-negative integer")))
    }
}

pub const FAMILY_NAMES: [&str; 6] = ["K2", "P3", "P4", "K3", "C4", "CLAW"];

pub fn family_member(name: &str) -> Option<Graph> {
    Some(match name.to_ascii_uppercase().as_str() {
        "K2" => Graph::complete(2),
        "P3" => Graph::path(3),
        "P4" => Graph::path(4),
        "K3" => Graph::complete(3),
        "C4" => Graph::cycle(4),
        "CLAW" => Graph::claw(),
        _ => return None,
    })
}

fn member_name(g: &Graph) -> Option<&'static str> {
    FAMILY_NAMES
        .into_iter()
        .find(|name| family_member(name).as_ref() == Some(g))
}

/// Comma-separated member names, e.g. `K2` or `P3,CLAW`.
pub fn parse_family(spec: &str) -> std::result::Result<ForbiddenFamily, String> {
    let members = spec
        .split(',')
        .map(|name| {
            family_member(name.trim()).ok_or_else(|| format!("unknown family member `{name}`"))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    ForbiddenFamily::new(members).map_err(|e| e.to_string())
}

pub fn family_spec(family: &ForbiddenFamily) -> Option<String> {
    let names = family
        .members()
        .iter()
        .map(member_name)
        .collect::<Option<Vec<_>>>()?;
    Some(names.join(","))
}

/// Kind names as printed by [`ConceptKind::name`]; `hdeletion` needs a family.
pub fn parse_kind(name: &str, family: Option<&str>) -> std::result::Result<ConceptKind, String> {
    Ok(match name {
        "kcnf" => ConceptKind::KCnf,
        "kdnf" => ConceptKind::KDnf,
        "kterm_dnf" => ConceptKind::KTermDnf,
        "kclause_cnf" => ConceptKind::KClauseCnf,
        "fvs" => ConceptKind::Fvs,
        "hdeletion" => {
            let spec = family.ok_or("kind `hdeletion` needs a family (e.g. family=K2)")?;
            ConceptKind::HDeletion(parse_family(spec)?)
        }
        other => return Err(format!("unknown kind `{other}`")),
    })
}

fn parse_label(line: usize, s: &str) -> Result<bool> {
    match s {
        "1" => Ok(true),
        "0" => Ok(false),
        _ => Err(line_err(line, format!("label must be 0 or 1, found `{s}`"))),
    }
}

pub fn parse_bool_instance(text: &str) -> Result<ConsistencyInstance> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| line_err(1, "empty file"))?;
    let header = Header::parse(hl, header, "BOOL", &["kind", "n", "k"])?;
    let kind = parse_kind(header.get("kind")?, None).map_err(|m| line_err(hl, m))?;
    if kind.is_graph() {
        return Err(line_err(hl, "graph kinds use the GRAPH format"));
    }
    let n = header.number("n")?;
    let k = header.number("k")?;
    let mut samples: Vec<LabeledSample> = Vec::new();
    let mut seen: BTreeMap<Assignment, (bool, usize)> = BTreeMap::new();
    for (line, text) in lines {
        let mut words = text.split_whitespace();
        let (Some(bits), Some(label), None) = (words.next(), words.next(), words.next()) else {
            return Err(line_err(line, "expected `<bits> <label>`"));
        };
        let x = Assignment::parse_bits(bits)
            .ok_or_else(|| line_err(line, format!("`{bits}` is not a bitstring")))?;
        if x.width() != n {
            return Err(line_err(
                line,
                format!("assignment has width {}, header says n={n}", x.width()),
            ));
        }
        let label = parse_label(line, label)?;
        match seen.get(&x) {
            Some(&(l, first)) if l != label => {
                return Err(line_err(
                    line,
                    format!("assignment {x} already labeled {} on line {first}", l as u8),
                ));
            }
            Some(_) => continue,
            None => {
                seen.insert(x.clone(), (label, line));
                samples.push(LabeledSample::new(x, label));
            }
        }
    }
    let samples = SampleSet::new(n, samples)?;
    Ok(ConsistencyInstance::new(
        kind,
        InstanceSamples::Boolean(samples),
        k,
    )?)
}

type OpenSample = (usize, bool, Vec<(usize, usize)>);

pub fn parse_graph_instance(text: &str) -> Result<ConsistencyInstance> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| line_err(1, "empty file"))?;
    let header = Header::parse(hl, header, "GRAPH", &["kind", "N", "k", "family"])?;
    let family = header.fields.get("family").map(String::as_str);
    let kind = parse_kind(header.get("kind")?, family).map_err(|m| line_err(hl, m))?;
    if !kind.is_graph() {
        return Err(line_err(hl, "formula kinds use the BOOL format"));
    }
    let order = header.number("N")?;
    let k = header.number("k")?;

    let mut graphs: Vec<(Graph, bool)> = Vec::new();
    // Open SAMPLE block: its line, label and edges so far.
    let mut current: Option<OpenSample> = None;
    for (line, text) in lines {
        let words: Vec<&str> = text.split_whitespace().collect();
        match (words.as_slice(), &mut current) {
            (["SAMPLE", label], None) => {
                current = Some((line, parse_label(line, label)?, Vec::new()))
            }
            (["SAMPLE", ..], Some((open, ..))) => {
                return Err(line_err(
                    line,
                    format!("SAMPLE opened on line {open} is missing END"),
                ));
            }
            (["END"], Some(_)) => {
                let (open, label, edges) = current.take().expect("matched Some");
                let g = Graph::new(order, edges).map_err(|e| line_err(open, e.to_string()))?;
                if let Some((_, l)) = graphs.iter().find(|(h, _)| *h == g) {
                    if *l != label {
                        return Err(line_err(open, "same graph appears with both labels"));
                    }
                    continue;
                }
                graphs.push((g, label));
            }
            ([u, v], Some((_, _, edges))) => {
                let parse = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| line_err(line, format!("`{s}` is not a vertex")))
                };
                edges.push((parse(u)?, parse(v)?));
            }
            _ => return Err(line_err(line, format!("unexpected `{text}`"))),
        }
    }
    if let Some((open, ..)) = current {
        return Err(line_err(open, "SAMPLE block is missing END"));
    }
    let samples = GraphSampleSet::new(order, graphs)?;
    Ok(ConsistencyInstance::new(
        kind,
        InstanceSamples::Graph(samples),
        k,
    )?)
}

pub fn parse_hitting_set(text: &str) -> Result<HittingSetInstance> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| line_err(1, "empty file"))?;
    let header = Header::parse(hl, header, "HS", &["n", "k"])?;
    let n = header.number("n")?;
    let k = header.number("k")?;
    let mut family = Vec::new();
    for (line, text) in lines {
        let set = text
            .split_whitespace()
            .map(|w| match w.parse::<usize>() {
                Ok(v) if (1..=n).contains(&v) => Ok(v),
                _ => Err(line_err(
                    line,
                    format!("`{w}` is not an element of 1..={n}"),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        family.push(set);
    }
    Ok(HittingSetInstance::new(n, family, k)?)
}

pub fn write_instance(inst: &ConsistencyInstance) -> String {
    let mut out = String::new();
    match &inst.samples {
        InstanceSamples::Boolean(s) => {
            let _ = writeln!(
                out,
                "PARAPAC BOOL kind={} n={} k={}",
                inst.kind,
                s.width(),
                inst.k
            );
            for x in s.iter() {
                let _ = writeln!(out, "{} {}", x.assignment, x.label as u8);
            }
        }
        InstanceSamples::Graph(g) => {
            let _ = write!(
                out,
                "PARAPAC GRAPH kind={} N={} k={}",
                inst.kind,
                g.order(),
                inst.k
            );
            if let ConceptKind::HDeletion(family) = &inst.kind {
                let spec = family_spec(family).unwrap_or_else(|| "?".to_string());
                let _ = write!(out, " family={spec}");
            }
            out.push('\n');
            for s in g.samples() {
                let _ = writeln!(out, "SAMPLE {}", s.label as u8);
                for (u, v) in s.graph.edges() {
                    let _ = writeln!(out, "{u} {v}");
                }
                out.push_str("END\n");
            }
        }
    }
    out
}

pub fn write_hitting_set(inst: &HittingSetInstance) -> String {
    let mut out = format!("PARAPAC HS n={} k={}\n", inst.universe_size(), inst.k());
    for set in inst.family() {
        let words: Vec<String> = set.iter().map(ToString::to_string).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

fn parse_literal(token: &str) -> Option<Literal> {
    let (positive, rest) = match token.strip_prefix('!') {
        Some(rest) => (false, rest),
        None => (true, token),
    };
    let var = rest.strip_prefix('x')?.parse().ok().filter(|&v| v >= 1)?;
    Some(Literal { var, positive })
}

/// Parenthesized groups of literals: `(a ∘ b) • (c)` where `∘` is `inner`
/// and `•` is `outer`.
fn parse_groups(
    text: &str,
    inner: char,
    outer: char,
) -> std::result::Result<Vec<Vec<Literal>>, String> {
    let mut groups = Vec::new();
    let mut rest = text.trim();
    loop {
        let body_start = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected `(` at `{rest}`"))?;
        let close = body_start.find(')').ok_or("unclosed `(`")?;
        let body = body_start[..close].trim();
        let lits = if body.is_empty() {
            Vec::new()
        } else {
            body.split(inner)
                .map(|t| {
                    parse_literal(t.trim()).ok_or_else(|| format!("bad literal `{}`", t.trim()))
                })
                .collect::<std::result::Result<Vec<_>, _>>()?
        };
        groups.push(lits);
        rest = body_start[close + 1..].trim_start();
        if rest.is_empty() {
            return Ok(groups);
        }
        rest = rest
            .strip_prefix(outer)
            .ok_or_else(|| format!("expected `{outer}` at `{rest}`"))?
            .trim_start();
    }
}

/// Reads a hypothesis in its display form: `FALSE` / `(x1 & !x2) | (x3)` for
/// DNF kinds, `TRUE` / `(x1 | x2) & (!x3)` for CNF kinds, `{1,4}` for graph
/// kinds. `n` is the assignment width.
pub fn parse_hypothesis(
    kind: &ConceptKind,
    n: usize,
    text: &str,
) -> std::result::Result<Hypothesis, String> {
    let text = text.trim();
    match kind {
        ConceptKind::KDnf | ConceptKind::KTermDnf => {
            let terms = if text == "FALSE" {
                Vec::new()
            } else {
                parse_groups(text, '&', '|')?
                    .into_iter()
                    .map(Term::new)
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| e.to_string())?
            };
            DnfFormula::new(n, terms)
                .map(Hypothesis::Dnf)
                .map_err(|e| e.to_string())
        }
        ConceptKind::KCnf | ConceptKind::KClauseCnf => {
            let clauses = if text == "TRUE" {
                Vec::new()
            } else {
                parse_groups(text, '|', '&')?
                    .into_iter()
                    .map(Clause::new)
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| e.to_string())?
            };
            CnfFormula::new(n, clauses)
                .map(Hypothesis::Cnf)
                .map_err(|e| e.to_string())
        }
        ConceptKind::HDeletion(_) | ConceptKind::Fvs => {
            let order = parapac_core::hypothesis::graph_order(n).map_err(|e| e.to_string())?;
            let body = text
                .strip_prefix('{')
                .and_then(|t| t.strip_suffix('}'))
                .ok_or("vertex sets are written `{1,3}`")?;
            let vertices = body
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| format!("`{t}` is not a vertex"))
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let set = VertexSet::new(order, vertices).map_err(|e| e.to_string())?;
            let property = kind.graph_property().ok_or("graph kind without property")?;
            Ok(Hypothesis::DeletionSet { set, property })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportPoint {
    pub bits: String,
    pub weight: f64,
}

/// On-disk form of a hidden scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub kind: String,
    pub n: usize,
    pub hypothesis: String,
    pub support: Vec<SupportPoint>,
    pub k: usize,
    pub ell: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
}

impl ScenarioFile {
    pub fn into_scenario(self) -> Result<HiddenScenario> {
        let kind =
            parse_kind(&self.kind, self.family.as_deref()).map_err(|m| field_err("kind", m))?;
        let concept = parse_hypothesis(&kind, self.n, &self.hypothesis)
            .map_err(|m| field_err("hypothesis", m))?;
        let support = self
            .support
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let x = Assignment::parse_bits(&p.bits)
                    .ok_or_else(|| field_err(&format!("support[{i}].bits"), "not a bitstring"))?;
                Ok((x, p.weight))
            })
            .collect::<Result<Vec<_>>>()?;
        let distribution = FiniteDistribution::new(self.n, support)
            .map_err(|e| field_err("support", e.to_string()))?;
        HiddenScenario::new(
            kind,
            concept,
            distribution,
            ParamInfo::new(self.k, self.ell),
        )
        .map_err(|e| field_err("k/ell", e.to_string()))
    }

    pub fn from_scenario(s: &HiddenScenario) -> Self {
        let family = match s.kind() {
            ConceptKind::HDeletion(f) => family_spec(f),
            _ => None,
        };
        Self {
            kind: s.kind().name().to_string(),
            n: s.width(),
            hypothesis: s.concept().to_string(),
            support: s
                .distribution()
                .support()
                .iter()
                .zip(s.distribution().weights())
                .map(|(x, &w)| SupportPoint {
                    bits: x.to_string(),
                    weight: w,
                })
                .collect(),
            k: s.params().k,
            ell: s.params().ell,
            family,
        }
    }
}

pub fn parse_scenario(text: &str) -> Result<HiddenScenario> {
    serde_json::from_str::<ScenarioFile>(text)?.into_scenario()
}

pub fn write_scenario(s: &HiddenScenario) -> String {
    let mut out = serde_json::to_string_pretty(&ScenarioFile::from_scenario(s))
        .expect("plain data serializes");
    out.push('\n');
    out
}
