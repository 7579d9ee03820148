//! Group-spec mini-language, the line-oriented graph file format, and DOT
//! export.
//!
//! Graph files:
//!
//! ```text
//! version 1
//! spec 2:1;3:1
//! vertices 3
//! edge 0 2
//! edge 1 2
//! label 0 0,1
//! label 1 0,2
//! label 2 1,0
//! ```
//!
//! `spec` and `label` lines are optional. Directed graphs use `arc` lines
//! instead of `edge` lines. Blank lines and `#` comments are accepted on
//! input; writing always produces the canonical form above.

use std::fmt::Write as _;

use crate::abelian::{make_group, GroupElement, GroupSpec, SylowSpec};
use crate::error::{Error, Result};
use crate::graph::{Digraph, SimpleGraph};
use crate::group_graphs::LabeledDiffGraph;

pub const FORMAT_VERSION: u32 = 1;

fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

/// Parses `"p:r1,r2,...;q:t1,..."` into a canonical spec. Error positions
/// are byte offsets into `text`.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let mut parts = Vec::new();
    let mut offset = 0;
    for part in text.split(';') {
        parts.push(parse_sylow(part, offset)?);
        offset += part.len() + 1;
    }
    match <[SylowSpec; 2]>::try_from(parts) {
        Ok([a, b]) => make_group(a, b),
        Err(parts) => Err(parse_err(
            text.len(),
            format!(
                "expected two Sylow parts separated by ';', found {}",
                parts.len()
            ),
        )),
    }
}

fn parse_number<T: std::str::FromStr>(s: &str, pos: usize, what: &str) -> Result<T> {
    let t = s.trim();
    let lead = s.len() - s.trim_start().len();
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(
            pos + lead,
            format!("expected {what}, found {t:?}"),
        ));
    }
    t.parse()
        .map_err(|_| parse_err(pos + lead, format!("{what} {t:?} out of range")))
}

fn parse_sylow(part: &str, offset: usize) -> Result<SylowSpec> {
    let Some((p, exps)) = part.split_once(':') else {
        return Err(parse_err(
            offset + part.len(),
            "expected ':' after the prime",
        ));
    };
    let prime: u64 = parse_number(p, offset, "a prime")?;
    let mut pos = offset + p.len() + 1;
    let mut exponents = Vec::new();
    for e in exps.split(',') {
        exponents.push(parse_number::<u32>(e, pos, "an exponent")?);
        pos += e.len() + 1;
    }
    SylowSpec::new(prime, exponents)
}

fn parse_side(s: &str) -> Option<Vec<u64>> {
    let s = s.trim();
    let inner = match s.strip_prefix('(') {
        Some(rest) => rest.strip_suffix(')')?,
        None => s,
    };
    inner.split_whitespace().map(|c| c.parse().ok()).collect()
}

/// Parses an element label such as `"(1 0),2"`, checking it against `spec`.
pub fn parse_element(text: &str, spec: &GroupSpec) -> Result<GroupElement> {
    let bad = || parse_err(0, format!("malformed element {text:?}"));
    let depth_split = text
        .char_indices()
        .scan(0i32, |d, (i, c)| {
            match c {
                '(' => *d += 1,
                ')' => *d -= 1,
                _ => {}
            }
            Some((i, c, *d))
        })
        .find(|&(_, c, d)| c == ',' && d == 0)
        .map(|(i, _, _)| i)
        .ok_or_else(bad)?;
    let a = parse_side(&text[..depth_split]).ok_or_else(bad)?;
    let b = parse_side(&text[depth_split + 1..]).ok_or_else(bad)?;
    spec.element(a, b)
}

/// Parsed contents of a graph file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub version: u32,
    pub spec: Option<GroupSpec>,
    pub vertices: usize,
    pub directed: bool,
    /// Sorted; `u < v` for undirected edges.
    pub edges: Vec<(usize, usize)>,
    pub labels: Option<Vec<GroupElement>>,
}

impl GraphFile {
    pub fn from_graph(g: &SimpleGraph) -> Self {
        GraphFile {
            version: FORMAT_VERSION,
            spec: None,
            vertices: g.vertex_count(),
            directed: false,
            edges: g.edges(),
            labels: None,
        }
    }

    pub fn from_digraph(g: &Digraph) -> Self {
        GraphFile {
            version: FORMAT_VERSION,
            spec: None,
            vertices: g.vertex_count(),
            directed: true,
            edges: g.arcs(),
            labels: None,
        }
    }

    pub fn from_labeled(l: &LabeledDiffGraph) -> Self {
        GraphFile {
            spec: Some(l.spec.clone()),
            labels: Some(l.labels.clone()),
            ..GraphFile::from_graph(&l.graph)
        }
    }

    pub fn with_spec(mut self, spec: &GroupSpec) -> Self {
        self.spec = Some(spec.clone());
        self
    }

    pub fn with_labels(mut self, labels: Vec<GroupElement>) -> Self {
        self.labels = Some(labels);
        self
    }

    /// The undirected graph; arcs are symmetrized.
    pub fn graph(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.vertices, self.edges.iter().copied())
    }

    pub fn digraph(&self) -> Digraph {
        let mut d = Digraph::new(self.vertices);
        for &(u, v) in &self.edges {
            d.add_arc(u, v);
            if !self.directed {
                d.add_arc(v, u);
            }
        }
        d
    }

    pub fn write(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "version {}", self.version);
        if let Some(s) = &self.spec {
            let _ = writeln!(out, "spec {s}");
        }
        let _ = writeln!(out, "vertices {}", self.vertices);
        let word = if self.directed { "arc" } else { "edge" };
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{word} {u} {v}");
        }
        if let Some(labels) = &self.labels {
            for (v, x) in labels.iter().enumerate() {
                let _ = writeln!(out, "label {v} {x}");
            }
        }
        out
    }

    pub fn read(text: &str) -> Result<Self> {
        let mut version = None;
        let mut spec: Option<GroupSpec> = None;
        let mut vertices: Option<usize> = None;
        let mut directed: Option<bool> = None;
        let mut edges = Vec::new();
        let mut labels: Vec<Option<GroupElement>> = Vec::new();
        let mut any_label = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |msg: String| Error::GraphFormat { line, msg };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, rest) = content
                .split_once(char::is_whitespace)
                .unwrap_or((content, ""));
            let rest = rest.trim();
            let num = |s: &str| -> Result<usize> {
                s.parse()
                    .map_err(|_| err(format!("expected a non-negative integer, found {s:?}")))
            };
            if version.is_none() && key != "version" {
                return Err(err("the first line must be `version N`".into()));
            }
            match key {
                "version" => {
                    if version.is_some() {
                        return Err(err("duplicate version line".into()));
                    }
                    let v = num(rest)? as u32;
                    if v != FORMAT_VERSION {
                        return Err(err(format!("unsupported version {v}")));
                    }
                    version = Some(v);
                }
                "spec" => {
                    if spec.is_some() || vertices.is_some() {
                        return Err(err("`spec` must appear once, before `vertices`".into()));
                    }
                    spec = Some(parse_group_spec(rest).map_err(|e| err(e.to_string()))?);
                }
                "vertices" => {
                    if vertices.is_some() {
                        return Err(err("duplicate vertices line".into()));
                    }
                    let n = num(rest)?;
                    vertices = Some(n);
                    labels = vec![None; n];
                }
                "edge" | "arc" => {
                    let n = vertices.ok_or_else(|| err("`vertices` must precede edges".into()))?;
                    let is_arc = key == "arc";
                    if *directed.get_or_insert(is_arc) != is_arc {
                        return Err(err("cannot mix `edge` and `arc` lines".into()));
                    }
                    let mut it = rest.split_whitespace();
                    let (Some(u), Some(v), None) = (it.next(), it.next(), it.next()) else {
                        return Err(err(format!("expected `{key} U V`")));
                    };
                    let (u, v) = (num(u)?, num(v)?);
                    if u >= n || v >= n {
                        return Err(err(format!("vertex out of range 0..{n}")));
                    }
                    if u == v {
                        return Err(err(format!("loop at vertex {u}")));
                    }
                    if !is_arc && u > v {
                        return Err(err(format!(
                            "edge endpoints must satisfy u < v, found {u} {v}"
                        )));
                    }
                    if let Some(&last) = edges.last() {
                        if (u, v) == last {
                            return Err(err(format!("duplicate {key} {u} {v}")));
                        }
                        if (u, v) < last {
                            return Err(err(format!(
                                "{key}s must be sorted; {u} {v} follows {} {}",
                                last.0, last.1
                            )));
                        }
                    }
                    edges.push((u, v));
                }
                "label" => {
                    let s = spec
                        .as_ref()
                        .ok_or_else(|| err("labels require a `spec` line".into()))?;
                    if vertices.is_none() {
                        return Err(err("`vertices` must precede labels".into()));
                    }
                    let (v, x) = rest
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| err("expected `label V ELEMENT`".into()))?;
                    let v = num(v)?;
                    let slot = labels
                        .get_mut(v)
                        .ok_or_else(|| err(format!("vertex {v} out of range")))?;
                    if slot.is_some() {
                        return Err(err(format!("duplicate label for vertex {v}")));
                    }
                    *slot = Some(parse_element(x.trim(), s).map_err(|e| err(e.to_string()))?);
                    any_label = true;
                }
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        let lines = text.lines().count().max(1);
        let version = version.ok_or(Error::GraphFormat {
            line: 1,
            msg: "empty file".into(),
        })?;
        let vertices = vertices.ok_or(Error::GraphFormat {
            line: lines,
            msg: "missing `vertices` line".into(),
        })?;
        let labels = if any_label {
            let all: Option<Vec<_>> = labels.into_iter().collect();
            Some(all.ok_or(Error::GraphFormat {
                line: lines,
                msg: "some vertices lack labels".into(),
            })?)
        } else {
            None
        };
        Ok(GraphFile {
            version,
            spec,
            vertices,
            directed: directed.unwrap_or(false),
            edges,
            labels,
        })
    }
}

fn dot_label(labels: Option<&[GroupElement]>, v: usize) -> String {
    match labels {
        Some(l) => format!("{v} [label=\"{}\"];", l[v]),
        None => format!("{v};"),
    }
}

/// DOT text for an undirected graph, optionally labeled by group elements.
pub fn export_dot(g: &SimpleGraph, labels: Option<&[GroupElement]>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "  {}", dot_label(labels, v));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

pub fn export_dot_directed(g: &Digraph, labels: Option<&[GroupElement]>) -> String {
    let mut out = String::from("digraph G {\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "  {}", dot_label(labels, v));
    }
    for (u, v) in g.arcs() {
        let _ = writeln!(out, "  {u} -> {v};");
    }
    out.push_str("}\n");
    out
}
