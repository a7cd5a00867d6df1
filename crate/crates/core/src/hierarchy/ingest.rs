//! Readers for the three supported input documents and the nested-JSON writer.
//!
//! * folded stacks: `a;b;c 12` per line, `#` comments, repeated stacks add up
//! * nested JSON: `{"name": .., "value": .., "children": [..]}` or an array of those
//! * path CSV: header `path,value`, `/`-separated paths, RFC 4180 quoting
//!
//! A document with several top-level entries is wrapped under a synthetic
//! root named `""` carrying no value of its own.

use std::collections::{HashMap, HashSet};
use std::str::FromStr;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

use super::{Hierarchy, NodeId, TreeBuilder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    FoldedStacks,
    NestedJson,
    PathCsv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "folded" | "folded-stacks" | "stacks" => Ok(Format::FoldedStacks),
            "json" | "nested-json" => Ok(Format::NestedJson),
            "csv" | "path-csv" => Ok(Format::PathCsv),
            other => Err(format!("unknown input format '{other}'")),
        }
    }
}

impl Format {
    /// Guesses a format from a file extension.
    pub fn from_extension(ext: &str) -> Option<Self> {
        match ext.to_ascii_lowercase().as_str() {
            "folded" | "txt" | "stacks" => Some(Format::FoldedStacks),
            "json" => Some(Format::NestedJson),
            "csv" => Some(Format::PathCsv),
            _ => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IngestError {
    #[error("empty document")]
    Empty,
    #[error("syntax error at {location}: {message}")]
    Syntax { location: String, message: String },
    #[error("negative value {value} at {location}")]
    NegativeValue { location: String, value: f64 },
    #[error("path '{path}' appears more than once (at {location})")]
    DuplicatePath { location: String, path: String },
}

fn syntax(location: String, message: impl Into<String>) -> IngestError {
    IngestError::Syntax {
        location,
        message: message.into(),
    }
}

pub fn ingest(text: &str, format: Format) -> Result<Hierarchy, IngestError> {
    if text.trim().is_empty() {
        return Err(IngestError::Empty);
    }
    let builder = match format {
        Format::FoldedStacks => parse_folded(text)?,
        Format::NestedJson => parse_json(text)?,
        Format::PathCsv => parse_csv(text)?,
    };
    Ok(finish(builder))
}

/// Index 0 of every builder is the synthetic root; it is dropped when the
/// document turns out to have a single top-level entry.
fn finish(builder: TreeBuilder) -> Hierarchy {
    let top = &builder.nodes[0].children;
    if top.len() == 1 {
        let only = top[0];
        builder.finish(only)
    } else {
        builder.finish(0)
    }
}

fn builder_with_synthetic_root() -> TreeBuilder {
    let mut b = TreeBuilder::default();
    b.add(None, String::new(), 0.0);
    b
}

fn parse_value(raw: &str, location: impl Fn() -> String) -> Result<f64, IngestError> {
    let v: f64 = raw
        .parse()
        .map_err(|_| syntax(location(), format!("'{raw}' is not a number")))?;
    if v.is_nan() || v.is_infinite() {
        return Err(syntax(location(), format!("'{raw}' is not a finite number")));
    }
    if v < 0.0 {
        return Err(IngestError::NegativeValue {
            location: location(),
            value: v,
        });
    }
    // folds -0.0 into 0.0
    Ok(v + 0.0)
}

/// Walks/creates the chain of named children below the synthetic root.
struct PathIndex {
    child_by_name: HashMap<(usize, String), usize>,
}

impl PathIndex {
    fn new() -> Self {
        PathIndex {
            child_by_name: HashMap::new(),
        }
    }

    fn resolve<'a>(
        &mut self,
        b: &mut TreeBuilder,
        segments: impl Iterator<Item = &'a str>,
    ) -> usize {
        let mut cur = 0;
        for seg in segments {
            let key = (cur, seg.to_owned());
            cur = match self.child_by_name.get(&key) {
                Some(&idx) => idx,
                None => {
                    let idx = b.add(Some(cur), seg.to_owned(), 0.0);
                    self.child_by_name.insert(key, idx);
                    idx
                }
            };
        }
        cur
    }
}

fn parse_folded(text: &str) -> Result<TreeBuilder, IngestError> {
    let mut b = builder_with_synthetic_root();
    let mut index = PathIndex::new();
    let mut records = 0usize;
    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw_line.trim_end_matches(['\r', ' ', '\t']);
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let loc = || format!("line {line_no}");
        let (path, value) = line
            .rsplit_once([' ', '\t'])
            .ok_or_else(|| syntax(loc(), "expected 'path value'"))?;
        let path = path.trim_end_matches([' ', '\t']);
        if path.is_empty() {
            return Err(syntax(loc(), "missing stack path"));
        }
        if let Some(pos) = path.split(';').position(str::is_empty) {
            return Err(syntax(loc(), format!("empty frame name at frame {}", pos + 1)));
        }
        let value = parse_value(value, loc)?;
        let node = index.resolve(&mut b, path.split(';'));
        b.nodes[node].self_value += value;
        records += 1;
    }
    if records == 0 {
        return Err(IngestError::Empty);
    }
    Ok(b)
}

fn parse_json(text: &str) -> Result<TreeBuilder, IngestError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        syntax(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let mut b = builder_with_synthetic_root();
    match &doc {
        Value::Array(items) => {
            if items.is_empty() {
                return Err(IngestError::Empty);
            }
            for (i, item) in items.iter().enumerate() {
                json_node(&mut b, 0, item, format!("$[{i}]"))?;
            }
        }
        Value::Object(_) => json_node(&mut b, 0, &doc, "$".to_owned())?,
        _ => return Err(syntax("$".to_owned(), "expected an object or an array")),
    }
    Ok(b)
}

fn json_node(b: &mut TreeBuilder, parent: usize, v: &Value, at: String) -> Result<(), IngestError> {
    let obj = v
        .as_object()
        .ok_or_else(|| syntax(at.clone(), "expected an object"))?;
    let name = match obj.get("name") {
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(syntax(at, "'name' must be a string")),
        None => return Err(syntax(at, "missing 'name'")),
    };
    let value = match obj.get("value") {
        None | Some(Value::Null) => 0.0,
        Some(Value::Number(n)) => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            if !x.is_finite() {
                return Err(syntax(at, "'value' is not a finite number"));
            }
            if x < 0.0 {
                return Err(IngestError::NegativeValue {
                    location: at,
                    value: x,
                });
            }
            x + 0.0
        }
        Some(_) => return Err(syntax(at, "'value' must be a number")),
    };
    let me = b.add(Some(parent), name, value);
    match obj.get("children") {
        None | Some(Value::Null) => {}
        Some(Value::Array(kids)) => {
            for (i, kid) in kids.iter().enumerate() {
                json_node(b, me, kid, format!("{at}.children[{i}]"))?;
            }
        }
        Some(_) => return Err(syntax(at, "'children' must be an array")),
    }
    Ok(())
}

fn parse_csv(text: &str) -> Result<TreeBuilder, IngestError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let headers = rdr
        .headers()
        .map_err(|e| syntax("line 1".to_owned(), e.to_string()))?
        .clone();
    let names: Vec<&str> = headers.iter().map(str::trim).collect();
    if names != ["path", "value"] {
        return Err(syntax("line 1".to_owned(), "expected header 'path,value'"));
    }

    let mut b = builder_with_synthetic_root();
    let mut index = PathIndex::new();
    let mut explicit = HashSet::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let loc = e
                .position()
                .map_or_else(|| "unknown position".to_owned(), |p| format!("line {}", p.line()));
            syntax(loc, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        let loc = || format!("line {line}");
        let path = rec[0].trim();
        let path = path.strip_prefix('/').unwrap_or(path);
        if path.is_empty() {
            return Err(syntax(loc(), "empty path"));
        }
        if path.split('/').any(str::is_empty) {
            return Err(syntax(loc(), format!("empty segment in path '{path}'")));
        }
        let value = parse_value(rec[1].trim(), loc)?;
        let node = index.resolve(&mut b, path.split('/'));
        if !explicit.insert(node) {
            return Err(IngestError::DuplicatePath {
                location: loc(),
                path: path.to_owned(),
            });
        }
        b.nodes[node].self_value = value;
    }
    if explicit.is_empty() {
        return Err(IngestError::Empty);
    }
    Ok(b)
}

struct JsonView<'a> {
    h: &'a Hierarchy,
    id: NodeId,
}

struct JsonChildren<'a> {
    h: &'a Hierarchy,
    ids: &'a [NodeId],
}

impl Serialize for JsonView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.h.node(self.id);
        let fields = if n.children.is_empty() { 2 } else { 3 };
        let mut st = s.serialize_struct("Node", fields)?;
        st.serialize_field("name", &n.name)?;
        st.serialize_field("value", &n.self_value)?;
        if !n.children.is_empty() {
            st.serialize_field(
                "children",
                &JsonChildren {
                    h: self.h,
                    ids: &n.children,
                },
            )?;
        }
        st.end()
    }
}

impl Serialize for JsonChildren<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.ids.len()))?;
        for &id in self.ids {
            seq.serialize_element(&JsonView { h: self.h, id })?;
        }
        seq.end()
    }
}

/// Writes the hierarchy as nested JSON; values are self values.
pub fn to_nested_json(h: &Hierarchy) -> String {
    serde_json::to_string(&JsonView { h, id: h.root() }).expect("in-memory serialization")
}

/// Writes the hierarchy as folded stacks, one line per leaf or node with
/// a positive self value, in pre-order. An unnamed root (the synthetic
/// wrapper) is left out of the paths. Names containing `;` or line breaks
/// cannot be represented.
pub fn to_folded(h: &Hierarchy) -> String {
    let skip_root = h.node(h.root()).name.is_empty();
    let mut out = String::new();
    let mut path: Vec<&str> = Vec::new();
    for (i, n) in h.nodes().iter().enumerate() {
        path.truncate(n.depth as usize);
        path.push(&n.name);
        if n.self_value > 0.0 || n.children.is_empty() {
            if skip_root && i == 0 {
                continue;
            }
            let names = if skip_root { &path[1..] } else { &path[..] };
            out.push_str(&names.join(";"));
            out.push(' ');
            out.push_str(&n.self_value.to_string());
            out.push('\n');
        }
    }
    out
}
