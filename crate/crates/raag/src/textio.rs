//! Line-oriented graph documents and command-line builder specs.
//!
//! Document grammar: optional `#` comment lines, one `graph <name> <order>`
//! header, then `e <u> <v>` lines with `0 <= u < v < order` and no
//! duplicates. Serialization is the normal form: no comments, edges sorted,
//! single spaces, one trailing newline.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDocument {
    pub name: String,
    pub order: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected `graph <name> <order>`, got {text:?}")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: expected `e <u> <v>`, got {text:?}")]
    MalformedEdge { line: usize, text: String },
    #[error("line {line}: endpoint {v} out of range for order {order}")]
    EndpointOutOfRange { line: usize, v: usize, order: usize },
    #[error("line {line}: edge endpoints must satisfy u < v, got {u} {v}")]
    EndpointsOutOfOrder { line: usize, u: usize, v: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("missing `graph` header line")]
    MissingHeader,
}

pub fn parse_graph(text: &str) -> Result<GraphDocument, ParseError> {
    let mut doc: Option<GraphDocument> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match &mut doc {
            None => {
                if fields.len() != 3 || fields[0] != "graph" {
                    return Err(ParseError::MalformedHeader {
                        line,
                        text: trimmed.to_string(),
                    });
                }
                let order = fields[2].parse().map_err(|_| ParseError::MalformedHeader {
                    line,
                    text: trimmed.to_string(),
                })?;
                doc = Some(GraphDocument {
                    name: fields[1].to_string(),
                    order,
                    edges: Vec::new(),
                });
            }
            Some(doc) => {
                if fields.len() != 3 || fields[0] != "e" {
                    return Err(ParseError::MalformedEdge {
                        line,
                        text: trimmed.to_string(),
                    });
                }
                let bad = |_| ParseError::MalformedEdge {
                    line,
                    text: trimmed.to_string(),
                };
                let u: usize = fields[1].parse().map_err(bad)?;
                let v: usize = fields[2].parse().map_err(bad)?;
                if u >= v {
                    return Err(ParseError::EndpointsOutOfOrder { line, u, v });
                }
                if v >= doc.order {
                    return Err(ParseError::EndpointOutOfRange {
                        line,
                        v,
                        order: doc.order,
                    });
                }
                if doc.edges.contains(&(u, v)) {
                    return Err(ParseError::DuplicateEdge { line, u, v });
                }
                doc.edges.push((u, v));
            }
        }
    }
    doc.ok_or(ParseError::MissingHeader)
}

pub fn serialize_graph(doc: &GraphDocument) -> String {
    let mut edges = doc.edges.clone();
    edges.sort_unstable();
    let mut out = format!("graph {} {}\n", doc.name, doc.order);
    for (u, v) in edges {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

impl GraphDocument {
    pub fn from_graph(name: &str, g: &Graph) -> GraphDocument {
        GraphDocument {
            name: name.to_string(),
            order: g.order(),
            edges: g.edges(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph, crate::graph::GraphError> {
        Graph::from_edges(self.order, &self.edges)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("builder {builder}: malformed count {text:?}")]
    MalformedCount { builder: &'static str, text: String },
    #[error("cycle builder needs at least 3 vertices, got {0}")]
    CycleTooSmall(usize),
    #[error("no split of {text:?} into two valid specs around {op:?}")]
    NoValidSplit { text: String, op: char },
    #[error("unrecognized builder spec {0:?}")]
    Unrecognized(String),
}

/// True when the string names a builder rather than a file path.
pub fn is_builder_spec(s: &str) -> bool {
    ["path:", "cycle:", "complete:", "kr2:", "complement:", "union:", "join:"]
        .iter()
        .any(|p| s.starts_with(p))
}

/// Resolve a recursive builder spec: `path:<n>`, `cycle:<n>`,
/// `complete:<n>`, `kr2:<r>`, `complement:<spec>`, `union:<spec>+<spec>`,
/// `join:<spec>*<spec>`. Binary builders try every split point.
pub fn parse_spec(s: &str) -> Result<Graph, SpecError> {
    let count = |builder: &'static str, text: &str| -> Result<usize, SpecError> {
        text.parse().map_err(|_| SpecError::MalformedCount {
            builder,
            text: text.to_string(),
        })
    };
    if let Some(rest) = s.strip_prefix("path:") {
        return Ok(Graph::path(count("path", rest)?));
    }
    if let Some(rest) = s.strip_prefix("cycle:") {
        let n = count("cycle", rest)?;
        if n < 3 {
            return Err(SpecError::CycleTooSmall(n));
        }
        return Ok(Graph::cycle(n));
    }
    if let Some(rest) = s.strip_prefix("complete:") {
        return Ok(Graph::complete(count("complete", rest)?));
    }
    if let Some(rest) = s.strip_prefix("kr2:") {
        return Ok(Graph::kr2(count("kr2", rest)?));
    }
    if let Some(rest) = s.strip_prefix("complement:") {
        return Ok(parse_spec(rest)?.complement());
    }
    for (prefix, op) in [("union:", '+'), ("join:", '*')] {
        if let Some(rest) = s.strip_prefix(prefix) {
            for (i, c) in rest.char_indices() {
                if c != op {
                    continue;
                }
                let (a, b) = (&rest[..i], &rest[i + 1..]);
                if let (Ok(ga), Ok(gb)) = (parse_spec(a), parse_spec(b)) {
                    return Ok(match op {
                        '+' => ga.disjoint_union(&gb),
                        _ => ga.join(&gb),
                    });
                }
            }
            return Err(SpecError::NoValidSplit {
                text: rest.to_string(),
                op,
            });
        }
    }
    Err(SpecError::Unrecognized(s.to_string()))
}
