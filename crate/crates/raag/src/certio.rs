//! Certificate files: a line-oriented structured text format with a
//! bit-exact round trip.
//!
//! ```text
//! certificate
//! convention G
//! begin lhs
//! graph lhs <order>
//! e <u> <v> ...
//! end lhs
//! begin rhs
//! ...
//! end rhs
//! begin step full | begin step collapse <v>
//! begin target
//! ...
//! end target
//! m <i> <j> ...
//! end step
//! end certificate
//! ```
//!
//! Maps are listed as ordered pairs `m <i> <j>`, one per source vertex, in
//! source order.

use std::fmt::Write as _;

use thiserror::Error;

use crate::certificates::{Certificate, Convention, Step};
use crate::graph::Graph;
use crate::textio::{parse_graph, serialize_graph, GraphDocument};

pub fn serialize_certificate(cert: &Certificate) -> String {
    let mut out = String::from("certificate\n");
    let conv = match cert.convention {
        Convention::A => "A",
        Convention::G => "G",
    };
    writeln!(out, "convention {conv}").unwrap();
    let block = |out: &mut String, label: &str, g: &Graph| {
        writeln!(out, "begin {label}").unwrap();
        out.push_str(&serialize_graph(&GraphDocument::from_graph(label, g)));
        writeln!(out, "end {label}").unwrap();
    };
    block(&mut out, "lhs", &cert.lhs);
    block(&mut out, "rhs", &cert.rhs);
    for step in &cert.steps {
        let (head, target, map) = match step {
            Step::Full { target, map } => ("begin step full".to_string(), target, map),
            Step::DoubleCollapse { v, target, iso_map } => {
                (format!("begin step collapse {v}"), target, iso_map)
            }
        };
        out.push_str(&head);
        out.push('\n');
        block(&mut out, "target", target);
        for (i, j) in map.iter().enumerate() {
            writeln!(out, "m {i} {j}").unwrap();
        }
        writeln!(out, "end step").unwrap();
    }
    out.push_str("end certificate\n");
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertParseError {
    #[error("line {line}: expected {expected}, got {text:?}")]
    Unexpected {
        line: usize,
        expected: &'static str,
        text: String,
    },
    #[error("line {line}: bad graph block: {inner}")]
    BadGraph {
        line: usize,
        inner: crate::textio::ParseError,
    },
    #[error("line {line}: graph block does not define a valid graph: {inner}")]
    InvalidGraph {
        line: usize,
        inner: crate::graph::GraphError,
    },
    #[error("line {line}: map pairs must list sources 0,1,2,... in order")]
    BadMapOrder { line: usize },
    #[error("unexpected end of file")]
    Truncated,
}

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Lines<'a> {
        Lines {
            items: text
                .lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
                .collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.peek();
        if item.is_some() {
            self.pos += 1;
        }
        item
    }

    fn expect(&mut self, literal: &'static str) -> Result<(), CertParseError> {
        let (line, text) = self.next().ok_or(CertParseError::Truncated)?;
        if text != literal {
            return Err(CertParseError::Unexpected {
                line,
                expected: literal,
                text: text.to_string(),
            });
        }
        Ok(())
    }

    /// Consume a `begin <label>` ... `end <label>` graph block.
    fn graph_block(&mut self, label: &'static str) -> Result<Graph, CertParseError> {
        let (begin_line, text) = self.next().ok_or(CertParseError::Truncated)?;
        if text != format!("begin {label}") {
            return Err(CertParseError::Unexpected {
                line: begin_line,
                expected: "begin of a graph block",
                text: text.to_string(),
            });
        }
        let mut body = String::new();
        loop {
            let (line, text) = self.next().ok_or(CertParseError::Truncated)?;
            if text == format!("end {label}") {
                break;
            }
            if text.starts_with("begin ") || text.starts_with("end ") {
                return Err(CertParseError::Unexpected {
                    line,
                    expected: "graph line or end of block",
                    text: text.to_string(),
                });
            }
            body.push_str(text);
            body.push('\n');
        }
        let doc = parse_graph(&body).map_err(|inner| CertParseError::BadGraph {
            line: begin_line,
            inner,
        })?;
        doc.to_graph()
            .map_err(|inner| CertParseError::InvalidGraph {
                line: begin_line,
                inner,
            })
    }

    fn map_lines(&mut self) -> Result<Vec<usize>, CertParseError> {
        let mut map = Vec::new();
        while let Some((line, text)) = self.peek() {
            let fields: Vec<&str> = text.split_whitespace().collect();
            if fields.len() != 3 || fields[0] != "m" {
                break;
            }
            self.pos += 1;
            let bad = |_| CertParseError::Unexpected {
                line,
                expected: "m <i> <j>",
                text: text.to_string(),
            };
            let i: usize = fields[1].parse().map_err(bad)?;
            let j: usize = fields[2].parse().map_err(bad)?;
            if i != map.len() {
                return Err(CertParseError::BadMapOrder { line });
            }
            map.push(j);
        }
        Ok(map)
    }
}

pub fn parse_certificate(text: &str) -> Result<Certificate, CertParseError> {
    let mut lines = Lines::new(text);
    lines.expect("certificate")?;
    let (line, conv_line) = lines.next().ok_or(CertParseError::Truncated)?;
    let convention = match conv_line {
        "convention A" => Convention::A,
        "convention G" => Convention::G,
        other => {
            return Err(CertParseError::Unexpected {
                line,
                expected: "convention A|G",
                text: other.to_string(),
            })
        }
    };
    let lhs = lines.graph_block("lhs")?;
    let rhs = lines.graph_block("rhs")?;
    let mut steps = Vec::new();
    loop {
        let (line, text) = lines.next().ok_or(CertParseError::Truncated)?;
        if text == "end certificate" {
            break;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        let collapse_v = match fields.as_slice() {
            ["begin", "step", "full"] => None,
            ["begin", "step", "collapse", v] => {
                Some(v.parse().map_err(|_| CertParseError::Unexpected {
                    line,
                    expected: "begin step collapse <v>",
                    text: text.to_string(),
                })?)
            }
            _ => {
                return Err(CertParseError::Unexpected {
                    line,
                    expected: "begin step or end certificate",
                    text: text.to_string(),
                })
            }
        };
        let target = lines.graph_block("target")?;
        let map = lines.map_lines()?;
        lines.expect("end step")?;
        steps.push(match collapse_v {
            None => Step::Full { target, map },
            Some(v) => Step::DoubleCollapse {
                v,
                target,
                iso_map: map,
            },
        });
    }
    if let Some((line, text)) = lines.next() {
        return Err(CertParseError::Unexpected {
            line,
            expected: "end of file",
            text: text.to_string(),
        });
    }
    Ok(Certificate {
        convention,
        lhs,
        rhs,
        steps,
    })
}
