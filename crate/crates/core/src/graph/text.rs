//! Line-oriented text format for boards and positions.
//!
//! ```text
//! # comments start with '#'
//! graph undirected
//! vertices 3
//! k 2
//! edge 0 1
//! edge 1 2
//! color 0 1
//! order 1 0 2
//! ```
//!
//! Vertices are 0-based. `color <v> <c>` paints `v` with `c` in `1..=k`;
//! `order` lists the vertex painted at each turn of a sequential game.
//! [`GraphDocument::to_text`] writes the canonical layout shown above (header,
//! `k`, edges in insertion order, colors by vertex, order) and parsing that
//! text gives back an identical document.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use super::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDocument {
    pub graph: Graph,
    pub k: Option<u32>,
    pub colors: BTreeMap<Vertex, u32>,
    pub order: Option<Vec<Vertex>>,
}

impl GraphDocument {
    pub fn new(graph: Graph) -> Self {
        GraphDocument { graph, k: None, colors: BTreeMap::new(), order: None }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut directed = None;
        let mut graph: Option<Graph> = None;
        let mut k = None;
        let mut colors = BTreeMap::new();
        let mut order = None;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let mut words = content.split_whitespace();
            let keyword = words.next().unwrap();
            let args: Vec<&str> = words.collect();
            let nums = || -> Result<Vec<usize>, ParseError> {
                args.iter()
                    .map(|a| usize::from_str(a).map_err(|_| err(line, format!("expected a number, got `{a}`"))))
                    .collect()
            };
            match keyword {
                "graph" => {
                    if directed.is_some() {
                        return Err(err(line, "duplicate `graph` line"));
                    }
                    directed = Some(match args.as_slice() {
                        ["directed"] => true,
                        ["undirected"] => false,
                        _ => return Err(err(line, "expected `graph directed` or `graph undirected`")),
                    });
                }
                "vertices" => {
                    let d = directed.ok_or_else(|| err(line, "`vertices` before `graph`"))?;
                    if graph.is_some() {
                        return Err(err(line, "duplicate `vertices` line"));
                    }
                    match nums()?.as_slice() {
                        [n] => graph = Some(Graph::new(*n, d)),
                        _ => return Err(err(line, "`vertices` takes one number")),
                    }
                }
                "k" => {
                    if k.is_some() {
                        return Err(err(line, "duplicate `k` line"));
                    }
                    match nums()?.as_slice() {
                        [c] if *c >= 1 && *c <= u32::MAX as usize => k = Some(*c as u32),
                        _ => return Err(err(line, "`k` takes one positive number")),
                    }
                }
                "edge" => {
                    let g = graph.as_mut().ok_or_else(|| err(line, "`edge` before `vertices`"))?;
                    match nums()?.as_slice() {
                        [u, v] => g.add_edge(*u, *v).map_err(|e| err(line, e.to_string()))?,
                        _ => return Err(err(line, "`edge` takes two vertices")),
                    }
                }
                "color" => {
                    let g = graph.as_ref().ok_or_else(|| err(line, "`color` before `vertices`"))?;
                    match nums()?.as_slice() {
                        [v, c] => {
                            if *v >= g.n() {
                                return Err(err(line, format!("vertex {v} out of range")));
                            }
                            if *c == 0 || *c > u32::MAX as usize {
                                return Err(err(line, "colors start at 1"));
                            }
                            if colors.insert(*v, *c as u32).is_some() {
                                return Err(err(line, format!("vertex {v} colored twice")));
                            }
                        }
                        _ => return Err(err(line, "`color` takes a vertex and a color")),
                    }
                }
                "order" => {
                    let g = graph.as_ref().ok_or_else(|| err(line, "`order` before `vertices`"))?;
                    if order.is_some() {
                        return Err(err(line, "duplicate `order` line"));
                    }
                    let f = nums()?;
                    let mut seen = vec![false; g.n()];
                    if f.len() != g.n() {
                        return Err(err(line, format!("order lists {} vertices, expected {}", f.len(), g.n())));
                    }
                    for &v in &f {
                        if v >= g.n() || std::mem::replace(&mut seen[v], true) {
                            return Err(err(line, "order must be a permutation of the vertices"));
                        }
                    }
                    order = Some(f);
                }
                other => return Err(err(line, format!("unknown keyword `{other}`"))),
            }
        }

        let graph = graph.ok_or_else(|| err(0, "missing `graph`/`vertices` header"))?;
        if let Some(k) = k {
            if let Some((v, c)) = colors.iter().find(|(_, &c)| c > k) {
                return Err(err(0, format!("vertex {v} has color {c} above k = {k}")));
            }
        }
        Ok(GraphDocument { graph, k, colors, order })
    }

    pub fn to_text(&self) -> String {
        let g = &self.graph;
        let mut s = String::new();
        let kind = if g.is_directed() { "directed" } else { "undirected" };
        writeln!(s, "graph {kind}").unwrap();
        writeln!(s, "vertices {}", g.n()).unwrap();
        if let Some(k) = self.k {
            writeln!(s, "k {k}").unwrap();
        }
        for &(u, v) in g.edges() {
            writeln!(s, "edge {u} {v}").unwrap();
        }
        for (v, c) in &self.colors {
            writeln!(s, "color {v} {c}").unwrap();
        }
        if let Some(order) = &self.order {
            let parts: Vec<String> = order.iter().map(|v| v.to_string()).collect();
            writeln!(s, "order {}", parts.join(" ")).unwrap();
        }
        s
    }
}
