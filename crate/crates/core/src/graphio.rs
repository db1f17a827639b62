//! Plain-text edge lists and DOT export.
//!
//! Edge-list format: a header line `n m kind` with `kind` one of `graph` or
//! `digraph`, followed by `m` lines `u v` of 0-based vertex indices. An
//! undirected file lists each edge once. Lines starting with `#` are
//! comments.

use std::fmt::Write as _;

use thiserror::Error;

use crate::groups::FiniteGroup;
use crate::powergraph::{DiGraph, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("header declares {declared} edges but {found} were listed")]
    CountMismatch { declared: usize, found: usize },
    #[error("line {line}: edge {u} {v} listed twice")]
    Duplicate { line: usize, u: usize, v: usize },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("expected a {expected} file, found {found}")]
    WrongKind { expected: &'static str, found: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeList {
    Graph(Graph),
    DiGraph(DiGraph),
}

impl EdgeList {
    pub fn kind(&self) -> &'static str {
        match self {
            EdgeList::Graph(_) => "graph",
            EdgeList::DiGraph(_) => "digraph",
        }
    }

    pub fn into_graph(self) -> Result<Graph, EdgeListError> {
        match self {
            EdgeList::Graph(g) => Ok(g),
            other => Err(EdgeListError::WrongKind { expected: "graph", found: other.kind() }),
        }
    }

    pub fn into_digraph(self) -> Result<DiGraph, EdgeListError> {
        match self {
            EdgeList::DiGraph(d) => Ok(d),
            other => Err(EdgeListError::WrongKind { expected: "digraph", found: other.kind() }),
        }
    }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize, EdgeListError> {
    tok.parse().map_err(|_| EdgeListError::Syntax { line, message: format!("expected an integer, found {tok:?}") })
}

pub fn parse_edge_list(text: &str) -> Result<EdgeList, EdgeListError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) =
        lines.next().ok_or(EdgeListError::Syntax { line: 1, message: "missing header `n m kind`".into() })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, m, kind] = fields.as_slice() else {
        return Err(EdgeListError::Syntax { line: hline, message: "header must be `n m kind`".into() });
    };
    let n = parse_usize(n, hline)?;
    let m = parse_usize(m, hline)?;
    let directed = match *kind {
        "graph" => false,
        "digraph" => true,
        other => {
            return Err(EdgeListError::Syntax {
                line: hline,
                message: format!("kind must be `graph` or `digraph`, found {other:?}"),
            })
        }
    };
    let mut graph = Graph::empty(n);
    let mut digraph = DiGraph::empty(n);
    let mut found = 0;
    for (line, body) in lines {
        let toks: Vec<&str> = body.split_whitespace().collect();
        let [u, v] = toks.as_slice() else {
            return Err(EdgeListError::Syntax { line, message: "expected `u v`".into() });
        };
        let (u, v) = (parse_usize(u, line)?, parse_usize(v, line)?);
        for w in [u, v] {
            if w >= n {
                return Err(EdgeListError::Graph {
                    line,
                    source: GraphError::VertexOutOfRange { vertex: w, count: n },
                });
            }
        }
        if u == v {
            return Err(EdgeListError::Graph { line, source: GraphError::Loop(u) });
        }
        let seen = if directed { digraph.has_arc(u, v) } else { graph.has_edge(u, v) };
        if seen {
            return Err(EdgeListError::Duplicate { line, u, v });
        }
        if directed {
            digraph.add_arc(u, v);
        } else {
            graph.add_edge(u, v);
        }
        found += 1;
    }
    if found != m {
        return Err(EdgeListError::CountMismatch { declared: m, found });
    }
    Ok(if directed { EdgeList::DiGraph(digraph) } else { EdgeList::Graph(graph) })
}

pub fn graph_to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {} graph\n", g.vertex_count(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn digraph_to_edge_list(d: &DiGraph) -> String {
    let arcs = d.arcs();
    let mut out = format!("{} {} digraph\n", d.vertex_count(), arcs.len());
    for (u, v) in arcs {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

fn dot_vertices(out: &mut String, n: usize, group: Option<&FiniteGroup>) {
    for v in 0..n {
        match group {
            Some(g) => {
                let label = g.label(v).replace('"', "\\\"");
                let _ = writeln!(out, "  {v} [label=\"{v}: {label}\"];");
            }
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
}

/// DOT for an undirected graph; element names are added when `group` is given.
pub fn graph_to_dot(g: &Graph, group: Option<&FiniteGroup>) -> String {
    let mut out = String::from("graph {\n");
    dot_vertices(&mut out, g.vertex_count(), group);
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

pub fn digraph_to_dot(d: &DiGraph, group: Option<&FiniteGroup>) -> String {
    let mut out = String::from("digraph {\n");
    dot_vertices(&mut out, d.vertex_count(), group);
    for (u, v) in d.arcs() {
        let _ = writeln!(out, "  {u} -> {v};");
    }
    out.push_str("}\n");
    out
}
