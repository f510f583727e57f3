//! Line-oriented text format.
//!
//! ```text
//! in x
//! out out
//! node n1 lambda
//! node n2 dil a^2*b^-1
//! edge e1 x -> n1.1
//! edge e2 n1.3 -> out
//! ```
//!
//! Leaf endpoints are written by leaf name, gate endpoints as `<id>.<port>`.
//! Leaf names may not contain whitespace or `.`.

use std::collections::HashMap;
use std::fmt::Write;

use super::{EdgeId, Gate, GateKind, Graph, NodeId, NodeKind, PortRef};
use crate::error::{GraphError, ParseError};
use crate::group::GroupElem;

pub fn serialize(g: &Graph) -> String {
    let mut out = String::new();
    for name in g.input_names() {
        writeln!(out, "in {name}").unwrap();
    }
    for name in g.output_names() {
        writeln!(out, "out {name}").unwrap();
    }
    for (id, kind) in g.nodes() {
        if let NodeKind::Gate(gate) = kind {
            writeln!(out, "node {id} {gate}").unwrap();
        }
    }
    let endpoint = |p: PortRef| match g.node(p.node) {
        Some(NodeKind::In(s)) | Some(NodeKind::Out(s)) => s.clone(),
        _ => p.to_string(),
    };
    for (id, e) in g.edges() {
        writeln!(out, "edge {id} {} -> {}", endpoint(e.src), endpoint(e.dst)).unwrap();
    }
    out
}

fn parse_id(tok: &str, prefix: char, line: usize) -> Result<u32, ParseError> {
    tok.strip_prefix(prefix)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| ParseError::new(line, format!("bad id `{tok}`, expected {prefix}<number>")))
}

fn parse_gate(tokens: &[&str], line: usize) -> Result<Gate, ParseError> {
    let kind = match tokens.first() {
        Some(&"lambda") => GateKind::Lambda,
        Some(&"fanout") => GateKind::FanOut,
        Some(&"app") => GateKind::App,
        Some(&"top") => GateKind::Top,
        Some(&"dil") => GateKind::Dil,
        Some(other) => return Err(ParseError::new(line, format!("unknown gate `{other}`"))),
        None => return Err(ParseError::new(line, "missing gate kind")),
    };
    if kind == GateKind::Dil {
        let label: GroupElem = tokens
            .get(1)
            .ok_or_else(|| ParseError::new(line, "dil gate needs a group element"))?
            .parse()
            .map_err(|e: ParseError| ParseError::new(line, e.message))?;
        if tokens.len() > 2 {
            return Err(ParseError::new(line, "trailing tokens"));
        }
        Ok(Gate::dil(label))
    } else {
        if tokens.len() > 1 {
            return Err(ParseError::new(line, "trailing tokens"));
        }
        Ok(Gate::plain(kind))
    }
}

pub fn deserialize(text: &str) -> Result<Graph, GraphError> {
    let mut g = Graph::new();
    let mut leaves: HashMap<String, NodeId> = HashMap::new();
    let mut edges = Vec::new();
    let mut gate_lines = Vec::new();
    let mut leaf_lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "node" => {
                let id = tokens
                    .get(1)
                    .ok_or_else(|| ParseError::new(line, "missing node id"))?;
                let id = NodeId(parse_id(id, 'n', line)?);
                let gate = parse_gate(&tokens[2..], line)?;
                gate_lines.push((line, id, gate));
            }
            "in" | "out" => {
                let [_, name] = tokens[..] else {
                    return Err(ParseError::new(line, "expected `in <name>` or `out <name>`").into());
                };
                if name.contains('.') {
                    return Err(ParseError::new(line, "leaf names may not contain `.`").into());
                }
                leaf_lines.push((line, tokens[0] == "in", name.to_string()));
            }
            "edge" => {
                let [_, id, src, "->", dst] = tokens[..] else {
                    return Err(ParseError::new(line, "expected `edge <id> <src> -> <dst>`").into());
                };
                let id = EdgeId(parse_id(id, 'e', line)?);
                edges.push((line, id, src.to_string(), dst.to_string()));
            }
            other => {
                return Err(ParseError::new(line, format!("unknown declaration `{other}`")).into())
            }
        }
    }
    for (line, id, gate) in gate_lines {
        g.insert_node_with_id(id, NodeKind::Gate(gate))
            .map_err(|_| ParseError::new(line, format!("node {id} declared twice")))?;
    }
    for (line, is_in, name) in leaf_lines {
        if leaves.contains_key(&name) {
            return Err(ParseError::new(line, format!("leaf `{name}` declared twice")).into());
        }
        let id = if is_in {
            g.add_input(&name)?
        } else {
            g.add_output(&name)?
        };
        leaves.insert(name, id);
    }
    let endpoint = |tok: &str, line: usize| -> Result<PortRef, ParseError> {
        if let Some((node, port)) = tok.split_once('.') {
            let node = NodeId(parse_id(node, 'n', line)?);
            let port: u8 = port
                .parse()
                .map_err(|_| ParseError::new(line, format!("bad port in `{tok}`")))?;
            Ok(PortRef::new(node, port))
        } else {
            leaves
                .get(tok)
                .map(|n| PortRef::new(*n, 1))
                .ok_or_else(|| ParseError::new(line, format!("unknown leaf `{tok}`")))
        }
    };
    for (line, id, src, dst) in edges {
        let src = endpoint(&src, line)?;
        let dst = endpoint(&dst, line)?;
        g.add_edge_with_id(id, src, dst).map_err(|e| match e {
            GraphError::Parse(p) => GraphError::Parse(p),
            other => GraphError::Parse(ParseError::new(line, other.to_string())),
        })?;
    }
    g.validate().map_err(GraphError::Invalid)?;
    Ok(g)
}
