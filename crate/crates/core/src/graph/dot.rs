use std::fmt::Write;

use super::{GateKind, Graph, NodeKind};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering. Port numbers appear as tail/head labels.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("digraph G {\n  rankdir=BT;\n");
    for (id, kind) in g.nodes() {
        let (label, shape) = match kind {
            NodeKind::Gate(gate) => match gate.kind() {
                GateKind::Lambda => ("λ".to_string(), "triangle"),
                GateKind::FanOut => ("Υ".to_string(), "invtriangle"),
                GateKind::App => ("⋏".to_string(), "triangle"),
                GateKind::Top => ("⊤".to_string(), "plaintext"),
                GateKind::Dil => (
                    format!("ε̄ {}", gate.label().expect("dil label")),
                    "circle",
                ),
            },
            NodeKind::In(name) => (format!("IN {name}"), "box"),
            NodeKind::Out(name) => (format!("OUT {name}"), "box"),
            NodeKind::Wire => ("wire".to_string(), "point"),
        };
        writeln!(out, "  {id} [label=\"{}\", shape={shape}];", escape(&label)).unwrap();
    }
    for (id, e) in g.edges() {
        writeln!(
            out,
            "  {} -> {} [label=\"{id}\", taillabel=\"{}\", headlabel=\"{}\"];",
            e.src.node, e.dst.node, e.src.port, e.dst.port
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
