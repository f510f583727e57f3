use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{Candidate, Direction, MoveInstance, MoveKind};
use crate::error::GraphError;
use crate::graph::{canonical_form, EdgeId, Gate, GateKind, Graph, NodeId, PortRef};

/// Nodes reachable from `start` without orientation and without crossing
/// edge `cut`.
pub fn cut_component(g: &Graph, cut: EdgeId, start: NodeId) -> BTreeSet<NodeId> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(n) = queue.pop_front() {
        for port in g.ports(n) {
            if g.edge_at(port) == Some(cut) {
                continue;
            }
            if let Some(q) = g.peer(port) {
                if seen.insert(q.node) {
                    queue.push_back(q.node);
                }
            }
        }
    }
    seen
}

/// The subgraph hanging off edge `e`: everything on the source side that
/// touches the rest of the graph only through `e`. None if that side
/// contains a leaf or reaches back to the target.
fn pendant(g: &Graph, e: EdgeId) -> Option<BTreeSet<NodeId>> {
    let edge = g.edge(e)?;
    let a = cut_component(g, e, edge.src.node);
    let clean = !a.contains(&edge.dst.node) && a.iter().all(|n| !g.node(*n).is_some_and(|k| k.is_leaf()));
    clean.then_some(a)
}

/// Copies the node set `a` into a standalone graph whose single OUT leaf
/// receives `root`.
fn extract(g: &Graph, a: &BTreeSet<NodeId>, root: PortRef) -> Graph {
    let mut h = Graph::new();
    let mut map = HashMap::new();
    for n in a {
        map.insert(*n, h.add_node(g.node(*n).expect("member").clone()));
    }
    for (_, e) in g.edges() {
        if a.contains(&e.src.node) && a.contains(&e.dst.node) {
            h.connect(
                PortRef::new(map[&e.src.node], e.src.port),
                PortRef::new(map[&e.dst.node], e.dst.port),
            );
        }
    }
    let out = h.add_output("root").expect("fresh graph");
    h.connect(PortRef::new(map[&root.node], root.port), PortRef::new(out, 1));
    h
}

fn with_subgraph(kind: MoveKind, head: NodeId, a: &BTreeSet<NodeId>, e: EdgeId) -> Candidate {
    let mut nodes = vec![head];
    nodes.extend(a.iter().copied());
    Candidate {
        inst: MoveInstance::new(kind, Direction::Forward, nodes, vec![e]),
        admissible: true,
    }
}

fn fed_gates(g: &Graph, kind: GateKind) -> Vec<(NodeId, EdgeId)> {
    g.node_ids()
        .filter(|n| g.gate_kind(*n) == Some(kind))
        .map(|n| (n, g.edge_at(PortRef::new(n, 1)).expect("valid graph")))
        .collect()
}

pub(super) fn fanout(g: &Graph) -> Vec<Candidate> {
    fed_gates(g, GateKind::FanOut)
        .into_iter()
        .filter_map(|(f, e)| pendant(g, e).map(|a| with_subgraph(MoveKind::FanOutGlobal, f, &a, e)))
        .collect()
}

pub(super) fn apply_fanout(g: &mut Graph, m: &MoveInstance) {
    let f = m.nodes[0];
    let a: BTreeSet<NodeId> = m.nodes[1..].iter().copied().collect();
    let src = g.edge(m.edges[0]).expect("revalidated").src;
    let t2 = g.peer(PortRef::new(f, 2)).expect("wired");
    let t3 = g.peer(PortRef::new(f, 3)).expect("wired");
    let copy = g.copy_nodes(&a);
    g.remove_node(f);
    g.connect(src, t2);
    g.connect(PortRef::new(copy[&src.node], src.port), t3);
}

pub(super) fn fanout_reverse(g: &Graph) -> Vec<Candidate> {
    let pendants: Vec<(EdgeId, BTreeSet<NodeId>, Vec<u8>)> = g
        .edges()
        .filter_map(|(e, edge)| {
            let a = pendant(g, e)?;
            let form = canonical_form(&extract(g, &a, edge.src));
            Some((e, a, form))
        })
        .collect();
    let mut out = Vec::new();
    for (i, (e1, a1, f1)) in pendants.iter().enumerate() {
        for (e2, a2, f2) in &pendants[i + 1..] {
            if f1 == f2 && a1.is_disjoint(a2) {
                out.push(Candidate {
                    inst: MoveInstance::new(
                        MoveKind::FanOutGlobal,
                        Direction::Reverse,
                        a1.union(a2).copied().collect(),
                        vec![*e1, *e2],
                    ),
                    admissible: true,
                });
            }
        }
    }
    out
}

pub(super) fn apply_fanout_reverse(g: &mut Graph, m: &MoveInstance) {
    let [e1, e2] = m.edges[..] else { unreachable!() };
    let src2 = g.edge(e2).expect("revalidated").src.node;
    let dropped = cut_component(g, e2, src2);
    let kept = g.remove_edge(e1).expect("revalidated");
    let other = g.remove_edge(e2).expect("revalidated");
    for n in dropped {
        g.remove_node(n);
    }
    let f = g.add_gate(Gate::fanout());
    g.connect(kept.src, PortRef::new(f, 1));
    g.connect(PortRef::new(f, 2), kept.dst);
    g.connect(PortRef::new(f, 3), other.dst);
}

pub(super) fn prune(g: &Graph) -> Vec<Candidate> {
    fed_gates(g, GateKind::Top)
        .into_iter()
        .filter_map(|(t, e)| pendant(g, e).map(|a| with_subgraph(MoveKind::PruneGlobal, t, &a, e)))
        .collect()
}

pub(super) fn apply_prune(g: &mut Graph, m: &MoveInstance) {
    for n in &m.nodes {
        g.remove_node(*n);
    }
}

/// Reverse global pruning: adds `a`, with its single OUT leaf capped by a
/// ⊤ gate, as a disjoint component. `a` must have no IN leaves.
pub fn prune_global_reverse(g: &Graph, a: &Graph) -> Result<Graph, GraphError> {
    if !a.input_names().is_empty() {
        return Err(GraphError::UnknownEndpoint(
            "attached graph must not have IN leaves".to_string(),
        ));
    }
    let [out] = a.output_ids() else {
        return Err(GraphError::UnknownEndpoint(
            "attached graph needs exactly one OUT leaf".to_string(),
        ));
    };
    let mut capped = a.clone();
    let src = capped.peer(PortRef::new(*out, 1)).expect("wired");
    capped.remove_node(*out);
    let t = capped.add_gate(Gate::top());
    capped.connect(src, PortRef::new(t, 1));
    g.disjoint_union(&capped)
}
