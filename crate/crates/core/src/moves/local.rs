use std::collections::HashMap;

use super::{node_set, Candidate, Direction, MoveInstance, MoveKind};
use crate::graph::{EdgeId, Gate, GateKind, Graph, NodeId, PortRef};
use crate::predicates::has_oriented_path;

fn p(n: NodeId, port: u8) -> PortRef {
    PortRef::new(n, port)
}

fn gates(g: &Graph, kind: GateKind) -> Vec<NodeId> {
    g.node_ids().filter(|n| g.gate_kind(*n) == Some(kind)).collect()
}

fn peer_of(g: &Graph, n: NodeId, port: u8) -> PortRef {
    g.peer(p(n, port)).expect("valid graph: every port wired")
}

fn edge_of(g: &Graph, n: NodeId, port: u8) -> EdgeId {
    g.edge_at(p(n, port)).expect("valid graph: every port wired")
}

fn is_at(g: &Graph, q: PortRef, kind: GateKind, port: u8) -> bool {
    q.port == port && g.gate_kind(q.node) == Some(kind)
}

fn cand(kind: MoveKind, dir: Direction, nodes: Vec<NodeId>, edges: Vec<EdgeId>) -> Candidate {
    Candidate {
        inst: MoveInstance::new(kind, dir, nodes, edges),
        admissible: true,
    }
}

fn splice(g: &mut Graph, deleted: &[NodeId], internal: &[EdgeId], map: &[(PortRef, PortRef)]) {
    let map: HashMap<PortRef, PortRef> = map.iter().copied().collect();
    g.splice(deleted, internal, &map);
}

pub(super) fn beta(g: &Graph) -> Vec<Candidate> {
    gates(g, GateKind::Lambda)
        .into_iter()
        .filter_map(|l| {
            let q = peer_of(g, l, 3);
            is_at(g, q, GateKind::App, 1)
                .then(|| cand(MoveKind::Beta, Direction::Forward, vec![l, q.node], vec![edge_of(g, l, 3)]))
        })
        .collect()
}

pub(super) fn beta_reverse(g: &Graph) -> Vec<Candidate> {
    let edges: Vec<EdgeId> = g.edges().map(|(e, _)| e).collect();
    let mut out = Vec::new();
    for a in &edges {
        for b in &edges {
            if a != b {
                out.push(cand(MoveKind::Beta, Direction::Reverse, vec![], vec![*a, *b]));
            }
        }
    }
    out
}

// λ.1 ← a, λ.2 → b, ⋏.2 ← d, ⋏.3 → c   becomes   a → c, d → b
pub(super) fn apply_beta(g: &mut Graph, m: &MoveInstance) {
    let [l, c] = m.nodes[..] else { unreachable!() };
    let w1 = g.add_wire();
    let w2 = g.add_wire();
    splice(
        g,
        &[l, c],
        &m.edges,
        &[(p(l, 1), p(w1, 1)), (p(c, 3), p(w1, 2)), (p(c, 2), p(w2, 1)), (p(l, 2), p(w2, 2))],
    );
}

pub(super) fn apply_beta_reverse(g: &mut Graph, m: &MoveInstance) {
    let [e1, e2] = m.edges[..] else { unreachable!() };
    sew(g, e1, e2);
}

/// Reverse β on edges `e1` = a → c and `e2` = d → b: inserts λ and ⋏ with
/// a → λ.1, λ.3 → ⋏.1, ⋏.3 → c, d → ⋏.2, λ.2 → b. Returns (λ, ⋏).
pub(crate) fn sew(g: &mut Graph, e1: EdgeId, e2: EdgeId) -> (NodeId, NodeId) {
    let a_c = g.remove_edge(e1).expect("live edge");
    let d_b = g.remove_edge(e2).expect("live edge");
    let l = g.add_gate(Gate::lambda());
    let c = g.add_gate(Gate::app());
    g.connect(a_c.src, p(l, 1));
    g.connect(p(l, 3), p(c, 1));
    g.connect(p(c, 3), a_c.dst);
    g.connect(d_b.src, p(c, 2));
    g.connect(p(l, 2), d_b.dst);
    (l, c)
}

pub(super) fn co_assoc(g: &Graph, dir: Direction) -> Vec<Candidate> {
    let leg = if dir == Direction::Forward { 2 } else { 3 };
    gates(g, GateKind::FanOut)
        .into_iter()
        .filter_map(|x| {
            let q = peer_of(g, x, leg);
            (q.node != x && is_at(g, q, GateKind::FanOut, 1))
                .then(|| cand(MoveKind::CoAssoc, dir, vec![x, q.node], vec![edge_of(g, x, leg)]))
        })
        .collect()
}

// Forward: X(Y(o1, o2), o3) becomes X'(o1, Y'(o2, o3)); reverse undoes it.
pub(super) fn apply_co_assoc(g: &mut Graph, m: &MoveInstance) {
    let [x, y] = m.nodes[..] else { unreachable!() };
    let x2 = g.add_gate(Gate::fanout());
    let y2 = g.add_gate(Gate::fanout());
    let map = if m.direction == Direction::Forward {
        g.connect(p(x2, 3), p(y2, 1));
        [(p(x, 1), p(x2, 1)), (p(y, 2), p(x2, 2)), (p(y, 3), p(y2, 2)), (p(x, 3), p(y2, 3))]
    } else {
        g.connect(p(x2, 2), p(y2, 1));
        [(p(x, 1), p(x2, 1)), (p(x, 2), p(y2, 2)), (p(y, 2), p(y2, 3)), (p(y, 3), p(x2, 3))]
    };
    splice(g, &[x, y], &m.edges, &map);
}

pub(super) fn co_comm(g: &Graph, dir: Direction) -> Vec<Candidate> {
    gates(g, GateKind::FanOut)
        .into_iter()
        .map(|f| cand(MoveKind::CoComm, dir, vec![f], vec![]))
        .collect()
}

pub(super) fn apply_co_comm(g: &mut Graph, m: &MoveInstance) {
    let f = m.nodes[0];
    let f2 = g.add_gate(Gate::fanout());
    splice(g, &[f], &[], &[(p(f, 1), p(f2, 1)), (p(f, 2), p(f2, 3)), (p(f, 3), p(f2, 2))]);
}

pub(super) fn r1(g: &Graph) -> Vec<Candidate> {
    gates(g, GateKind::FanOut)
        .into_iter()
        .filter_map(|f| {
            let a = peer_of(g, f, 2);
            let b = peer_of(g, f, 3);
            let both = a.node == b.node
                && g.gate_kind(a.node) == Some(GateKind::Dil)
                && a.port != 3
                && b.port != 3;
            both.then(|| {
                cand(
                    MoveKind::R1,
                    Direction::Forward,
                    vec![f, a.node],
                    vec![edge_of(g, f, 2), edge_of(g, f, 3)],
                )
            })
        })
        .collect()
}

pub(super) fn apply_r1(g: &mut Graph, m: &MoveInstance) {
    let [f, d] = m.nodes[..] else { unreachable!() };
    let w = g.add_wire();
    splice(g, &[f, d], &m.edges, &[(p(f, 1), p(w, 1)), (p(d, 3), p(w, 2))]);
}

pub(super) fn r2(g: &Graph) -> Vec<Candidate> {
    let mut out = Vec::new();
    for f in gates(g, GateKind::FanOut) {
        for (outer_leg, inner_leg) in [(2, 3), (3, 2)] {
            let outer = peer_of(g, f, outer_leg);
            let inner = peer_of(g, f, inner_leg);
            if !is_at(g, outer, GateKind::Dil, 1)
                || !is_at(g, inner, GateKind::Dil, 1)
                || outer.node == inner.node
                || peer_of(g, inner.node, 3) != p(outer.node, 2)
            {
                continue;
            }
            out.push(cand(
                MoveKind::R2,
                Direction::Forward,
                vec![f, inner.node, outer.node],
                vec![edge_of(g, f, 2), edge_of(g, f, 3), edge_of(g, inner.node, 3)],
            ));
        }
    }
    out
}

// x ∘ε (x ∘μ y) becomes x ∘εμ y
pub(super) fn apply_r2(g: &mut Graph, m: &MoveInstance) {
    let [f, inner, outer] = m.nodes[..] else { unreachable!() };
    let label = |n: NodeId| g.gate(n).and_then(|x| x.label()).cloned().expect("dilation label");
    let product = &label(outer) * &label(inner);
    let d = g.add_gate(Gate::dil(product));
    splice(
        g,
        &[f, inner, outer],
        &m.edges,
        &[(p(f, 1), p(d, 1)), (p(inner, 2), p(d, 2)), (p(outer, 3), p(d, 3))],
    );
}

pub(super) fn ext1(g: &Graph) -> Vec<Candidate> {
    gates(g, GateKind::Lambda)
        .into_iter()
        .filter_map(|l| {
            let q = peer_of(g, l, 2);
            if !is_at(g, q, GateKind::App, 2) || peer_of(g, q.node, 3) != p(l, 1) {
                return None;
            }
            let c = q.node;
            let into_fn = edge_of(g, c, 1);
            let out = edge_of(g, l, 3);
            // no oriented path from the result edge back to the function edge
            let admissible = into_fn != out && !has_oriented_path(g, out, into_fn, &node_set(&[l, c]));
            Some(Candidate {
                inst: MoveInstance::new(
                    MoveKind::Ext1,
                    Direction::Forward,
                    vec![l, c],
                    vec![edge_of(g, l, 2), edge_of(g, c, 3)],
                ),
                admissible,
            })
        })
        .collect()
}

pub(super) fn apply_ext1(g: &mut Graph, m: &MoveInstance) {
    let [l, c] = m.nodes[..] else { unreachable!() };
    let w = g.add_wire();
    splice(g, &[l, c], &m.edges, &[(p(c, 1), p(w, 1)), (p(l, 3), p(w, 2))]);
}

pub(super) fn ext2(g: &Graph) -> Vec<Candidate> {
    gates(g, GateKind::Dil)
        .into_iter()
        .filter(|d| g.gate(*d).and_then(|x| x.label()).is_some_and(|l| l.is_one()))
        .map(|d| cand(MoveKind::Ext2, Direction::Forward, vec![d], vec![]))
        .collect()
}

// x ∘1 y = y: the left operand is capped
pub(super) fn apply_ext2(g: &mut Graph, m: &MoveInstance) {
    let d = m.nodes[0];
    let w = g.add_wire();
    let t = g.add_gate(Gate::top());
    splice(g, &[d], &[], &[(p(d, 2), p(w, 1)), (p(d, 3), p(w, 2)), (p(d, 1), p(t, 1))]);
}

pub(super) fn prune_fanout(g: &Graph) -> Vec<Candidate> {
    let mut out = Vec::new();
    for f in gates(g, GateKind::FanOut) {
        for leg in [2, 3] {
            let q = peer_of(g, f, leg);
            if is_at(g, q, GateKind::Top, 1) {
                out.push(cand(
                    MoveKind::PruneLocalFanOut,
                    Direction::Forward,
                    vec![f, q.node],
                    vec![edge_of(g, f, leg)],
                ));
            }
        }
    }
    out
}

pub(super) fn apply_prune_fanout(g: &mut Graph, m: &MoveInstance) {
    let [f, t] = m.nodes[..] else { unreachable!() };
    let capped = g.edge(m.edges[0]).expect("revalidated").src.port;
    let other = if capped == 2 { 3 } else { 2 };
    let w = g.add_wire();
    splice(g, &[f, t], &m.edges, &[(p(f, 1), p(w, 1)), (p(f, other), p(w, 2))]);
}

pub(super) fn prune_binary(g: &Graph, kind: MoveKind) -> Vec<Candidate> {
    let gate = if kind == MoveKind::PruneLocalApp { GateKind::App } else { GateKind::Dil };
    gates(g, gate)
        .into_iter()
        .filter_map(|c| {
            let q = peer_of(g, c, 3);
            is_at(g, q, GateKind::Top, 1)
                .then(|| cand(kind, Direction::Forward, vec![c, q.node], vec![edge_of(g, c, 3)]))
        })
        .collect()
}

pub(super) fn apply_prune_binary(g: &mut Graph, m: &MoveInstance) {
    let [c, t] = m.nodes[..] else { unreachable!() };
    let t1 = g.add_gate(Gate::top());
    let t2 = g.add_gate(Gate::top());
    splice(g, &[c, t], &m.edges, &[(p(c, 1), p(t1, 1)), (p(c, 2), p(t2, 1))]);
}

pub(super) fn prune_lambda(g: &Graph) -> Vec<Candidate> {
    gates(g, GateKind::Lambda)
        .into_iter()
        .filter_map(|l| {
            let var = peer_of(g, l, 2);
            let res = peer_of(g, l, 3);
            (is_at(g, var, GateKind::Top, 1) && is_at(g, res, GateKind::Top, 1)).then(|| {
                cand(
                    MoveKind::PruneLocalLambda,
                    Direction::Forward,
                    vec![l, var.node, res.node],
                    vec![edge_of(g, l, 2), edge_of(g, l, 3)],
                )
            })
        })
        .collect()
}

pub(super) fn apply_prune_lambda(g: &mut Graph, m: &MoveInstance) {
    let [l, t2, t3] = m.nodes[..] else { unreachable!() };
    let t = g.add_gate(Gate::top());
    splice(g, &[l, t2, t3], &m.edges, &[(p(l, 1), p(t, 1))]);
}
