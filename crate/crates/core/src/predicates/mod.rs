//! Global conditions on graphs: λ-graph membership, planarity in a disk and
//! oriented reachability.

mod planar;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::graph::{EdgeId, GateKind, Graph, NodeId, PortRef};

pub use planar::{is_planar_in_disk, is_planar_in_disk_ordered, rotation, FaceTrace};

/// Why a graph is not a λ-graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaWitness {
    DilGate(NodeId),
    /// `node` is reachable from the bound-variable port of `lambda` but
    /// reaches neither a ⊤ gate nor `lambda` itself.
    Stuck { lambda: NodeId, node: NodeId },
}

impl fmt::Display for LambdaWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaWitness::DilGate(n) => write!(f, "dilation gate {n}"),
            LambdaWitness::Stuck { lambda, node } => {
                write!(f, "{node} reachable from {lambda}.2 reaches no ⊤ and not {lambda}")
            }
        }
    }
}

/// Checks λ-graph membership. `Ok(())` when it holds, otherwise a witness.
pub fn is_lambda_graph(g: &Graph) -> Result<(), LambdaWitness> {
    if let Some(d) = g.node_ids().find(|n| g.gate_kind(*n) == Some(GateKind::Dil)) {
        return Err(LambdaWitness::DilGate(d));
    }
    let tops: Vec<NodeId> = g
        .node_ids()
        .filter(|n| g.gate_kind(*n) == Some(GateKind::Top))
        .collect();
    for l in g.node_ids().filter(|n| g.gate_kind(*n) == Some(GateKind::Lambda)) {
        let start = g.peer(PortRef::new(l, 2)).expect("valid graph").node;
        let mut reached = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        while let Some(n) = queue.pop_front() {
            if !reached.insert(n) || n == l {
                continue;
            }
            queue.extend(g.successors(n));
        }
        let mut good: BTreeSet<NodeId> = tops.iter().copied().chain([l]).collect();
        let mut queue: VecDeque<NodeId> = good.iter().copied().collect();
        while let Some(n) = queue.pop_front() {
            for m in g.predecessors(n) {
                if good.insert(m) {
                    queue.push_back(m);
                }
            }
        }
        if let Some(node) = reached.iter().find(|n| !good.contains(n)) {
            return Err(LambdaWitness::Stuck { lambda: l, node: *node });
        }
    }
    Ok(())
}

/// Whether an oriented path leads from edge `from` to edge `to` without
/// passing through any node in `excluded`. A path of length zero counts, so
/// `from == to` is always true.
pub fn has_oriented_path(g: &Graph, from: EdgeId, to: EdgeId, excluded: &BTreeSet<NodeId>) -> bool {
    if from == to {
        return true;
    }
    let (Some(start), Some(goal)) = (g.edge(from), g.edge(to)) else {
        return false;
    };
    let goal_src = goal.src.node;
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([start.dst.node]);
    while let Some(n) = queue.pop_front() {
        if excluded.contains(&n) || !seen.insert(n) {
            continue;
        }
        if n == goal_src {
            return true;
        }
        queue.extend(g.successors(n));
    }
    false
}
