//! Reduction strategies, structural normal forms, the graph library and
//! derivations of the crossing and planarity results.

mod demo;
mod derive;
pub mod library;
mod planarize;

use std::collections::BTreeSet;

use crate::graph::{GateKind, Graph, NodeId, PortRef};
use crate::moves::{apply_sequence, MoveKind, Trace};

pub use demo::{run_demo, DemoOutcome, Manifest, DemoSpec, DEFAULT_MANIFEST};
pub use derive::{planar_beta_sides, reidemeister_kinds, verify_planar_beta, verify_reidemeister_ii, PlanarBeta};
pub use planarize::{planarize, planarize_with_seed, Planarized};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    /// Kinds tried in priority order; the first with a match fires.
    pub kinds: Vec<MoveKind>,
    pub budget: usize,
    /// Run [`normalize_coassoc`] on the final graph.
    pub normalize_after: bool,
}

impl Default for Strategy {
    fn default() -> Self {
        let mut kinds = vec![MoveKind::Beta];
        kinds.extend(MoveKind::PRUNE_LOCAL);
        kinds.extend([MoveKind::PruneGlobal, MoveKind::FanOutGlobal, MoveKind::LoopElim]);
        Strategy {
            kinds,
            budget: 1000,
            normalize_after: false,
        }
    }
}

impl Strategy {
    pub fn new(kinds: &[MoveKind], budget: usize) -> Self {
        Strategy {
            kinds: kinds.to_vec(),
            budget,
            normalize_after: false,
        }
    }
}

pub fn reduce(g: &Graph, s: &Strategy) -> (Graph, Trace) {
    let (h, trace) = apply_sequence(g, &s.kinds, s.budget);
    if s.normalize_after {
        (normalize_coassoc(&h), trace)
    } else {
        (h, trace)
    }
}

fn is_fanout(g: &Graph, n: NodeId) -> bool {
    g.gate_kind(n) == Some(GateKind::FanOut)
}

/// Rewrites every maximal FanOut tree as a right comb over the same legs in
/// the same left-to-right order. Trees are chains of FanOuts linked leg to
/// input; FanOut cycles without an entry point are left alone.
pub fn normalize_coassoc(g: &Graph) -> Graph {
    let mut g = g.clone();
    let roots: Vec<NodeId> = g
        .node_ids()
        .filter(|n| is_fanout(&g, *n))
        .filter(|n| {
            let src = g.peer(PortRef::new(*n, 1)).expect("valid graph");
            !is_fanout(&g, src.node)
        })
        .collect();
    for root in roots {
        let src = g.peer(PortRef::new(root, 1)).expect("valid graph");
        let mut members = BTreeSet::new();
        let mut legs = Vec::new();
        in_order(&g, root, &mut members, &mut legs);
        if members.len() < 2 {
            continue;
        }
        for m in &members {
            g.remove_node(*m);
        }
        let mut cur = src;
        for leg in &legs[..legs.len() - 1] {
            let f = g.add_gate(crate::graph::Gate::fanout());
            g.connect(cur, PortRef::new(f, 1));
            g.connect(PortRef::new(f, 2), *leg);
            cur = PortRef::new(f, 3);
        }
        g.connect(cur, *legs.last().expect("at least two legs"));
    }
    g
}

/// Collects the tree below `n` and its legs, leg 2 subtree first.
fn in_order(g: &Graph, n: NodeId, members: &mut BTreeSet<NodeId>, legs: &mut Vec<PortRef>) {
    members.insert(n);
    for leg in [2, 3] {
        let q = g.peer(PortRef::new(n, leg)).expect("valid graph");
        if q.port == 1 && is_fanout(g, q.node) && !members.contains(&q.node) {
            in_order(g, q.node, members, legs);
        } else {
            legs.push(q);
        }
    }
}

/// CO-ASSOC normalization, exhaustive pruning and global FAN-OUT, then
/// normalization again. Normalizing first matters: whether a shared
/// subgraph hangs off a single FanOut edge depends on the tree shape.
pub fn structural_normal_form(g: &Graph) -> Graph {
    let mut kinds = MoveKind::PRUNE_LOCAL.to_vec();
    kinds.extend([MoveKind::PruneGlobal, MoveKind::FanOutGlobal]);
    let (h, _) = apply_sequence(&normalize_coassoc(g), &kinds, 100_000);
    normalize_coassoc(&h)
}

/// Equality up to pruning, global FAN-OUT and CO-ASSOC.
pub fn equivalent_mod_structure(a: &Graph, b: &Graph) -> bool {
    crate::graph::is_isomorphic(&structural_normal_form(a), &structural_normal_form(b))
}
