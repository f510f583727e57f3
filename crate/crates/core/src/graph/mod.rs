//! Decorated trivalent graphs with a fixed cyclic port order per node.
//!
//! Leaves are stored as explicit one-port pseudo-nodes: an IN leaf owns an
//! out-port, an OUT leaf owns an in-port. Every edge runs from an out-port
//! to an in-port, and in a valid graph every port carries exactly one edge.

mod canon;
mod dot;
mod text;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::GraphError;
use crate::group::GroupElem;

pub use canon::{canonical_form, canonical_hash, is_isomorphic};
pub use dot::to_dot;
pub use text::{deserialize, serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GateKind {
    /// Abstraction: p1 body in, p2 bound variable out, p3 result out.
    Lambda,
    /// Duplication: p1 in, p2 and p3 out.
    FanOut,
    /// Application: p1 function in, p2 argument in, p3 result out.
    App,
    /// Termination: p1 in.
    Top,
    /// Dilation: p1 left operand in, p2 right operand in, p3 result out.
    Dil,
}

impl GateKind {
    pub fn arity(self) -> u8 {
        match self {
            GateKind::Top => 1,
            _ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Lambda => "lambda",
            GateKind::FanOut => "fanout",
            GateKind::App => "app",
            GateKind::Top => "top",
            GateKind::Dil => "dil",
        }
    }

    fn port_dir(self, port: u8) -> Option<PortDir> {
        use PortDir::*;
        let dirs: &[PortDir] = match self {
            GateKind::Lambda | GateKind::FanOut => &[In, Out, Out],
            GateKind::App | GateKind::Dil => &[In, In, Out],
            GateKind::Top => &[In],
        };
        dirs.get(usize::from(port).checked_sub(1)?).copied()
    }
}

/// A gate of the alphabet. `label` is present exactly for dilation gates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gate {
    kind: GateKind,
    label: Option<GroupElem>,
}

impl Gate {
    pub fn lambda() -> Self {
        Self::plain(GateKind::Lambda)
    }

    pub fn fanout() -> Self {
        Self::plain(GateKind::FanOut)
    }

    pub fn app() -> Self {
        Self::plain(GateKind::App)
    }

    pub fn top() -> Self {
        Self::plain(GateKind::Top)
    }

    pub fn dil(label: GroupElem) -> Self {
        Self {
            kind: GateKind::Dil,
            label: Some(label),
        }
    }

    /// Panics for `GateKind::Dil`, which needs a label.
    pub fn plain(kind: GateKind) -> Self {
        assert!(kind != GateKind::Dil, "dilation gates need a label");
        Self { kind, label: None }
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn label(&self) -> Option<&GroupElem> {
        self.label.as_ref()
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(l) => write!(f, "{} {}", self.kind.name(), l),
            None => f.write_str(self.kind.name()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    Gate(Gate),
    In(String),
    Out(String),
    /// Identity pass-through used while splicing a rewrite. Never present
    /// in a graph handed back to callers.
    Wire,
}

impl NodeKind {
    pub fn arity(&self) -> u8 {
        match self {
            NodeKind::Gate(g) => g.kind.arity(),
            NodeKind::In(_) | NodeKind::Out(_) => 1,
            NodeKind::Wire => 2,
        }
    }

    pub fn port_dir(&self, port: u8) -> Option<PortDir> {
        match self {
            NodeKind::Gate(g) => g.kind.port_dir(port),
            NodeKind::In(_) => (port == 1).then_some(PortDir::Out),
            NodeKind::Out(_) => (port == 1).then_some(PortDir::In),
            NodeKind::Wire => match port {
                1 => Some(PortDir::In),
                2 => Some(PortDir::Out),
                _ => None,
            },
        }
    }

    pub fn gate(&self) -> Option<&Gate> {
        match self {
            NodeKind::Gate(g) => Some(g),
            _ => None,
        }
    }

    pub fn gate_kind(&self) -> Option<GateKind> {
        self.gate().map(|g| g.kind)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, NodeKind::In(_) | NodeKind::Out(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PortDir {
    In,
    Out,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PortRef {
    pub node: NodeId,
    pub port: u8,
}

impl PortRef {
    pub fn new(node: NodeId, port: u8) -> Self {
        Self { node, port }
    }
}

impl fmt::Display for PortRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.node, self.port)
    }
}

/// Oriented edge from an out-port to an in-port.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: PortRef,
    pub dst: PortRef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnwiredPort(PortRef),
    Orientation(EdgeId),
    DanglingEdge(EdgeId),
    TransientWire(NodeId),
    FreeLoops(u32),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnwiredPort(p) => write!(f, "unwired port {p}"),
            Violation::Orientation(e) => write!(f, "orientation mismatch on {e}"),
            Violation::DanglingEdge(e) => write!(f, "dangling edge {e}"),
            Violation::TransientWire(n) => write!(f, "transient wire node {n}"),
            Violation::FreeLoops(k) => write!(f, "{k} free loop(s)"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Graph {
    nodes: BTreeMap<NodeId, NodeKind>,
    edges: BTreeMap<EdgeId, Edge>,
    at_port: HashMap<PortRef, EdgeId>,
    inputs: Vec<NodeId>,
    outputs: Vec<NodeId>,
    next_node: u32,
    next_edge: u32,
    loops: u32,
}

/// Endpoint of a connection passed to [`Graph::build`]: a port of the
/// `i`-th declared gate, or a named leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Port(usize, u8),
    In(String),
    Out(String),
}

impl Graph {
    pub fn new() -> Self {
        Self {
            next_node: 1,
            next_edge: 1,
            ..Default::default()
        }
    }

    /// Builds and validates a graph from gates, connections, and leaf
    /// names. Connections may be listed in either orientation.
    pub fn build(
        gates: &[Gate],
        connections: &[(Endpoint, Endpoint)],
        inputs: &[&str],
        outputs: &[&str],
    ) -> Result<Graph, GraphError> {
        let mut g = Graph::new();
        let ids: Vec<NodeId> = gates
            .iter()
            .map(|gate| g.add_node(NodeKind::Gate(gate.clone())))
            .collect();
        let mut ins = HashMap::new();
        let mut outs = HashMap::new();
        for name in inputs {
            ins.insert(name.to_string(), g.add_input(name)?);
        }
        for name in outputs {
            outs.insert(name.to_string(), g.add_output(name)?);
        }
        let resolve = |e: &Endpoint| -> Result<PortRef, GraphError> {
            match e {
                Endpoint::Port(i, p) => ids
                    .get(*i)
                    .map(|n| PortRef::new(*n, *p))
                    .ok_or_else(|| GraphError::UnknownEndpoint(format!("gate #{i}"))),
                Endpoint::In(name) => ins
                    .get(name)
                    .map(|n| PortRef::new(*n, 1))
                    .ok_or_else(|| GraphError::UnknownEndpoint(format!("in leaf {name}"))),
                Endpoint::Out(name) => outs
                    .get(name)
                    .map(|n| PortRef::new(*n, 1))
                    .ok_or_else(|| GraphError::UnknownEndpoint(format!("out leaf {name}"))),
            }
        };
        for (a, b) in connections {
            let (a, b) = (resolve(a)?, resolve(b)?);
            let da = g.port_dir(a);
            let db = g.port_dir(b);
            match (da, db) {
                (Some(PortDir::Out), Some(PortDir::In)) => g.add_edge(a, b)?,
                (Some(PortDir::In), Some(PortDir::Out)) => g.add_edge(b, a)?,
                (None, _) => return Err(GraphError::UnknownEndpoint(a.to_string())),
                (_, None) => return Err(GraphError::UnknownEndpoint(b.to_string())),
                _ => return Err(GraphError::Orientation(format!("{a} -- {b}"))),
            };
        }
        g.validate().map_err(GraphError::Invalid)?;
        Ok(g)
    }

    pub fn add_node(&mut self, kind: NodeKind) -> NodeId {
        let id = NodeId(self.next_node);
        self.next_node += 1;
        self.insert_node(id, kind);
        id
    }

    pub fn add_gate(&mut self, gate: Gate) -> NodeId {
        self.add_node(NodeKind::Gate(gate))
    }

    fn insert_node(&mut self, id: NodeId, kind: NodeKind) {
        match &kind {
            NodeKind::In(_) => self.inputs.push(id),
            NodeKind::Out(_) => self.outputs.push(id),
            _ => {}
        }
        self.next_node = self.next_node.max(id.0 + 1);
        self.nodes.insert(id, kind);
    }

    /// Inserts a node under a caller-chosen id. Used by the text loader.
    pub(crate) fn insert_node_with_id(&mut self, id: NodeId, kind: NodeKind) -> Result<(), GraphError> {
        if self.nodes.contains_key(&id) {
            return Err(GraphError::PortReused(format!("node id {id} declared twice")));
        }
        self.insert_node(id, kind);
        Ok(())
    }

    pub fn add_input(&mut self, name: &str) -> Result<NodeId, GraphError> {
        if self.input(name).is_some() {
            return Err(GraphError::DuplicateLeaf(name.to_string()));
        }
        Ok(self.add_node(NodeKind::In(name.to_string())))
    }

    pub fn add_output(&mut self, name: &str) -> Result<NodeId, GraphError> {
        if self.output(name).is_some() {
            return Err(GraphError::DuplicateLeaf(name.to_string()));
        }
        Ok(self.add_node(NodeKind::Out(name.to_string())))
    }

    pub fn add_edge(&mut self, src: PortRef, dst: PortRef) -> Result<EdgeId, GraphError> {
        let id = EdgeId(self.next_edge);
        self.add_edge_with_id(id, src, dst)?;
        Ok(id)
    }

    pub(crate) fn add_edge_with_id(
        &mut self,
        id: EdgeId,
        src: PortRef,
        dst: PortRef,
    ) -> Result<(), GraphError> {
        match (self.port_dir(src), self.port_dir(dst)) {
            (Some(PortDir::Out), Some(PortDir::In)) => {}
            (None, _) => return Err(GraphError::UnknownEndpoint(src.to_string())),
            (_, None) => return Err(GraphError::UnknownEndpoint(dst.to_string())),
            _ => return Err(GraphError::Orientation(format!("{src} -> {dst}"))),
        }
        for p in [src, dst] {
            if self.at_port.contains_key(&p) {
                return Err(GraphError::PortReused(p.to_string()));
            }
        }
        if self.edges.contains_key(&id) {
            return Err(GraphError::PortReused(format!("edge id {id} declared twice")));
        }
        self.next_edge = self.next_edge.max(id.0 + 1);
        self.edges.insert(id, Edge { src, dst });
        self.at_port.insert(src, id);
        self.at_port.insert(dst, id);
        Ok(())
    }

    /// Adds an edge between ports known to be free and correctly oriented.
    pub(crate) fn connect(&mut self, src: PortRef, dst: PortRef) -> EdgeId {
        self.add_edge(src, dst)
            .unwrap_or_else(|e| panic!("internal wiring error: {e}"))
    }

    pub fn remove_edge(&mut self, id: EdgeId) -> Option<Edge> {
        let e = self.edges.remove(&id)?;
        self.at_port.remove(&e.src);
        self.at_port.remove(&e.dst);
        Some(e)
    }

    /// Removes a node and every edge touching it.
    pub fn remove_node(&mut self, id: NodeId) -> Option<NodeKind> {
        let kind = self.nodes.remove(&id)?;
        for p in 1..=kind.arity() {
            if let Some(e) = self.at_port.get(&PortRef::new(id, p)).copied() {
                self.remove_edge(e);
            }
        }
        self.inputs.retain(|n| *n != id);
        self.outputs.retain(|n| *n != id);
        Some(kind)
    }

    pub fn node(&self, id: NodeId) -> Option<&NodeKind> {
        self.nodes.get(&id)
    }

    pub fn gate(&self, id: NodeId) -> Option<&Gate> {
        self.nodes.get(&id).and_then(NodeKind::gate)
    }

    pub fn gate_kind(&self, id: NodeId) -> Option<GateKind> {
        self.gate(id).map(Gate::kind)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.get(&id)
    }

    pub fn contains_node(&self, id: NodeId) -> bool {
        self.nodes.contains_key(&id)
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        self.edges.contains_key(&id)
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &NodeKind)> + '_ {
        self.nodes.iter().map(|(k, v)| (*k, v))
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> + '_ {
        self.edges.iter().map(|(k, v)| (*k, v))
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of gate nodes (leaves excluded).
    pub fn gate_count(&self) -> usize {
        self.nodes.values().filter(|k| k.gate().is_some()).count()
    }

    pub fn count_gates(&self, kind: GateKind) -> usize {
        self.nodes
            .values()
            .filter(|k| k.gate_kind() == Some(kind))
            .count()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn input_ids(&self) -> &[NodeId] {
        &self.inputs
    }

    pub fn output_ids(&self) -> &[NodeId] {
        &self.outputs
    }

    pub fn input_names(&self) -> Vec<&str> {
        self.inputs.iter().filter_map(|n| self.leaf_name(*n)).collect()
    }

    pub fn output_names(&self) -> Vec<&str> {
        self.outputs.iter().filter_map(|n| self.leaf_name(*n)).collect()
    }

    pub fn leaf_name(&self, id: NodeId) -> Option<&str> {
        match self.nodes.get(&id)? {
            NodeKind::In(s) | NodeKind::Out(s) => Some(s),
            _ => None,
        }
    }

    pub fn input(&self, name: &str) -> Option<NodeId> {
        self.inputs
            .iter()
            .copied()
            .find(|n| self.leaf_name(*n) == Some(name))
    }

    pub fn output(&self, name: &str) -> Option<NodeId> {
        self.outputs
            .iter()
            .copied()
            .find(|n| self.leaf_name(*n) == Some(name))
    }

    pub fn port_dir(&self, p: PortRef) -> Option<PortDir> {
        self.nodes.get(&p.node)?.port_dir(p.port)
    }

    pub fn edge_at(&self, p: PortRef) -> Option<EdgeId> {
        self.at_port.get(&p).copied()
    }

    /// The port at the other end of the edge attached to `p`.
    pub fn peer(&self, p: PortRef) -> Option<PortRef> {
        let e = self.edges.get(self.at_port.get(&p)?)?;
        Some(if e.src == p { e.dst } else { e.src })
    }

    /// Ports of `id` in port order.
    pub fn ports(&self, id: NodeId) -> impl Iterator<Item = PortRef> {
        let arity = self.nodes.get(&id).map_or(0, NodeKind::arity);
        (1..=arity).map(move |p| PortRef::new(id, p))
    }

    /// Nodes adjacent to `id` ignoring orientation, in port order.
    pub fn neighbors(&self, id: NodeId) -> Vec<NodeId> {
        self.ports(id)
            .filter_map(|p| self.peer(p).map(|q| q.node))
            .collect()
    }

    /// Targets of the out-ports of `id`.
    pub fn successors(&self, id: NodeId) -> Vec<NodeId> {
        self.ports(id)
            .filter(|p| self.port_dir(*p) == Some(PortDir::Out))
            .filter_map(|p| self.peer(p).map(|q| q.node))
            .collect()
    }

    /// Sources of the in-ports of `id`.
    pub fn predecessors(&self, id: NodeId) -> Vec<NodeId> {
        self.ports(id)
            .filter(|p| self.port_dir(*p) == Some(PortDir::In))
            .filter_map(|p| self.peer(p).map(|q| q.node))
            .collect()
    }

    pub fn free_loops(&self) -> u32 {
        self.loops
    }

    pub(crate) fn clear_loops(&mut self) -> u32 {
        std::mem::take(&mut self.loops)
    }

    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        for (id, kind) in &self.nodes {
            if matches!(kind, NodeKind::Wire) {
                out.push(Violation::TransientWire(*id));
            }
            for p in self.ports(*id) {
                if !self.at_port.contains_key(&p) {
                    out.push(Violation::UnwiredPort(p));
                }
            }
        }
        for (id, e) in &self.edges {
            if !self.nodes.contains_key(&e.src.node) || !self.nodes.contains_key(&e.dst.node) {
                out.push(Violation::DanglingEdge(*id));
                continue;
            }
            if self.port_dir(e.src) != Some(PortDir::Out) || self.port_dir(e.dst) != Some(PortDir::In)
            {
                out.push(Violation::Orientation(*id));
            }
        }
        if self.loops > 0 {
            out.push(Violation::FreeLoops(self.loops));
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Replaces the nodes in `deleted` by the fragment described by
    /// `port_map`. Edges in `internal` are dropped; every other edge
    /// touching a deleted node is re-attached at the mapped port. Mapped
    /// targets are usually fresh gates or [`NodeKind::Wire`] nodes; wires are
    /// contracted at the end and closed wire cycles become free loops.
    pub(crate) fn splice(
        &mut self,
        deleted: &[NodeId],
        internal: &[EdgeId],
        port_map: &HashMap<PortRef, PortRef>,
    ) {
        for e in internal {
            self.remove_edge(*e);
        }
        let dead: BTreeSet<NodeId> = deleted.iter().copied().collect();
        let mut touching = BTreeSet::new();
        for n in &dead {
            for p in self.ports(*n) {
                if let Some(e) = self.edge_at(p) {
                    touching.insert(e);
                }
            }
        }
        let remap = |p: PortRef| -> PortRef {
            if dead.contains(&p.node) {
                *port_map
                    .get(&p)
                    .unwrap_or_else(|| panic!("splice: no mapping for boundary port {p}"))
            } else {
                p
            }
        };
        let mut rewired = Vec::new();
        for e in touching {
            let edge = self.remove_edge(e).expect("edge present");
            rewired.push((remap(edge.src), remap(edge.dst)));
        }
        for n in &dead {
            self.remove_node(*n);
        }
        for (s, d) in rewired {
            self.connect(s, d);
        }
        self.contract_wires();
    }

    pub(crate) fn add_wire(&mut self) -> NodeId {
        self.add_node(NodeKind::Wire)
    }

    fn contract_wires(&mut self) {
        let wires: Vec<NodeId> = self
            .nodes
            .iter()
            .filter(|(_, k)| matches!(k, NodeKind::Wire))
            .map(|(id, _)| *id)
            .collect();
        for w in wires {
            let input = PortRef::new(w, 1);
            let output = PortRef::new(w, 2);
            let e_in = self.edge_at(input).expect("wire input attached");
            let e_out = self.edge_at(output).expect("wire output attached");
            if e_in == e_out {
                self.remove_node(w);
                self.loops += 1;
                continue;
            }
            let src = self.edges[&e_in].src;
            let dst = self.edges[&e_out].dst;
            self.remove_node(w);
            self.connect(src, dst);
        }
    }

    /// Copies `set` (with the edges among its members) into fresh nodes and
    /// returns the id map. Edges leaving the set are not copied.
    pub(crate) fn copy_nodes(&mut self, set: &BTreeSet<NodeId>) -> BTreeMap<NodeId, NodeId> {
        let mut map = BTreeMap::new();
        for n in set {
            let kind = self.nodes[n].clone();
            assert!(!kind.is_leaf(), "leaves cannot be copied");
            map.insert(*n, self.add_node(kind));
        }
        let inner: Vec<Edge> = self
            .edges
            .values()
            .filter(|e| set.contains(&e.src.node) && set.contains(&e.dst.node))
            .copied()
            .collect();
        for e in inner {
            self.connect(
                PortRef::new(map[&e.src.node], e.src.port),
                PortRef::new(map[&e.dst.node], e.dst.port),
            );
        }
        map
    }

    /// Weakly connected components, each sorted, ordered by smallest id.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.nodes.keys() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = vec![*start];
            seen.insert(*start);
            let mut i = 0;
            while i < comp.len() {
                for m in self.neighbors(comp[i]) {
                    if seen.insert(m) {
                        comp.push(m);
                    }
                }
                i += 1;
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    /// Disjoint union. Leaf names must not collide.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        let mut map = HashMap::new();
        for (id, kind) in &other.nodes {
            let new = match kind {
                NodeKind::In(name) => g.add_input(name)?,
                NodeKind::Out(name) => g.add_output(name)?,
                k => g.add_node(k.clone()),
            };
            map.insert(*id, new);
        }
        for e in other.edges.values() {
            g.connect(
                PortRef::new(map[&e.src.node], e.src.port),
                PortRef::new(map[&e.dst.node], e.dst.port),
            );
        }
        g.loops += other.loops;
        Ok(g)
    }

    /// Graph application `f ⋏ a`: both operands must have exactly one OUT
    /// leaf and disjoint IN names. The result's OUT leaf is named `out`.
    pub fn apply_to(f: &Graph, a: &Graph) -> Result<Graph, GraphError> {
        let mut g = f.disjoint_union(&rename_single_output(a, "\u{0}arg")?)?;
        let fo = single_output(f)?;
        let ao = g.output("\u{0}arg").expect("renamed output");
        let fo = g.output(&fo).expect("f output");
        let c = g.add_gate(Gate::app());
        let fsrc = g.peer(PortRef::new(fo, 1)).expect("wired");
        let asrc = g.peer(PortRef::new(ao, 1)).expect("wired");
        g.remove_node(fo);
        g.remove_node(ao);
        g.connect(fsrc, PortRef::new(c, 1));
        g.connect(asrc, PortRef::new(c, 2));
        let out = g.add_output("out")?;
        g.connect(PortRef::new(c, 3), PortRef::new(out, 1));
        Ok(g)
    }

    /// Stacks `top` over `bottom`: the i-th OUT leaf of `top` feeds the i-th
    /// IN leaf of `bottom`. Counts must agree.
    pub fn compose(top: &Graph, bottom: &Graph) -> Result<Graph, GraphError> {
        if top.outputs.len() != bottom.inputs.len() {
            return Err(GraphError::UnknownEndpoint(format!(
                "compose: {} outputs vs {} inputs",
                top.outputs.len(),
                bottom.inputs.len()
            )));
        }
        let mut g = Graph::new();
        let mut map_top = HashMap::new();
        for (id, kind) in &top.nodes {
            if !matches!(kind, NodeKind::Out(_)) {
                map_top.insert(*id, g.add_node(kind.clone()));
            }
        }
        let mut map_bottom = HashMap::new();
        for (id, kind) in &bottom.nodes {
            if !matches!(kind, NodeKind::In(_)) {
                map_bottom.insert(*id, g.add_node(kind.clone()));
            }
        }
        // Glue through wires so chains of leaf-to-leaf edges collapse.
        let mut glue = HashMap::new();
        for (o, i) in top.outputs.iter().zip(&bottom.inputs) {
            let w = g.add_wire();
            glue.insert(*o, w);
            glue.insert(*i, w);
        }
        for e in top.edges.values() {
            let src = PortRef::new(map_top[&e.src.node], e.src.port);
            let dst = match glue.get(&e.dst.node) {
                Some(w) => PortRef::new(*w, 1),
                None => PortRef::new(map_top[&e.dst.node], e.dst.port),
            };
            g.connect(src, dst);
        }
        for e in bottom.edges.values() {
            let src = match glue.get(&e.src.node) {
                Some(w) => PortRef::new(*w, 2),
                None => PortRef::new(map_bottom[&e.src.node], e.src.port),
            };
            let dst = PortRef::new(map_bottom[&e.dst.node], e.dst.port);
            g.connect(src, dst);
        }
        g.contract_wires();
        g.clear_loops();
        Ok(g)
    }

    /// Renumbers nodes and edges densely from 1, preserving relative order.
    pub fn compacted(&self) -> Graph {
        let nmap: BTreeMap<NodeId, NodeId> = self
            .nodes
            .keys()
            .enumerate()
            .map(|(i, n)| (*n, NodeId(i as u32 + 1)))
            .collect();
        let emap: BTreeMap<EdgeId, EdgeId> = self
            .edges
            .keys()
            .enumerate()
            .map(|(i, e)| (*e, EdgeId(i as u32 + 1)))
            .collect();
        self.relabeled(&nmap, &emap)
    }

    /// Applies an id renaming. Both maps must be injective and total on the
    /// graph's ids. Leaf order is preserved.
    pub fn relabeled(
        &self,
        nodes: &BTreeMap<NodeId, NodeId>,
        edges: &BTreeMap<EdgeId, EdgeId>,
    ) -> Graph {
        let mut g = Graph::new();
        for (id, kind) in &self.nodes {
            if !kind.is_leaf() {
                g.insert_node(nodes[id], kind.clone());
            }
        }
        for id in self.inputs.iter().chain(&self.outputs) {
            g.insert_node(nodes[id], self.nodes[id].clone());
        }
        for (id, e) in &self.edges {
            g.add_edge_with_id(
                edges[id],
                PortRef::new(nodes[&e.src.node], e.src.port),
                PortRef::new(nodes[&e.dst.node], e.dst.port),
            )
            .expect("relabeling preserves validity");
        }
        g.loops = self.loops;
        g
    }
}

fn single_output(g: &Graph) -> Result<String, GraphError> {
    match g.output_names().as_slice() {
        [one] => Ok(one.to_string()),
        other => Err(GraphError::UnknownEndpoint(format!(
            "expected exactly one OUT leaf, found {}",
            other.len()
        ))),
    }
}

fn rename_single_output(g: &Graph, to: &str) -> Result<Graph, GraphError> {
    single_output(g)?;
    let mut g = g.clone();
    let id = g.outputs[0];
    g.nodes.insert(id, NodeKind::Out(to.to_string()));
    Ok(g)
}
