//! Faces of the ribbon graph given by the fixed port order of each gate.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{GateKind, Graph, NodeId, NodeKind, PortRef};

/// Clockwise cyclic order of a node's ports. λ and the binary gates have
/// opposite handedness, so an adjacent λ/⋏ pair is drawn without a crossing
/// while the two wires it reduces to cross.
pub fn rotation(kind: &NodeKind) -> &'static [u8] {
    match kind.gate_kind() {
        Some(GateKind::Lambda) => &[1, 2, 3],
        Some(GateKind::App | GateKind::FanOut | GateKind::Dil) => &[1, 3, 2],
        Some(GateKind::Top) => &[1],
        None => match kind {
            NodeKind::Wire => &[1, 2],
            _ => &[1],
        },
    }
}

fn next_in_rotation(kind: &NodeKind, port: u8) -> u8 {
    let rot = rotation(kind);
    let i = rot.iter().position(|p| *p == port).expect("port in rotation");
    rot[(i + 1) % rot.len()]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTrace {
    /// Each face as the cyclic sequence of darts leaving a node at a port.
    pub faces: Vec<Vec<PortRef>>,
    /// Sum of the genera of the connected components.
    pub genus: u32,
    /// The face holding the first leaf's dart, if there are leaves.
    pub leaf_face: Option<usize>,
    /// In every component, all leaf darts lie on a single face.
    pub leaves_on_one_face: bool,
}

impl FaceTrace {
    pub fn new(g: &Graph) -> FaceTrace {
        let mut face_of: BTreeMap<PortRef, usize> = BTreeMap::new();
        let mut faces = Vec::new();
        for (_, e) in g.edges() {
            for start in [e.src, e.dst] {
                if face_of.contains_key(&start) {
                    continue;
                }
                let idx = faces.len();
                let mut face = Vec::new();
                let mut d = start;
                loop {
                    face_of.insert(d, idx);
                    face.push(d);
                    let arrive = g.peer(d).expect("valid graph");
                    let kind = g.node(arrive.node).expect("endpoint exists");
                    d = PortRef::new(arrive.node, next_in_rotation(kind, arrive.port));
                    if d == start {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        let mut genus = 0;
        let mut leaves_on_one_face = true;
        for comp in g.components() {
            let members: BTreeSet<NodeId> = comp.iter().copied().collect();
            let v = comp.len() as i64;
            let e = g
                .edges()
                .filter(|(_, e)| members.contains(&e.src.node))
                .count() as i64;
            let comp_faces: BTreeSet<usize> = face_of
                .iter()
                .filter(|(d, _)| members.contains(&d.node))
                .map(|(_, f)| *f)
                .collect();
            let f = if e == 0 { 1 } else { comp_faces.len() as i64 };
            genus += ((2 - v + e - f) / 2) as u32;
            let leaf_faces: BTreeSet<usize> = comp
                .iter()
                .filter(|n| g.node(**n).is_some_and(|k| k.is_leaf()))
                .filter_map(|n| face_of.get(&PortRef::new(*n, 1)).copied())
                .collect();
            leaves_on_one_face &= leaf_faces.len() <= 1;
        }
        let leaf_face = g
            .input_ids()
            .iter()
            .chain(g.output_ids())
            .next()
            .and_then(|n| face_of.get(&PortRef::new(*n, 1)).copied());
        FaceTrace {
            faces,
            genus,
            leaf_face,
            leaves_on_one_face,
        }
    }

    pub fn is_planar_in_disk(&self) -> bool {
        self.genus == 0 && self.leaves_on_one_face
    }
}

/// Planarity in a disk with every leaf on the boundary, decided from the
/// fixed rotation system.
pub fn is_planar_in_disk(g: &Graph) -> (bool, FaceTrace) {
    let trace = FaceTrace::new(g);
    (trace.is_planar_in_disk(), trace)
}

/// Disk planarity with the leaves on the boundary in a fixed clockwise
/// order: IN leaves in order, then OUT leaves in order. Decided by adding a
/// hub vertex outside the disk adjacent to every leaf and asking for genus
/// zero.
pub fn is_planar_in_disk_ordered(g: &Graph) -> bool {
    // Half-edges: two per edge, plus one leaf-side and one hub-side per leaf.
    let mut rot: BTreeMap<NodeId, Vec<usize>> = BTreeMap::new();
    let mut twin = Vec::new();
    let mut at_port: BTreeMap<PortRef, usize> = BTreeMap::new();
    for (_, e) in g.edges() {
        let h = twin.len();
        twin.extend([h + 1, h]);
        at_port.insert(e.src, h);
        at_port.insert(e.dst, h + 1);
    }
    for (n, kind) in g.nodes() {
        let hs = rotation(kind)
            .iter()
            .filter_map(|p| at_port.get(&PortRef::new(n, *p)).copied())
            .collect();
        rot.insert(n, hs);
    }
    let leaves: Vec<NodeId> = g.input_ids().iter().chain(g.output_ids()).copied().collect();
    let hub = NodeId(u32::MAX);
    let mut hub_rot = Vec::new();
    for n in &leaves {
        let h = twin.len();
        twin.extend([h + 1, h]);
        rot.get_mut(n).expect("leaf node").push(h);
        hub_rot.push(h + 1);
    }
    // Seen from the hub, the boundary runs the other way.
    hub_rot.reverse();
    if !leaves.is_empty() {
        rot.insert(hub, hub_rot);
    }
    let mut node_of = vec![NodeId(0); twin.len()];
    let mut next = vec![0; twin.len()];
    for (n, hs) in &rot {
        for (i, h) in hs.iter().enumerate() {
            node_of[*h] = *n;
            next[*h] = hs[(i + 1) % hs.len()];
        }
    }
    // Components over nodes, via union-find on half-edge pairs.
    let ids: Vec<NodeId> = rot.keys().copied().collect();
    let index: BTreeMap<NodeId, usize> = ids.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for h in 0..twin.len() {
        let a = find(&mut parent, index[&node_of[h]]);
        let b = find(&mut parent, index[&node_of[twin[h]]]);
        parent[a] = b;
    }
    let mut v: BTreeMap<usize, i64> = BTreeMap::new();
    let mut e: BTreeMap<usize, i64> = BTreeMap::new();
    let mut f: BTreeMap<usize, i64> = BTreeMap::new();
    for n in &ids {
        *v.entry(find(&mut parent, index[n])).or_insert(0) += 1;
    }
    let mut seen = vec![false; twin.len()];
    for h in 0..twin.len() {
        let c = find(&mut parent, index[&node_of[h]]);
        if h % 2 == 0 {
            *e.entry(c).or_insert(0) += 1;
        }
        if seen[h] {
            continue;
        }
        *f.entry(c).or_insert(0) += 1;
        let mut d = h;
        while !seen[d] {
            seen[d] = true;
            d = next[twin[d]];
        }
    }
    v.iter().all(|(c, nv)| {
        let ne = e.get(c).copied().unwrap_or(0);
        let nf = f.get(c).copied().unwrap_or(0).max(1);
        2 - nv + ne - nf == 0
    })
}
