//! Canonical labeling.
//!
//! Ports are numbered, so a traversal that visits neighbours in port order is
//! fully determined by its start node. Colour refinement narrows the start
//! candidates in each component; components that contain a leaf are anchored
//! at their smallest leaf label. The per-component codes are sorted and
//! concatenated.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use sha2::{Digest, Sha256};

use super::{Graph, NodeId, NodeKind, PortRef};

fn label(kind: &NodeKind) -> String {
    match kind {
        NodeKind::Gate(g) => g.to_string(),
        NodeKind::In(s) => format!("in:{s}"),
        NodeKind::Out(s) => format!("out:{s}"),
        NodeKind::Wire => "wire".to_string(),
    }
}

struct Indexed {
    labels: Vec<String>,
    /// Per node, per port: (peer index, peer port).
    adj: Vec<Vec<Option<(usize, u8)>>>,
    leaf: Vec<bool>,
}

fn index(g: &Graph) -> Indexed {
    let ids: Vec<NodeId> = g.node_ids().collect();
    let pos: HashMap<NodeId, usize> = ids.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let mut labels = Vec::with_capacity(ids.len());
    let mut adj = Vec::with_capacity(ids.len());
    let mut leaf = Vec::with_capacity(ids.len());
    for id in &ids {
        let kind = g.node(*id).expect("listed node");
        labels.push(label(kind));
        leaf.push(kind.is_leaf());
        adj.push(
            g.ports(*id)
                .map(|p| g.peer(p).map(|q: PortRef| (pos[&q.node], q.port)))
                .collect(),
        );
    }
    Indexed { labels, adj, leaf }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter()
        .map(|s| sorted.binary_search(s).expect("present"))
        .collect()
}

/// A node's color with its neighbours' colors and ports, port by port.
type Signature = (usize, Vec<Option<(usize, u8)>>);

fn refine(ix: &Indexed) -> Vec<usize> {
    let mut colors = rank(&ix.labels);
    let mut classes = colors.iter().max().map_or(0, |m| m + 1);
    loop {
        let sigs: Vec<Signature> = (0..colors.len())
            .map(|i| {
                let nb = ix.adj[i]
                    .iter()
                    .map(|p| p.map(|(j, q)| (colors[j], q)))
                    .collect();
                (colors[i], nb)
            })
            .collect();
        let next = rank(&sigs);
        let n = next.iter().max().map_or(0, |m| m + 1);
        colors = next;
        if n == classes {
            return colors;
        }
        classes = n;
    }
}

fn traverse(ix: &Indexed, start: usize) -> String {
    let mut order = vec![start];
    let mut seen: HashMap<usize, usize> = HashMap::from([(start, 0)]);
    let mut k = 0;
    while k < order.len() {
        let i = order[k];
        for (j, _) in ix.adj[i].iter().flatten() {
            if !seen.contains_key(j) {
                seen.insert(*j, order.len());
                order.push(*j);
            }
        }
        k += 1;
    }
    let mut out = String::new();
    for i in &order {
        out.push_str(&ix.labels[*i]);
        for p in &ix.adj[*i] {
            match p {
                Some((j, q)) => write!(out, " {}.{}", seen[j], q).unwrap(),
                None => out.push_str(" _"),
            }
        }
        out.push(';');
    }
    out
}

fn components(ix: &Indexed) -> Vec<Vec<usize>> {
    let n = ix.labels.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let c = out.len();
        let mut members = vec![s];
        comp[s] = c;
        let mut k = 0;
        while k < members.len() {
            let i = members[k];
            for (j, _) in ix.adj[i].iter().flatten() {
                if comp[*j] == usize::MAX {
                    comp[*j] = c;
                    members.push(*j);
                }
            }
            k += 1;
        }
        out.push(members);
    }
    out
}

/// Canonical byte string: equal for two graphs iff they are isomorphic as
/// decorated port graphs with matching leaf names.
pub fn canonical_form(g: &Graph) -> Vec<u8> {
    let ix = index(g);
    let colors = refine(&ix);
    let mut codes: Vec<String> = components(&ix)
        .into_iter()
        .map(|members| {
            let anchor = members
                .iter()
                .filter(|i| ix.leaf[**i])
                .min_by(|a, b| ix.labels[**a].cmp(&ix.labels[**b]));
            if let Some(a) = anchor {
                return traverse(&ix, *a);
            }
            let mut class_size: BTreeMap<usize, usize> = BTreeMap::new();
            for i in &members {
                *class_size.entry(colors[*i]).or_default() += 1;
            }
            let (&best, _) = class_size
                .iter()
                .min_by_key(|(c, size)| (**size, **c))
                .expect("non-empty component");
            members
                .iter()
                .filter(|i| colors[**i] == best)
                .map(|i| traverse(&ix, *i))
                .min()
                .expect("non-empty class")
        })
        .collect();
    codes.sort();
    let mut out = format!("loops {}\n", g.free_loops());
    for c in codes {
        out.push_str(&c);
        out.push('\n');
    }
    out.into_bytes()
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.node_count() == b.node_count()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}

/// Hex SHA-256 of the canonical form.
pub fn canonical_hash(g: &Graph) -> String {
    let digest = Sha256::digest(canonical_form(g));
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{EdgeId, Gate};

    fn chain(n: usize) -> Graph {
        // x -> fanout -> (top, fanout -> (top, ... )) ending in out
        let mut g = Graph::new();
        let x = g.add_input("x").unwrap();
        let mut src = PortRef::new(x, 1);
        for _ in 0..n {
            let f = g.add_gate(Gate::fanout());
            let t = g.add_gate(Gate::top());
            g.connect(src, PortRef::new(f, 1));
            g.connect(PortRef::new(f, 2), PortRef::new(t, 1));
            src = PortRef::new(f, 3);
        }
        let o = g.add_output("o").unwrap();
        g.connect(src, PortRef::new(o, 1));
        g
    }

    #[test]
    fn relabeling_invariance() {
        let g = chain(4);
        let nodes: Vec<NodeId> = g.node_ids().collect();
        let nmap = nodes
            .iter()
            .rev()
            .enumerate()
            .map(|(i, n)| (*n, NodeId(100 + i as u32)))
            .collect();
        let emap = g
            .edges()
            .map(|(e, _)| (e, EdgeId(500 - e.0)))
            .collect();
        let h = g.relabeled(&nmap, &emap);
        assert_eq!(canonical_form(&g), canonical_form(&h));
    }

    #[test]
    fn distinguishes_lengths_and_names() {
        assert_ne!(canonical_form(&chain(2)), canonical_form(&chain(3)));
        let mut g = chain(1);
        let h = {
            let mut h = Graph::new();
            let y = h.add_input("y").unwrap();
            let f = h.add_gate(Gate::fanout());
            let t = h.add_gate(Gate::top());
            let o = h.add_output("o").unwrap();
            h.connect(PortRef::new(y, 1), PortRef::new(f, 1));
            h.connect(PortRef::new(f, 2), PortRef::new(t, 1));
            h.connect(PortRef::new(f, 3), PortRef::new(o, 1));
            h
        };
        assert!(!is_isomorphic(&g, &h));
        g = g.compacted();
        assert!(is_isomorphic(&g, &chain(1)));
    }

    #[test]
    fn port_numbers_matter() {
        // swapping fanout legs yields a different port graph
        let mut h = Graph::new();
        let x = h.add_input("x").unwrap();
        let f = h.add_gate(Gate::fanout());
        let t = h.add_gate(Gate::top());
        let o = h.add_output("o").unwrap();
        h.connect(PortRef::new(x, 1), PortRef::new(f, 1));
        h.connect(PortRef::new(f, 3), PortRef::new(t, 1));
        h.connect(PortRef::new(f, 2), PortRef::new(o, 1));
        assert!(!is_isomorphic(&chain(1), &h));
    }
}
