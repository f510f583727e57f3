//! Machine-checked derivations: the planar β moves and Reidemeister II for
//! coded braid crossings.

use std::fmt;
use std::str::FromStr;

use super::library::{crossing, crossing_inv};
use crate::error::DerivationError;
use crate::graph::{is_isomorphic, Gate, Graph, PortRef};
use crate::group::GroupElem;
use crate::moves::{apply_sequence, sew, MoveKind, Trace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlanarBeta {
    P1,
    P2,
    P3,
}

impl PlanarBeta {
    pub const ALL: [PlanarBeta; 3] = [PlanarBeta::P1, PlanarBeta::P2, PlanarBeta::P3];

    /// Number of graphic β moves the derivation takes.
    pub fn beta_count(self) -> usize {
        match self {
            PlanarBeta::P1 => 1,
            PlanarBeta::P2 => 2,
            PlanarBeta::P3 => 3,
        }
    }
}

impl fmt::Display for PlanarBeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PlanarBeta::P1 => "P1",
            PlanarBeta::P2 => "P2",
            PlanarBeta::P3 => "P3",
        };
        f.write_str(s)
    }
}

impl FromStr for PlanarBeta {
    type Err = DerivationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "P1" => Ok(PlanarBeta::P1),
            "P2" => Ok(PlanarBeta::P2),
            "P3" => Ok(PlanarBeta::P3),
            _ => Err(DerivationError(format!("unknown planar β variant `{s}`"))),
        }
    }
}

/// Parallel wires `ins[i] → outs[i]`.
fn wires(pairs: &[(&str, &str)]) -> Graph {
    let mut g = Graph::new();
    let ins: Vec<_> = pairs.iter().map(|(i, _)| g.add_input(i).expect("distinct")).collect();
    let outs: Vec<_> = pairs.iter().map(|(_, o)| g.add_output(o).expect("distinct")).collect();
    for (i, o) in ins.into_iter().zip(outs) {
        g.connect(PortRef::new(i, 1), PortRef::new(o, 1));
    }
    g
}

fn edge_from(g: &Graph, leaf: &str) -> crate::graph::EdgeId {
    let n = g.input(leaf).expect("named leaf");
    g.edge_at(PortRef::new(n, 1)).expect("wired")
}

/// Left- and right-hand sides of a planar β move.
pub fn planar_beta_sides(v: PlanarBeta) -> (Graph, Graph) {
    match v {
        PlanarBeta::P1 => {
            // λ whose bound variable loops straight into the argument of
            // the ⋏ it feeds.
            let mut g = Graph::new();
            let a = g.add_input("1").expect("fresh");
            let c = g.add_output("2").expect("fresh");
            let l = g.add_gate(Gate::lambda());
            let ap = g.add_gate(Gate::app());
            g.connect(PortRef::new(a, 1), PortRef::new(l, 1));
            g.connect(PortRef::new(l, 2), PortRef::new(ap, 2));
            g.connect(PortRef::new(l, 3), PortRef::new(ap, 1));
            g.connect(PortRef::new(ap, 3), PortRef::new(c, 1));
            (g, wires(&[("1", "2")]))
        }
        PlanarBeta::P2 => {
            let rhs = wires(&[("1", "2"), ("3", "4")]);
            let mut g = rhs.clone();
            let (e1, e3) = (edge_from(&g, "1"), edge_from(&g, "3"));
            let (l, c) = sew(&mut g, e1, e3);
            let e1 = g.edge_at(PortRef::new(c, 3)).expect("wired");
            let e2 = g.edge_at(PortRef::new(l, 2)).expect("wired");
            sew(&mut g, e1, e2);
            (g, rhs)
        }
        PlanarBeta::P3 => {
            let rhs = wires(&[("1", "4"), ("6", "3"), ("5", "2")]);
            let mut g = rhs.clone();
            let (e1, e6, e5) = (edge_from(&g, "1"), edge_from(&g, "6"), edge_from(&g, "5"));
            let (l1, c1) = sew(&mut g, e1, e6);
            let e = g.edge_at(PortRef::new(l1, 2)).expect("wired");
            let (l2, _) = sew(&mut g, e, e5);
            let e1 = g.edge_at(PortRef::new(c1, 3)).expect("wired");
            let e2 = g.edge_at(PortRef::new(l2, 2)).expect("wired");
            sew(&mut g, e1, e2);
            (g, rhs)
        }
    }
}

/// Runs the planar β derivation: graphic β moves only, then checks the
/// result against the right-hand side.
pub fn verify_planar_beta(v: PlanarBeta) -> Result<Trace, DerivationError> {
    let (lhs, rhs) = planar_beta_sides(v);
    let (h, trace) = apply_sequence(&lhs, &[MoveKind::Beta], 16);
    let betas = trace.count(MoveKind::Beta);
    if betas != v.beta_count() {
        return Err(DerivationError(format!(
            "{v}: expected {} β moves, took {betas}",
            v.beta_count()
        )));
    }
    if !is_isomorphic(&h, &rhs) {
        return Err(DerivationError(format!("{v}: result differs from the right-hand side")));
    }
    Ok(trace)
}

/// Moves allowed in the Reidemeister II derivation.
pub fn reidemeister_kinds() -> Vec<MoveKind> {
    let mut kinds = vec![
        MoveKind::Beta,
        MoveKind::R1,
        MoveKind::R2,
        MoveKind::Ext2,
        MoveKind::CoAssoc,
    ];
    kinds.extend(MoveKind::PRUNE_LOCAL);
    kinds
}

/// Stacks `crossing(ε)` over `crossing_inv(ε)` and reduces the result to two
/// parallel wires `x → p`, `y → q`.
pub fn verify_reidemeister_ii(eps: &GroupElem) -> Result<Trace, DerivationError> {
    let stacked = Graph::compose(&crossing(eps), &crossing_inv(eps))
        .map_err(|e| DerivationError(e.to_string()))?;
    let (h, trace) = apply_sequence(&stacked, &reidemeister_kinds(), 64);
    if trace.budget_exhausted {
        return Err(DerivationError(format!("ε = {eps}: budget exhausted")));
    }
    if !is_isomorphic(&h, &wires(&[("x", "p"), ("y", "q")])) {
        return Err(DerivationError(format!(
            "ε = {eps}: result is not two parallel wires"
        )));
    }
    Ok(trace)
}
