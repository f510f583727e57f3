//! Syntactic trees and the term-to-graph encoding.
//!
//! The encoder walks the term once with a stack of binder scopes. Each
//! variable occurrence records the in-port that should receive it; when a
//! scope closes, its occurrences are fed from the λ's bound-variable port
//! through a FanOut tree (or a ⊤ gate when there are none). Free variables
//! are handled the same way at the end, rooted at IN leaves.

use std::fmt;

use crate::graph::{Gate, Graph, PortRef};
use crate::group::GroupElem;

use super::{free_vars, free_vars_ordered, Term};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FanoutPolicy {
    /// `Υ(o1, Υ(o2, Υ(o3, ...)))`
    #[default]
    RightComb,
    /// `Υ(Υ(Υ(o1, o2), o3), ...)`
    LeftComb,
    Balanced,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeGate {
    Lambda,
    App,
    Dil(GroupElem),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeNode {
    Leaf(String),
    Gate {
        gate: TreeGate,
        left: usize,
        right: usize,
    },
}

/// Syntactic tree of a term: binary gates over variable-decorated leaves.
/// A λ gate's left child is the leaf naming its bound variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxTree {
    nodes: Vec<TreeNode>,
    parent: Vec<Option<usize>>,
    root: usize,
}

impl SyntaxTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, i: usize) -> &TreeNode {
        &self.nodes[i]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn gate_count(&self, pred: impl Fn(&TreeGate) -> bool) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, TreeNode::Gate { gate, .. } if pred(gate)))
            .count()
    }

    /// Leaf indices, left to right.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(i) = stack.pop() {
            match &self.nodes[i] {
                TreeNode::Leaf(_) => out.push(i),
                TreeNode::Gate { left, right, .. } => {
                    stack.push(*right);
                    stack.push(*left);
                }
            }
        }
        out
    }

    /// Distinct leaf decorations in left-to-right order.
    pub fn leaf_names(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for i in self.leaves() {
            if let TreeNode::Leaf(x) = &self.nodes[i] {
                if !out.contains(&x.as_str()) {
                    out.push(x);
                }
            }
        }
        out
    }

    /// The word read along the path from node `i` up to the root.
    pub fn path_word(&self, mut i: usize) -> PathWord {
        let mut letters = Vec::new();
        while let Some(p) = self.parent[i] {
            let TreeNode::Gate { gate, left, .. } = &self.nodes[p] else {
                unreachable!("parents are gates")
            };
            let side = if *left == i { Side::L } else { Side::R };
            let gate = match gate {
                TreeGate::Lambda => LetterGate::Lambda,
                TreeGate::App => LetterGate::App,
                TreeGate::Dil(_) => LetterGate::Dil,
            };
            letters.push(Letter { gate, side });
            i = p;
        }
        PathWord(letters)
    }

    fn push(&mut self, node: TreeNode) -> usize {
        let i = self.nodes.len();
        if let TreeNode::Gate { left, right, .. } = node {
            self.parent[left] = Some(i);
            self.parent[right] = Some(i);
        }
        self.nodes.push(node);
        self.parent.push(None);
        i
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    L,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LetterGate {
    Lambda,
    App,
    Dil,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gate: LetterGate,
    pub side: Side,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.gate {
            LetterGate::Lambda => "λ",
            LetterGate::App => "⋏",
            LetterGate::Dil => "ε̄",
        };
        let s = match self.side {
            Side::L => 'L',
            Side::R => 'R',
        };
        write!(f, "{g}^{s}")
    }
}

/// Letters from a leaf up to the root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathWord(pub Vec<Letter>);

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Bound-variable leaves (left children of λ gates) in leaf order.
pub type BoundList = Vec<(String, PathWord)>;

/// Rewrites every `Eps` into the operations of the tree alphabet:
/// `(\y. A) @{e} B` becomes `B ~{e} A` when `y` is not free in `A`, and any
/// other `B @{e} A` becomes `A ~{e} (B A)`, which agrees with the first
/// rule after one β.
fn desugar_eps(t: &Term) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::Lam(x, b) => Term::lam(x, desugar_eps(b)),
        Term::App(f, a) => Term::app(desugar_eps(f), desugar_eps(a)),
        Term::Dil(e, l, r) => Term::dil(e.clone(), desugar_eps(l), desugar_eps(r)),
        Term::Eps(e, l, r) => match l.as_ref() {
            Term::Lam(y, a) if !free_vars(a).contains(y) => {
                Term::dil(e.clone(), desugar_eps(r), desugar_eps(a))
            }
            _ => {
                let a = desugar_eps(r);
                let b = desugar_eps(l);
                Term::dil(e.clone(), a.clone(), Term::app(b, a))
            }
        },
    }
}

/// Syntactic tree. `Eps` nodes are first rewritten into dilation form, which
/// duplicates the right operand of a general `Eps`.
pub fn syntactic_tree(t: &Term) -> SyntaxTree {
    fn go(t: &Term, tree: &mut SyntaxTree) -> usize {
        let (gate, left, right) = match t {
            Term::Var(x) => return tree.push(TreeNode::Leaf(x.clone())),
            Term::Lam(x, b) => {
                let l = tree.push(TreeNode::Leaf(x.clone()));
                (TreeGate::Lambda, l, go(b, tree))
            }
            Term::App(f, a) => (TreeGate::App, go(f, tree), go(a, tree)),
            Term::Dil(e, l, r) => (TreeGate::Dil(e.clone()), go(l, tree), go(r, tree)),
            Term::Eps(..) => unreachable!("desugared"),
        };
        tree.push(TreeNode::Gate { gate, left, right })
    }
    let mut tree = SyntaxTree {
        nodes: Vec::new(),
        parent: Vec::new(),
        root: 0,
    };
    tree.root = go(&desugar_eps(t), &mut tree);
    tree
}

pub fn bound_list(t: &Term) -> BoundList {
    let tree = syntactic_tree(t);
    tree.leaves()
        .into_iter()
        .filter_map(|i| {
            let word = tree.path_word(i);
            match (&tree.nodes[i], word.0.first()) {
                (
                    TreeNode::Leaf(x),
                    Some(Letter {
                        gate: LetterGate::Lambda,
                        side: Side::L,
                    }),
                ) => Some((x.clone(), word)),
                _ => None,
            }
        })
        .collect()
}

struct Encoder {
    g: Graph,
    policy: FanoutPolicy,
    /// Open binders, innermost last, with the ports awaiting their value.
    scopes: Vec<(String, Vec<PortRef>)>,
    free: Vec<(String, Vec<PortRef>)>,
}

impl Encoder {
    fn occurrence(&mut self, x: &str, dst: PortRef) {
        if let Some((_, occ)) = self.scopes.iter_mut().rev().find(|(y, _)| y == x) {
            occ.push(dst);
        } else if let Some((_, occ)) = self.free.iter_mut().find(|(y, _)| y == x) {
            occ.push(dst);
        } else {
            self.free.push((x.to_string(), vec![dst]));
        }
    }

    /// Builds `t` so that its value flows into `dst`.
    fn build(&mut self, t: &Term, dst: PortRef) {
        match t {
            Term::Var(x) => self.occurrence(x, dst),
            Term::Lam(x, body) => {
                let l = self.g.add_gate(Gate::lambda());
                self.g.connect(PortRef::new(l, 3), dst);
                self.scopes.push((x.clone(), Vec::new()));
                self.build(body, PortRef::new(l, 1));
                let (_, occ) = self.scopes.pop().expect("scope pushed above");
                self.fanout_tree(PortRef::new(l, 2), &occ);
            }
            Term::App(f, a) => {
                let c = self.g.add_gate(Gate::app());
                self.g.connect(PortRef::new(c, 3), dst);
                self.build(f, PortRef::new(c, 1));
                self.build(a, PortRef::new(c, 2));
            }
            Term::Dil(e, l, r) => {
                let d = self.g.add_gate(Gate::dil(e.clone()));
                self.g.connect(PortRef::new(d, 3), dst);
                self.build(l, PortRef::new(d, 1));
                self.build(r, PortRef::new(d, 2));
            }
            Term::Eps(e, l, r) => match l.as_ref() {
                Term::Lam(y, a) if !free_vars(a).contains(y) => {
                    let d = self.g.add_gate(Gate::dil(e.clone()));
                    self.g.connect(PortRef::new(d, 3), dst);
                    self.build(r, PortRef::new(d, 1));
                    self.build(a, PortRef::new(d, 2));
                }
                _ => {
                    // l @{e} r  =  r ~{e} (l r), with r built once and shared
                    let d = self.g.add_gate(Gate::dil(e.clone()));
                    let c = self.g.add_gate(Gate::app());
                    let f = self.g.add_gate(Gate::fanout());
                    self.g.connect(PortRef::new(d, 3), dst);
                    self.g.connect(PortRef::new(f, 2), PortRef::new(d, 1));
                    self.g.connect(PortRef::new(f, 3), PortRef::new(c, 2));
                    self.g.connect(PortRef::new(c, 3), PortRef::new(d, 2));
                    self.build(l, PortRef::new(c, 1));
                    self.build(r, PortRef::new(f, 1));
                }
            },
        }
    }

    fn fanout_tree(&mut self, src: PortRef, occ: &[PortRef]) {
        match occ {
            [] => {
                let t = self.g.add_gate(Gate::top());
                self.g.connect(src, PortRef::new(t, 1));
            }
            [one] => {
                self.g.connect(src, *one);
            }
            _ => {
                let k = occ.len();
                let split = match self.policy {
                    FanoutPolicy::RightComb => 1,
                    FanoutPolicy::LeftComb => k - 1,
                    FanoutPolicy::Balanced => k.div_ceil(2),
                };
                let f = self.g.add_gate(Gate::fanout());
                self.g.connect(src, PortRef::new(f, 1));
                self.fanout_tree(PortRef::new(f, 2), &occ[..split]);
                self.fanout_tree(PortRef::new(f, 3), &occ[split..]);
            }
        }
    }
}

/// Encodes a term as a graph with one IN leaf per distinct free variable
/// (first-occurrence order) and a single OUT leaf named `out`.
pub fn encode(t: &Term, policy: FanoutPolicy) -> Graph {
    let mut enc = Encoder {
        g: Graph::new(),
        policy,
        scopes: Vec::new(),
        free: Vec::new(),
    };
    let out = enc.g.add_output("out").expect("fresh graph");
    enc.build(t, PortRef::new(out, 1));
    let mut free = std::mem::take(&mut enc.free);
    // IN leaves follow the term's first-occurrence order, which can differ
    // from build order inside a general Eps.
    let order = free_vars_ordered(t);
    free.sort_by_key(|(x, _)| order.iter().position(|y| y == x));
    for (x, occ) in free {
        let leaf = enc.g.add_input(&x).expect("distinct free variables");
        enc.fanout_tree(PortRef::new(leaf, 1), &occ);
    }
    enc.g
}

/// Encoding for terms with ε-operations, using the default FanOut policy.
pub fn encode_lambda_scale(t: &Term) -> Graph {
    encode(t, FanoutPolicy::default())
}
