//! Local and global moves: matching, application and move sequences.
//!
//! A [`MoveInstance`] lists the matched nodes and edges in a fixed role order
//! per kind (documented on [`MoveKind`]). Instances are plain data; `apply`
//! re-derives the match against the graph it is given and refuses stale or
//! no-longer-admissible instances. Free loops created by a move are erased
//! before the result is returned.

mod global;
mod local;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{GraphError, MoveError};
use crate::graph::{canonical_hash, EdgeId, Graph, NodeId};

pub use global::{cut_component, prune_global_reverse};
pub(crate) use local::sew;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    /// `[λ, ⋏]` with λ.3 → ⋏.1. Reverse: edges `[a→c, d→b]` to sew.
    Beta,
    /// `[X, Y]` with X.2 → Y.1 (forward) or X.3 → Y.1 (reverse).
    CoAssoc,
    /// `[Υ]`, legs swapped.
    CoComm,
    /// `[Υ, ε̄]`, both legs into the dilation.
    R1,
    /// `[Υ, ε̄ inner, ε̄ outer]`: legs into both left inputs, inner output
    /// into the outer right input.
    R2,
    /// `[λ, ⋏]` with λ.2 → ⋏.2 and ⋏.3 → λ.1.
    Ext1,
    /// `[ε̄]` labelled by the neutral element.
    Ext2,
    /// `[Υ, ⊤]`, one leg capped.
    PruneLocalFanOut,
    /// `[⋏, ⊤]`, output capped.
    PruneLocalApp,
    /// `[ε̄, ⊤]`, output capped.
    PruneLocalDil,
    /// `[λ, ⊤ on 2, ⊤ on 3]`, both outputs capped.
    PruneLocalLambda,
    /// Forward: `[Υ, A...]`, edge `[into Υ.1]`. Reverse: nodes of both
    /// copies, edges `[root of kept copy, root of dropped copy]`.
    FanOutGlobal,
    /// `[⊤, A...]`, edge `[into ⊤.1]`.
    PruneGlobal,
    /// No nodes; present while the graph carries free loops.
    LoopElim,
}

impl MoveKind {
    pub const ALL: [MoveKind; 14] = [
        MoveKind::Beta,
        MoveKind::CoAssoc,
        MoveKind::CoComm,
        MoveKind::R1,
        MoveKind::R2,
        MoveKind::Ext1,
        MoveKind::Ext2,
        MoveKind::PruneLocalFanOut,
        MoveKind::PruneLocalApp,
        MoveKind::PruneLocalDil,
        MoveKind::PruneLocalLambda,
        MoveKind::FanOutGlobal,
        MoveKind::PruneGlobal,
        MoveKind::LoopElim,
    ];

    pub const PRUNE_LOCAL: [MoveKind; 4] = [
        MoveKind::PruneLocalFanOut,
        MoveKind::PruneLocalApp,
        MoveKind::PruneLocalDil,
        MoveKind::PruneLocalLambda,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::Beta => "beta",
            MoveKind::CoAssoc => "co-assoc",
            MoveKind::CoComm => "co-comm",
            MoveKind::R1 => "r1",
            MoveKind::R2 => "r2",
            MoveKind::Ext1 => "ext1",
            MoveKind::Ext2 => "ext2",
            MoveKind::PruneLocalFanOut => "prune-local-fanout",
            MoveKind::PruneLocalApp => "prune-local-app",
            MoveKind::PruneLocalDil => "prune-local-dil",
            MoveKind::PruneLocalLambda => "prune-local-lambda",
            MoveKind::FanOutGlobal => "fanout-global",
            MoveKind::PruneGlobal => "prune-global",
            MoveKind::LoopElim => "loop-elim",
        }
    }

    pub fn is_local(self) -> bool {
        !matches!(
            self,
            MoveKind::Ext1 | MoveKind::FanOutGlobal | MoveKind::PruneGlobal
        )
    }

    pub fn is_local_prune(self) -> bool {
        MoveKind::PRUNE_LOCAL.contains(&self)
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MoveKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MoveKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown move kind `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Forward,
    Reverse,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Reverse => "reverse",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MoveInstance {
    pub kind: MoveKind,
    pub direction: Direction,
    pub nodes: Vec<NodeId>,
    pub edges: Vec<EdgeId>,
}

impl MoveInstance {
    pub(crate) fn new(kind: MoveKind, direction: Direction, nodes: Vec<NodeId>, edges: Vec<EdgeId>) -> Self {
        Self {
            kind,
            direction,
            nodes,
            edges,
        }
    }

    /// Reverse β sewing the two given edges.
    pub fn reverse_beta(a_to_c: EdgeId, d_to_b: EdgeId) -> Self {
        Self::new(MoveKind::Beta, Direction::Reverse, vec![], vec![a_to_c, d_to_b])
    }

    fn sort_key(&self) -> (Option<NodeId>, Vec<NodeId>, Vec<EdgeId>) {
        (self.nodes.iter().min().copied(), self.nodes.clone(), self.edges.clone())
    }
}

impl fmt::Display for MoveInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} nodes={}", self.kind, self.direction, join(&self.nodes))?;
        if !self.edges.is_empty() {
            write!(f, " edges={}", join(&self.edges))?;
        }
        Ok(())
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    if items.is_empty() {
        return "-".to_string();
    }
    items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

/// Switches for match enumeration that is off by default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MatchOptions {
    /// Enumerate every ordered pair of distinct edges as a reverse β.
    pub reverse_beta: bool,
}

/// A structural match together with the verdict of its global side
/// condition (always true for kinds without one).
pub(crate) struct Candidate {
    pub inst: MoveInstance,
    pub admissible: bool,
}

fn candidates(g: &Graph, kind: MoveKind, dir: Direction, opts: &MatchOptions) -> Vec<Candidate> {
    use Direction::*;
    let mut out = match (kind, dir) {
        (MoveKind::Beta, Forward) => local::beta(g),
        (MoveKind::Beta, Reverse) if opts.reverse_beta => local::beta_reverse(g),
        (MoveKind::CoAssoc, _) => local::co_assoc(g, dir),
        (MoveKind::CoComm, _) => local::co_comm(g, dir),
        (MoveKind::R1, Forward) => local::r1(g),
        (MoveKind::R2, Forward) => local::r2(g),
        (MoveKind::Ext1, Forward) => local::ext1(g),
        (MoveKind::Ext2, Forward) => local::ext2(g),
        (MoveKind::PruneLocalFanOut, Forward) => local::prune_fanout(g),
        (MoveKind::PruneLocalApp, Forward) => local::prune_binary(g, MoveKind::PruneLocalApp),
        (MoveKind::PruneLocalDil, Forward) => local::prune_binary(g, MoveKind::PruneLocalDil),
        (MoveKind::PruneLocalLambda, Forward) => local::prune_lambda(g),
        (MoveKind::FanOutGlobal, Forward) => global::fanout(g),
        (MoveKind::FanOutGlobal, Reverse) => global::fanout_reverse(g),
        (MoveKind::PruneGlobal, Forward) => global::prune(g),
        (MoveKind::LoopElim, Forward) if g.free_loops() > 0 => vec![Candidate {
            inst: MoveInstance::new(MoveKind::LoopElim, Forward, vec![], vec![]),
            admissible: true,
        }],
        _ => Vec::new(),
    };
    out.sort_by_key(|c| c.inst.sort_key());
    out
}

/// Every admissible occurrence of `kind` in `dir`, ordered by smallest
/// matched node id. Reverse β is not enumerated; see [`find_matches_with`].
///
/// Reverse directions are enumerated for β (on request), CO-ASSOC,
/// CO-COMM and global FAN-OUT. The other reverse moves need parameters a
/// match cannot supply (a label, a graph to attach) and are built directly.
pub fn find_matches(g: &Graph, kind: MoveKind, dir: Direction) -> Vec<MoveInstance> {
    find_matches_with(g, kind, dir, &MatchOptions::default())
}

pub fn find_matches_with(
    g: &Graph,
    kind: MoveKind,
    dir: Direction,
    opts: &MatchOptions,
) -> Vec<MoveInstance> {
    candidates(g, kind, dir, opts)
        .into_iter()
        .filter(|c| c.admissible)
        .map(|c| c.inst)
        .collect()
}

/// Applies `m` to a copy of `g`.
pub fn apply(g: &Graph, m: &MoveInstance) -> Result<Graph, MoveError> {
    let mut h = g.clone();
    apply_in_place(&mut h, m)?;
    Ok(h)
}

/// Applies `m` in place and returns the number of free loops erased.
pub fn apply_in_place(g: &mut Graph, m: &MoveInstance) -> Result<u32, MoveError> {
    revalidate(g, m)?;
    match m.kind {
        MoveKind::Beta if m.direction == Direction::Reverse => local::apply_beta_reverse(g, m),
        MoveKind::Beta => local::apply_beta(g, m),
        MoveKind::CoAssoc => local::apply_co_assoc(g, m),
        MoveKind::CoComm => local::apply_co_comm(g, m),
        MoveKind::R1 => local::apply_r1(g, m),
        MoveKind::R2 => local::apply_r2(g, m),
        MoveKind::Ext1 => local::apply_ext1(g, m),
        MoveKind::Ext2 => local::apply_ext2(g, m),
        MoveKind::PruneLocalFanOut => local::apply_prune_fanout(g, m),
        MoveKind::PruneLocalApp | MoveKind::PruneLocalDil => local::apply_prune_binary(g, m),
        MoveKind::PruneLocalLambda => local::apply_prune_lambda(g, m),
        MoveKind::FanOutGlobal if m.direction == Direction::Reverse => {
            global::apply_fanout_reverse(g, m)
        }
        MoveKind::FanOutGlobal => global::apply_fanout(g, m),
        MoveKind::PruneGlobal => global::apply_prune(g, m),
        MoveKind::LoopElim => {}
    }
    let erased = g.clear_loops();
    g.validate()
        .map_err(|v| MoveError::Graph(GraphError::Invalid(v)))?;
    Ok(erased)
}

fn revalidate(g: &Graph, m: &MoveInstance) -> Result<(), MoveError> {
    if m.kind == MoveKind::Beta && m.direction == Direction::Reverse {
        return match m.edges[..] {
            [a, b] if a != b && g.contains_edge(a) && g.contains_edge(b) => Ok(()),
            _ => Err(MoveError::Stale(m.to_string())),
        };
    }
    let opts = MatchOptions::default();
    match candidates(g, m.kind, m.direction, &opts)
        .into_iter()
        .find(|c| c.inst == *m)
    {
        Some(c) if c.admissible => Ok(()),
        Some(_) => Err(MoveError::SideCondition(m.to_string())),
        None => Err(MoveError::Stale(m.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub index: usize,
    pub kind: MoveKind,
    pub direction: Direction,
    pub nodes: Vec<NodeId>,
    /// Canonical hash of the graph after the step.
    pub hash: String,
    pub loops_erased: u32,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "step {} {} {} nodes={} hash={}",
            self.index,
            self.kind,
            self.direction,
            join(&self.nodes),
            &self.hash[..self.hash.len().min(16)]
        )
    }
}

/// Record of applied moves.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
    /// True when the budget ran out while matches were still available.
    pub budget_exhausted: bool,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn count(&self, kind: MoveKind) -> usize {
        self.steps.iter().filter(|s| s.kind == kind).count()
    }

    pub fn count_where(&self, pred: impl Fn(MoveKind) -> bool) -> usize {
        self.steps.iter().filter(|s| pred(s.kind)).count()
    }

    pub(crate) fn record(&mut self, g: &Graph, m: &MoveInstance, loops_erased: u32) {
        self.steps.push(TraceStep {
            index: self.steps.len() + 1,
            kind: m.kind,
            direction: m.direction,
            nodes: m.nodes.clone(),
            hash: canonical_hash(g),
            loops_erased,
        });
    }

    pub fn extend(&mut self, other: Trace) {
        for mut s in other.steps {
            s.index = self.steps.len() + 1;
            self.steps.push(s);
        }
        self.budget_exhausted |= other.budget_exhausted;
    }

    /// One line per step; a final comment line flags budget exhaustion.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        if self.budget_exhausted {
            out.push_str("# budget exhausted\n");
        }
        out
    }
}

/// The first available match, trying `kinds` in order.
pub fn first_match(g: &Graph, kinds: &[MoveKind]) -> Option<MoveInstance> {
    kinds
        .iter()
        .find_map(|k| find_matches(g, *k, Direction::Forward).into_iter().next())
}

/// Repeatedly applies the first forward match of the earliest listed kind
/// that has one, for at most `budget` steps.
pub fn apply_sequence(g: &Graph, kinds: &[MoveKind], budget: usize) -> (Graph, Trace) {
    let mut g = g.clone();
    let mut trace = Trace::default();
    while let Some(m) = first_match(&g, kinds) {
        if trace.len() == budget {
            trace.budget_exhausted = true;
            break;
        }
        let erased = apply_in_place(&mut g, &m).expect("freshly found match applies");
        trace.record(&g, &m, erased);
    }
    (g, trace)
}

pub(crate) fn node_set(nodes: &[NodeId]) -> BTreeSet<NodeId> {
    nodes.iter().copied().collect()
}
