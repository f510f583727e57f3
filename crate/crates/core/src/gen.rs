//! Seeded random corpora: closed terms, β-redexes and arbitrary graphs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Gate, Graph, PortDir, PortRef};
use crate::group::GroupElem;
use crate::term::Term;

/// Environment variable that fixes the seed of randomized corpora.
pub const SEED_VAR: &str = "GLC_SEED";

/// `GLC_SEED` if set and numeric, else `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

// A small pool so that shadowing shows up often.
const BINDERS: [&str; 4] = ["x", "y", "z", "w"];

/// A closed lambda term of exactly `size` AST nodes (`size` ≥ 2).
pub fn random_closed_term<R: Rng>(rng: &mut R, size: usize) -> Term {
    term_in(rng, size.max(2), &mut Vec::new())
}

fn term_in<R: Rng>(rng: &mut R, size: usize, scope: &mut Vec<String>) -> Term {
    if size == 1 {
        return Term::var(scope.choose(rng).expect("non-empty scope"));
    }
    // Closed subterms need a binder first; size 2 can only be λx.x.
    let lam = scope.is_empty() || size == 2 || rng.gen_bool(0.4);
    if lam {
        let x = *BINDERS.choose(rng).expect("non-empty pool");
        scope.push(x.to_string());
        let body = term_in(rng, size - 1, scope);
        scope.pop();
        return Term::lam(x, body);
    }
    let left = rng.gen_range(1..size - 1);
    let f = term_in(rng, left, scope);
    let a = term_in(rng, size - 1 - left, scope);
    Term::app(f, a)
}

/// A closed redex `(λx.A) B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Redex {
    pub var: String,
    pub body: Term,
    pub arg: Term,
}

impl Redex {
    pub fn term(&self) -> Term {
        Term::app(Term::lam(&self.var, self.body.clone()), self.arg.clone())
    }

    /// Whether the bound variable occurs in the body.
    pub fn uses_var(&self) -> bool {
        crate::term::free_vars(&self.body).contains(&self.var)
    }
}

/// A closed redex with |A| + |B| ≤ `max_size` (at least 3). About one in
/// four bodies ignore the bound variable.
pub fn random_redex<R: Rng>(rng: &mut R, max_size: usize) -> Redex {
    let max_size = max_size.max(3);
    let total = rng.gen_range(3..=max_size);
    let body_size = rng.gen_range(1..=total - 2);
    let arg = random_closed_term(rng, total - body_size);
    let fresh = rng.gen_bool(0.25);
    let var = "v".to_string();
    let body = if fresh && body_size >= 2 {
        random_closed_term(rng, body_size)
    } else {
        term_in(rng, body_size, &mut vec![var.clone()])
    };
    Redex { var, body, arg }
}

/// An arbitrary valid graph with `gates` gates: ports are paired at random
/// and leftover ports become leaves (`i0`, `i1`, … and `o0`, `o1`, …).
pub fn random_graph<R: Rng>(rng: &mut R, gates: usize) -> Graph {
    let mut g = Graph::new();
    let mut outs = Vec::new();
    let mut ins = Vec::new();
    for _ in 0..gates {
        let gate = match rng.gen_range(0..5) {
            0 => Gate::lambda(),
            1 => Gate::fanout(),
            2 => Gate::app(),
            3 => Gate::top(),
            _ => Gate::dil(GroupElem::generator("a")),
        };
        let n = g.add_gate(gate);
        for p in g.ports(n).collect::<Vec<_>>() {
            match g.port_dir(p) {
                Some(PortDir::Out) => outs.push(p),
                _ => ins.push(p),
            }
        }
    }
    outs.shuffle(rng);
    ins.shuffle(rng);
    let paired = outs.len().min(ins.len());
    for (o, i) in outs.iter().zip(&ins) {
        g.connect(*o, *i);
    }
    for (k, o) in outs[paired..].iter().enumerate() {
        let leaf = g.add_output(&format!("o{k}")).expect("fresh name");
        g.connect(*o, PortRef::new(leaf, 1));
    }
    for (k, i) in ins[paired..].iter().enumerate() {
        let leaf = g.add_input(&format!("i{k}")).expect("fresh name");
        g.connect(PortRef::new(leaf, 1), *i);
    }
    g
}
