//! Lambda terms extended with group-indexed binary operations.

mod encode;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

use crate::group::GroupElem;

pub use encode::{
    bound_list, encode, encode_lambda_scale, syntactic_tree, BoundList, FanoutPolicy, Letter,
    LetterGate, PathWord, Side, SyntaxTree, TreeGate, TreeNode,
};
pub use parse::{parse, parse_corpus};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Lam(String, Box<Term>),
    App(Box<Term>, Box<Term>),
    /// `left @{label} right`, the ε-indexed operation.
    Eps(GroupElem, Box<Term>, Box<Term>),
    /// `left ~{label} right`, the dilation operation, defined as
    /// `B ~{e} A = (\y. A) @{e} B` for fresh `y`.
    Dil(GroupElem, Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn lam(name: &str, body: Term) -> Term {
        Term::Lam(name.to_string(), Box::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn eps(label: GroupElem, left: Term, right: Term) -> Term {
        Term::Eps(label, Box::new(left), Box::new(right))
    }

    pub fn dil(label: GroupElem, left: Term, right: Term) -> Term {
        Term::Dil(label, Box::new(left), Box::new(right))
    }

    /// Left-nested application of `f` to every argument.
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Lam(_, b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
            Term::Eps(_, l, r) | Term::Dil(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn is_closed(&self) -> bool {
        free_vars(self).is_empty()
    }
}

/// Free variables in first-occurrence (left-to-right leaf) order.
pub fn free_vars_ordered(t: &Term) -> Vec<String> {
    fn go(t: &Term, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match t {
            Term::Var(x) => {
                if !bound.contains(x) && !out.contains(x) {
                    out.push(x.clone());
                }
            }
            Term::Lam(x, b) => {
                bound.push(x.clone());
                go(b, bound, out);
                bound.pop();
            }
            Term::App(l, r) | Term::Eps(_, l, r) | Term::Dil(_, l, r) => {
                go(l, bound, out);
                go(r, bound, out);
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

pub fn free_vars(t: &Term) -> BTreeSet<String> {
    free_vars_ordered(t).into_iter().collect()
}

fn all_names(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Var(x) => {
            out.insert(x.clone());
        }
        Term::Lam(x, b) => {
            out.insert(x.clone());
            all_names(b, out);
        }
        Term::App(l, r) | Term::Eps(_, l, r) | Term::Dil(_, l, r) => {
            all_names(l, out);
            all_names(r, out);
        }
    }
}

/// `base~k` for the smallest `k >= 1` not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let stem = match base.rsplit_once('~') {
        Some((stem, n)) if !n.is_empty() && n.bytes().all(|b| b.is_ascii_digit()) => stem,
        _ => base,
    };
    (1..)
        .map(|k| format!("{stem}~{k}"))
        .find(|n| !avoid.contains(n))
        .expect("unbounded supply")
}

pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    fn go<'a>(a: &'a Term, b: &'a Term, env: &mut Vec<(&'a str, &'a str)>) -> bool {
        match (a, b) {
            (Term::Var(x), Term::Var(y)) => {
                let bx = env.iter().rposition(|(l, _)| *l == x);
                let by = env.iter().rposition(|(_, r)| *r == y);
                match (bx, by) {
                    (Some(i), Some(j)) => i == j,
                    (None, None) => x == y,
                    _ => false,
                }
            }
            (Term::Lam(x, p), Term::Lam(y, q)) => {
                env.push((x, y));
                let r = go(p, q, env);
                env.pop();
                r
            }
            (Term::App(f, x), Term::App(g, y)) => go(f, g, env) && go(x, y, env),
            (Term::Eps(e, l1, r1), Term::Eps(m, l2, r2))
            | (Term::Dil(e, l1, r1), Term::Dil(m, l2, r2)) => {
                e == m && go(l1, l2, env) && go(r1, r2, env)
            }
            _ => false,
        }
    }
    go(a, b, &mut Vec::new())
}

/// Capture-avoiding substitution `t[x := s]`.
pub fn substitute(t: &Term, x: &str, s: &Term) -> Term {
    let fv_s = free_vars(s);
    subst(t, x, s, &fv_s)
}

fn subst(t: &Term, x: &str, s: &Term, fv_s: &BTreeSet<String>) -> Term {
    match t {
        Term::Var(y) if y == x => s.clone(),
        Term::Var(_) => t.clone(),
        Term::Lam(y, _) if y == x => t.clone(),
        Term::Lam(y, body) => {
            if fv_s.contains(y) && free_vars(body).contains(x) {
                let mut avoid = fv_s.clone();
                all_names(body, &mut avoid);
                avoid.insert(x.to_string());
                let y2 = fresh_name(y, &avoid);
                let renamed = subst(body, y, &Term::Var(y2.clone()), &BTreeSet::from([y2.clone()]));
                Term::Lam(y2, Box::new(subst(&renamed, x, s, fv_s)))
            } else {
                Term::Lam(y.clone(), Box::new(subst(body, x, s, fv_s)))
            }
        }
        Term::App(f, a) => Term::app(subst(f, x, s, fv_s), subst(a, x, s, fv_s)),
        Term::Eps(e, l, r) => Term::eps(e.clone(), subst(l, x, s, fv_s), subst(r, x, s, fv_s)),
        Term::Dil(e, l, r) => Term::dil(e.clone(), subst(l, x, s, fv_s), subst(r, x, s, fv_s)),
    }
}

type Printer<'a> = Box<dyn Fn(&mut fmt::Formatter<'_>) -> fmt::Result + 'a>;

// Precedence levels for printing: 0 = abstraction, 1 = infix operation,
// 2 = application, 3 = atom.
fn fmt_prec(t: &Term, prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let (own, body): (u8, Printer<'_>) = match t {
        Term::Var(x) => (3, Box::new(move |f| f.write_str(x))),
        Term::Lam(x, b) => (
            0,
            Box::new(move |f| {
                write!(f, "\\{x}. ")?;
                fmt_prec(b, 0, f)
            }),
        ),
        Term::App(a, b) => (
            2,
            Box::new(move |f| {
                fmt_prec(a, 2, f)?;
                f.write_str(" ")?;
                fmt_prec(b, 3, f)
            }),
        ),
        Term::Eps(e, l, r) | Term::Dil(e, l, r) => {
            let op = if matches!(t, Term::Eps(..)) { '@' } else { '~' };
            (
                1,
                Box::new(move |f| {
                    fmt_prec(l, 1, f)?;
                    write!(f, " {op}{{{e}}} ")?;
                    fmt_prec(r, 2, f)
                }),
            )
        }
    };
    if own < prec {
        f.write_str("(")?;
        body(f)?;
        f.write_str(")")
    } else {
        body(f)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_prec(self, 0, f)
    }
}

/// Standard terms used throughout the library and tests.
pub mod std_terms {
    use super::Term;

    pub fn i() -> Term {
        Term::lam("x", Term::var("x"))
    }

    /// `\x. \y. x`
    pub fn k() -> Term {
        Term::lam("x", Term::lam("y", Term::var("x")))
    }

    /// `\x. \y. \z. x z (y z)`
    pub fn s() -> Term {
        let xz = Term::app(Term::var("x"), Term::var("z"));
        let yz = Term::app(Term::var("y"), Term::var("z"));
        Term::lam("x", Term::lam("y", Term::lam("z", Term::app(xz, yz))))
    }

    /// `\x. x x`
    pub fn u() -> Term {
        Term::lam("x", Term::app(Term::var("x"), Term::var("x")))
    }

    pub fn omega() -> Term {
        Term::app(u(), u())
    }

    /// `\f. \x. f (f ... (f x))` with `n` applications.
    pub fn church(n: usize) -> Term {
        let mut body = Term::var("x");
        for _ in 0..n {
            body = Term::app(Term::var("f"), body);
        }
        Term::lam("f", Term::lam("x", body))
    }

    /// `\n. \f. \x. f (n f x)`
    pub fn succ() -> Term {
        let nfx = Term::apps(Term::var("n"), [Term::var("f"), Term::var("x")]);
        Term::lam(
            "n",
            Term::lam("f", Term::lam("x", Term::app(Term::var("f"), nfx))),
        )
    }

    /// `\m. \n. \f. \x. m f (n f x)`
    pub fn plus() -> Term {
        let nfx = Term::apps(Term::var("n"), [Term::var("f"), Term::var("x")]);
        let body = Term::apps(Term::var("m"), [Term::var("f"), nfx]);
        Term::lam("m", Term::lam("n", Term::lam("f", Term::lam("x", body))))
    }
}
