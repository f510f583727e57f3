//! Standard graphs: combinators, Church numerals, arithmetic and braid
//! crossings.

use crate::error::LibraryError;
use crate::graph::{Gate, Graph, PortRef};
use crate::group::GroupElem;
use crate::term::{encode, std_terms, FanoutPolicy, Term};

/// Largest numeral the library builds. Church graphs grow linearly, this
/// only guards against typos like `church:1000000000`.
pub const MAX_CHURCH: usize = 10_000;

fn enc(t: &Term) -> Graph {
    encode(t, FanoutPolicy::default())
}

/// `I`, `K` or `S`.
pub fn combinator(name: &str) -> Result<Graph, LibraryError> {
    let t = match name {
        "I" | "i" => std_terms::i(),
        "K" | "k" => std_terms::k(),
        "S" | "s" => std_terms::s(),
        _ => return Err(LibraryError::Unknown(name.to_string())),
    };
    Ok(enc(&t))
}

pub fn church(n: usize) -> Result<Graph, LibraryError> {
    if n > MAX_CHURCH {
        return Err(LibraryError::InvalidParam(format!(
            "church numeral {n} exceeds {MAX_CHURCH}"
        )));
    }
    Ok(enc(&std_terms::church(n)))
}

pub fn succ() -> Graph {
    enc(&std_terms::succ())
}

pub fn plus() -> Graph {
    enc(&std_terms::plus())
}

pub fn omega() -> Graph {
    enc(&std_terms::omega())
}

/// Braid crossing coded by one FanOut and one ε̄ gate. IN leaves `x`, `y`;
/// OUT leaves `p`, `q`. Strand `x` passes through to `p` and is copied into
/// the left operand of ε̄, whose right operand is `y`; the result goes to `q`.
pub fn crossing(eps: &GroupElem) -> Graph {
    crossing_with(eps.clone())
}

/// The crossing with label ε⁻¹. Stacked under [`crossing`] it reduces to
/// two parallel wires through CO-ASSOC, R2, ext2 and local pruning.
pub fn crossing_inv(eps: &GroupElem) -> Graph {
    crossing_with(eps.inverse())
}

fn crossing_with(label: GroupElem) -> Graph {
    let mut g = Graph::new();
    let x = g.add_input("x").expect("fresh graph");
    let y = g.add_input("y").expect("fresh graph");
    let p = g.add_output("p").expect("fresh graph");
    let q = g.add_output("q").expect("fresh graph");
    let f = g.add_gate(Gate::fanout());
    let d = g.add_gate(Gate::dil(label));
    g.connect(PortRef::new(x, 1), PortRef::new(f, 1));
    g.connect(PortRef::new(f, 2), PortRef::new(p, 1));
    g.connect(PortRef::new(f, 3), PortRef::new(d, 1));
    g.connect(PortRef::new(y, 1), PortRef::new(d, 2));
    g.connect(PortRef::new(d, 3), PortRef::new(q, 1));
    g
}

/// Builds a library graph from a short name: `I`, `K`, `S`, `omega`,
/// `succ`, `plus`, `church:<n>`, `crossing:<g>`, `crossing-inv:<g>`.
pub fn by_name(spec: &str) -> Result<Graph, LibraryError> {
    let (name, param) = match spec.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (spec, None),
    };
    let label = |p: Option<&str>| -> Result<GroupElem, LibraryError> {
        p.unwrap_or("1")
            .parse()
            .map_err(|e| LibraryError::InvalidParam(format!("{e}")))
    };
    match name {
        "I" | "K" | "S" | "i" | "k" | "s" if param.is_none() => combinator(name),
        "omega" if param.is_none() => Ok(omega()),
        "succ" if param.is_none() => Ok(succ()),
        "plus" if param.is_none() => Ok(plus()),
        "church" => {
            let p = param.ok_or_else(|| LibraryError::InvalidParam("church needs :<n>".into()))?;
            let n = p
                .parse()
                .map_err(|_| LibraryError::InvalidParam(format!("not a numeral: {p}")))?;
            church(n)
        }
        "crossing" => Ok(crossing(&label(param)?)),
        "crossing-inv" => Ok(crossing_inv(&label(param)?)),
        _ => Err(LibraryError::Unknown(spec.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GateKind;

    #[test]
    fn church_zero_has_one_top() {
        assert_eq!(church(0).unwrap().count_gates(GateKind::Top), 1);
    }

    #[test]
    fn names() {
        assert!(by_name("church:3").is_ok());
        assert!(by_name("crossing:a^2*b^-1").is_ok());
        assert!(matches!(by_name("Y"), Err(LibraryError::Unknown(_))));
        assert!(matches!(by_name("church:x"), Err(LibraryError::InvalidParam(_))));
    }

    #[test]
    fn crossing_shape() {
        let g = crossing(&GroupElem::generator("a"));
        assert!(g.is_valid());
        assert_eq!(g.input_names(), ["x", "y"]);
        assert_eq!(g.output_names(), ["p", "q"]);
    }
}
