//! Term syntax.
//!
//! ```text
//! term  := ('\' | 'λ') ident+ '.' term
//!        | ident 'λ' term                  -- infix abstraction sugar
//!        | infix
//! infix := app (('@{' group '}' | '~{' group '}') app)*
//! app   := atom+ [abstraction]
//! atom  := ident | '(' term ')'
//! ```
//!
//! `@{1}` is plain application. Application binds tighter than the infix
//! operations, which associate to the left.

use crate::error::ParseError;
use crate::group::GroupElem;

use super::Term;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Backslash,
    Lambda,
    Dot,
    LParen,
    RParen,
    Ident(String),
    Eps(GroupElem),
    Dil(GroupElem),
}

fn is_ident_start(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '\\' => {
                out.push((pos, Tok::Backslash));
                i += 1;
            }
            'λ' => {
                out.push((pos, Tok::Lambda));
                i += 1;
            }
            '.' => {
                out.push((pos, Tok::Dot));
                i += 1;
            }
            '(' => {
                out.push((pos, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((pos, Tok::RParen));
                i += 1;
            }
            '@' | '~' => {
                if chars.get(i + 1).map(|c| c.1) != Some('{') {
                    return Err(ParseError::new(pos, format!("expected `{{` after `{c}`")));
                }
                let start = i + 2;
                let end = (start..chars.len())
                    .find(|j| chars[*j].1 == '}')
                    .ok_or_else(|| ParseError::new(pos, "unterminated group literal"))?;
                let lit: String = chars[start..end].iter().map(|c| c.1).collect();
                let g: GroupElem = lit
                    .parse()
                    .map_err(|e: ParseError| ParseError::new(pos, e.message))?;
                out.push((pos, if c == '@' { Tok::Eps(g) } else { Tok::Dil(g) }));
                i = end + 1;
            }
            c if is_ident_start(c) => {
                let mut name = String::new();
                while i < chars.len() {
                    let c = chars[i].1;
                    let fresh_suffix = c == '~'
                        && chars.get(i + 1).is_some_and(|d| d.1.is_ascii_digit());
                    if is_ident_start(c) || c == '\'' || fresh_suffix {
                        name.push(c);
                        i += 1;
                    } else {
                        break;
                    }
                }
                out.push((pos, Tok::Ident(name)));
            }
            other => return Err(ParseError::new(pos, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.i + k).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(self.pos(), msg))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|t| t.1.clone());
        self.i += 1;
        t
    }

    fn at_prefix_lambda(&self) -> bool {
        match self.peek() {
            Some(Tok::Backslash) => true,
            Some(Tok::Lambda) => matches!(self.peek_at(1), Some(Tok::Ident(_))),
            _ => false,
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if self.at_prefix_lambda() {
            return self.abstraction();
        }
        if let (Some(Tok::Ident(x)), Some(Tok::Lambda)) = (self.peek(), self.peek_at(1)) {
            let prefix_form = matches!(self.peek_at(2), Some(Tok::Ident(_)))
                && matches!(self.peek_at(3), Some(Tok::Dot));
            if !prefix_form {
                let x = x.clone();
                self.i += 2;
                return Ok(Term::lam(&x, self.term()?));
            }
        }
        self.infix()
    }

    fn abstraction(&mut self) -> Result<Term, ParseError> {
        self.bump();
        let mut names = Vec::new();
        while let Some(Tok::Ident(x)) = self.peek() {
            names.push(x.clone());
            self.bump();
        }
        if names.is_empty() {
            return self.err("expected a variable after lambda");
        }
        if self.bump() != Some(Tok::Dot) {
            self.i -= 1;
            return self.err("expected `.`");
        }
        let body = self.term()?;
        Ok(names.iter().rev().fold(body, |b, x| Term::lam(x, b)))
    }

    fn infix(&mut self) -> Result<Term, ParseError> {
        let mut left = self.app()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Eps(g)) => (true, g.clone()),
                Some(Tok::Dil(g)) => (false, g.clone()),
                _ => return Ok(left),
            };
            self.bump();
            let right = self.app()?;
            left = match op {
                (true, g) if g.is_one() => Term::app(left, right),
                (true, g) => Term::eps(g, left, right),
                (false, g) => Term::dil(g, left, right),
            };
        }
    }

    fn app(&mut self) -> Result<Term, ParseError> {
        let mut acc: Option<Term> = None;
        let push = |acc: Option<Term>, t: Term| match acc {
            None => t,
            Some(f) => Term::app(f, t),
        };
        loop {
            if self.at_prefix_lambda() {
                // an unparenthesised abstraction extends to the right
                let t = self.abstraction()?;
                acc = Some(push(acc, t));
                break;
            }
            let t = match self.peek() {
                Some(Tok::Ident(x)) => {
                    let t = Term::var(x);
                    self.bump();
                    t
                }
                Some(Tok::LParen) => {
                    self.bump();
                    let t = self.term()?;
                    if self.bump() != Some(Tok::RParen) {
                        self.i -= 1;
                        return self.err("expected `)`");
                    }
                    t
                }
                _ => break,
            };
            acc = Some(push(acc, t));
        }
        match acc {
            Some(t) => Ok(t),
            None => self.err("expected a term"),
        }
    }
}

pub fn parse(src: &str) -> Result<Term, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        i: 0,
        end: src.len(),
    };
    let t = p.term()?;
    if p.i < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(t)
}

/// Parses a corpus: one term per line, `#` starts a comment. Returns
/// `(line number, term)` pairs.
pub fn parse_corpus(src: &str) -> Result<Vec<(usize, Term)>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let t = parse(content).map_err(|e| ParseError::new(i + 1, format!("col {}: {}", e.pos, e.message)))?;
        out.push((i + 1, t));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::std_terms;

    #[test]
    fn identity() {
        assert_eq!(parse("\\x.x").unwrap(), std_terms::i());
        assert_eq!(parse("λx.x").unwrap(), std_terms::i());
    }

    #[test]
    fn omega() {
        assert_eq!(parse("(\\x.(x x)) (\\x.(x x))").unwrap(), std_terms::omega());
    }

    #[test]
    fn application_is_left_associative() {
        let t = parse("a b c").unwrap();
        assert_eq!(t, Term::apps(Term::var("a"), [Term::var("b"), Term::var("c")]));
    }

    #[test]
    fn multi_binder_and_trailing_lambda() {
        assert_eq!(parse("\\x y. x").unwrap(), std_terms::k());
        let t = parse("f \\x. x y").unwrap();
        assert_eq!(
            t,
            Term::app(Term::var("f"), Term::lam("x", Term::app(Term::var("x"), Term::var("y"))))
        );
    }

    #[test]
    fn infix_operations() {
        let t = parse("a @{e} b").unwrap();
        assert_eq!(t, Term::eps("e".parse().unwrap(), Term::var("a"), Term::var("b")));
        let t = parse("a @{1} b").unwrap();
        assert_eq!(t, Term::app(Term::var("a"), Term::var("b")));
        let t = parse("b ~{a^2*b^-1} a").unwrap();
        assert_eq!(t, Term::dil("a^2*b^-1".parse().unwrap(), Term::var("b"), Term::var("a")));
    }

    #[test]
    fn infix_lambda_sugar_round_trips() {
        let t = parse("(x λ B) @{1} A").unwrap();
        assert_eq!(t, Term::app(Term::lam("x", Term::var("B")), Term::var("A")));
        assert_eq!(parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn errors_have_positions() {
        let e = parse("(\\x. x").unwrap_err();
        assert_eq!(e.pos, 6);
        let e = parse("a @{q^z} b").unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(parse("").is_err());
        assert!(parse("\\. x").is_err());
    }

    #[test]
    fn fresh_names_lex() {
        assert_eq!(parse("x~1").unwrap(), Term::var("x~1"));
    }

    #[test]
    fn corpus() {
        let c = parse_corpus("# header\n\\x.x\n\n  a b # trailing\n").unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[1].0, 4);
    }
}
