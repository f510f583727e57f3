//! Elements of the free abelian group over named generators.
//!
//! Written multiplicatively: `a^2*b^-1`, with `1` for the neutral element.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::ParseError;

/// An element of the label group. Zero exponents are never stored, so
/// structural equality is group equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElem {
    exponents: BTreeMap<String, i64>,
}

impl GroupElem {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn generator(name: &str) -> Self {
        Self::power(name, 1)
    }

    pub fn power(name: &str, exp: i64) -> Self {
        let mut g = Self::one();
        g.add_exponent(name, exp);
        g
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponent(&self, name: &str) -> i64 {
        self.exponents.get(name).copied().unwrap_or(0)
    }

    pub fn generators(&self) -> impl Iterator<Item = (&str, i64)> {
        self.exponents.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn inverse(&self) -> Self {
        Self {
            exponents: self
                .exponents
                .iter()
                .map(|(k, v)| (k.clone(), -v))
                .collect(),
        }
    }

    fn add_exponent(&mut self, name: &str, exp: i64) {
        if exp == 0 {
            return;
        }
        let entry = self.exponents.entry(name.to_string()).or_insert(0);
        *entry += exp;
        if *entry == 0 {
            self.exponents.remove(name);
        }
    }
}

impl Mul for &GroupElem {
    type Output = GroupElem;

    fn mul(self, rhs: &GroupElem) -> GroupElem {
        let mut out = self.clone();
        for (k, v) in &rhs.exponents {
            out.add_exponent(k, *v);
        }
        out
    }
}

impl Mul for GroupElem {
    type Output = GroupElem;

    fn mul(self, rhs: GroupElem) -> GroupElem {
        &self * &rhs
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (name, exp)) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn is_generator_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FromStr for GroupElem {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = |msg: &str| ParseError::new(0, format!("group element `{s}`: {msg}"));
        if s.is_empty() {
            return Err(bad("empty"));
        }
        let mut out = GroupElem::one();
        for factor in s.split('*') {
            let factor = factor.trim();
            if factor == "1" {
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((name, exp)) => {
                    let exp: i64 = exp.trim().parse().map_err(|_| bad("bad exponent"))?;
                    (name.trim(), exp)
                }
                None => (factor, 1),
            };
            if !is_generator_name(name) {
                return Err(bad("bad generator name"));
            }
            out.add_exponent(name, exp);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neutral_prints_as_one() {
        assert_eq!(GroupElem::one().to_string(), "1");
        assert!("1".parse::<GroupElem>().unwrap().is_one());
    }

    #[test]
    fn product_cancels() {
        let a = GroupElem::generator("a");
        assert!((&a * &a.inverse()).is_one());
        let g: GroupElem = "a^2*b^-1".parse().unwrap();
        assert_eq!(g.exponent("a"), 2);
        assert_eq!(g.exponent("b"), -1);
        assert_eq!(g.to_string(), "a^2*b^-1");
        assert_eq!((&g * &"b*a^-2".parse().unwrap()), GroupElem::one());
    }

    #[test]
    fn rejects_garbage() {
        assert!("a^x".parse::<GroupElem>().is_err());
        assert!("2a".parse::<GroupElem>().is_err());
        assert!("".parse::<GroupElem>().is_err());
    }

    #[test]
    fn commutative() {
        let a: GroupElem = "a*b^3".parse().unwrap();
        let b: GroupElem = "b^-1*c".parse().unwrap();
        assert_eq!(&a * &b, &b * &a);
    }
}
