//! Parameterized expressions in golden tables.
//!
//! A template is ordinary cochain text in which every `{...}` holds a
//! rational arithmetic expression over grid variables, e.g.
//! `{-(n+1)}*psi[1,1,{m+n+1}]_1`.

use std::collections::BTreeMap;

use linfty_core::rational::{format_rational, is_integer, parse_rational, to_i64};
use linfty_core::Rational;
use num_traits::Zero;

pub type Vars = BTreeMap<String, Rational>;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TemplateError {
    #[error("bad arithmetic {0:?}: {1}")]
    Syntax(String, String),
    #[error("unknown variable {0:?}")]
    Unknown(String),
    #[error("division by zero in {0:?}")]
    DivisionByZero(String),
    #[error("unbalanced braces in {0:?}")]
    Braces(String),
    #[error("{0:?} is not an integer")]
    NotInteger(String),
}

struct Arith<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    vars: &'a Vars,
}

impl Arith<'_> {
    fn err(&self, msg: &str) -> TemplateError {
        TemplateError::Syntax(self.src.to_string(), msg.to_string())
    }

    fn ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.bytes.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Rational, TemplateError> {
        let mut acc = self.product()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if op == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Rational, TemplateError> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == b'*' {
                acc * rhs
            } else if rhs.is_zero() {
                return Err(TemplateError::DivisionByZero(self.src.to_string()));
            } else {
                acc / rhs
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Rational, TemplateError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Rational, TemplateError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'0'..=b'9') => {
                let start = self.pos;
                while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
                    self.pos += 1;
                }
                parse_rational(&self.src[start..self.pos]).map_err(|e| self.err(&e.to_string()))
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_') {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                self.vars.get(name).cloned().ok_or_else(|| TemplateError::Unknown(name.to_string()))
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

pub fn eval(src: &str, vars: &Vars) -> Result<Rational, TemplateError> {
    let mut a = Arith { src, bytes: src.as_bytes(), pos: 0, vars };
    let v = a.sum()?;
    if a.peek().is_some() {
        return Err(a.err("trailing input"));
    }
    Ok(v)
}

pub fn eval_int(src: &str, vars: &Vars) -> Result<i64, TemplateError> {
    let v = eval(src, vars)?;
    to_i64(&v).filter(|_| is_integer(&v)).ok_or_else(|| TemplateError::NotInteger(src.to_string()))
}

/// Result of filling a template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Filled {
    Text(String),
    /// Some multi-index entry came out negative: the term does not exist.
    Absent,
}

/// Substitutes every `{...}`; a negative value inside `[...]` makes the
/// whole template [`Filled::Absent`].
pub fn fill(template: &str, vars: &Vars) -> Result<Filled, TemplateError> {
    let mut out = String::new();
    let mut rest = template;
    let mut absent = false;
    while let Some(open) = rest.find('{') {
        let close = rest[open..].find('}').ok_or_else(|| TemplateError::Braces(template.to_string()))? + open;
        let before = &rest[..open];
        out.push_str(before);
        let value = eval(&rest[open + 1..close], vars)?;
        let in_index = out.rfind('[').is_some_and(|i| out.rfind(']').is_none_or(|j| j < i));
        if in_index && value < Rational::zero() {
            absent = true;
        }
        out.push_str(&format_rational(&value));
        rest = &rest[close + 1..];
    }
    if rest.contains('}') {
        return Err(TemplateError::Braces(template.to_string()));
    }
    out.push_str(rest);
    Ok(if absent { Filled::Absent } else { Filled::Text(out) })
}

/// Fills a list of term templates and joins the existing ones with `+`.
pub fn fill_terms(terms: &[String], vars: &Vars) -> Result<String, TemplateError> {
    let mut parts = Vec::new();
    for t in terms {
        if let Filled::Text(s) = fill(t, vars)? {
            parts.push(s);
        }
    }
    Ok(if parts.is_empty() { "0".to_string() } else { parts.join(" + ") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use linfty_core::rational::{frac, int};

    fn vars() -> Vars {
        [("m".to_string(), int(2)), ("n".to_string(), int(-1)), ("l".to_string(), frac(1, 2))].into()
    }

    #[test]
    fn arithmetic() {
        assert_eq!(eval("-(n+1)", &vars()).unwrap(), int(0));
        assert_eq!(eval("l*m - 3/2", &vars()).unwrap(), frac(-1, 2));
        assert_eq!(eval("2*m+6", &vars()).unwrap(), int(10));
        assert!(eval("q", &vars()).is_err());
        assert!(eval("1/(m-2)", &vars()).is_err());
    }

    #[test]
    fn filling() {
        let v = vars();
        assert_eq!(fill("{l-n-1}*psi[1,1,{m+n+1}]_2", &v).unwrap(), Filled::Text("1/2*psi[1,1,2]_2".into()));
        assert_eq!(fill("phi[1,1,{n}]_3", &v).unwrap(), Filled::Absent);
        // negative coefficients are fine
        assert_eq!(fill("{n}*phi[1,0,0]_1", &v).unwrap(), Filled::Text("-1*phi[1,0,0]_1".into()));
        let terms = vec!["phi[1,1,{n}]_3".to_string(), "{m}*psi[0,0,1]_1".to_string()];
        assert_eq!(fill_terms(&terms, &v).unwrap(), "2*psi[0,0,1]_1");
        assert_eq!(fill_terms(&[], &v).unwrap(), "0");
    }
}
