//! Text form of cochains.
//!
//! ```text
//! expression := ['-'] term (('+' | '-') term)*  |  '0'
//! term       := [rational '*'] gen
//! gen        := ('phi' | 'psi') '[' int (',' int)* ']' '_' int
//! ```
//!
//! `phi` marks even and `psi` odd basis cochains; a symbol that disagrees with
//! the parity of the cochain it names is rejected. A rational may carry its
//! own sign (`a + -3/2*psi[...]_1`) so that instantiated templates parse.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::cochain::{BasisCochain, Cochain};
use crate::error::{Error, Result};
use crate::graded::{GradedSpace, MultiIndex, Parity};
use crate::rational::{format_rational, Rational};

pub fn format_cochain(c: &Cochain) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    let space = *c.space();
    let mut out = String::new();
    for (i, (b, q)) in c.terms().enumerate() {
        let negative = q.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let magnitude = q.abs();
        if !magnitude.is_one() {
            out.push_str(&format_rational(&magnitude));
            out.push('*');
        }
        out.push_str(&format_basis(&space, b));
    }
    out
}

pub fn format_basis(space: &GradedSpace, b: &BasisCochain) -> String {
    let symbol = match b.parity(space) {
        Parity::Even => "phi",
        Parity::Odd => "psi",
    };
    let exps: Vec<String> = b.index.exponents().iter().map(|e| e.to_string()).collect();
    alloc::format!("{symbol}[{}]_{}", exps.join(","), b.target + 1)
}

pub fn parse_cochain(space: &GradedSpace, input: &str) -> Result<Cochain> {
    let mut p = Parser { src: input.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.rest_is("0") {
        let save = p.pos;
        p.pos += 1;
        p.skip_ws();
        if p.at_end() {
            return Ok(Cochain::zero(*space));
        }
        p.pos = save;
    }
    let mut c = Cochain::zero(*space);
    let mut first = true;
    loop {
        p.skip_ws();
        let mut sign = Rational::one();
        match p.peek() {
            Some(b'+') if !first => p.pos += 1,
            Some(b'-') => {
                p.pos += 1;
                sign = -sign;
            }
            _ if !first => return Err(p.error("expected '+' or '-'")),
            _ => {}
        }
        p.skip_ws();
        let (coeff, basis) = p.term(space)?;
        c.add_term(basis, sign * coeff)?;
        first = false;
        p.skip_ws();
        if p.at_end() {
            return Ok(c);
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse { position: self.pos, message: message.to_string() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn rest_is(&self, s: &str) -> bool {
        self.src[self.pos..].starts_with(s.as_bytes())
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&alloc::format!("expected '{}'", byte as char)))
        }
    }

    fn digits(&mut self) -> Result<&str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn uint(&mut self) -> Result<usize> {
        self.skip_ws();
        let at = self.pos;
        self.digits()?.parse().map_err(|_| Error::Parse {
            position: at,
            message: "integer out of range".to_string(),
        })
    }

    fn term(&mut self, space: &GradedSpace) -> Result<(Rational, BasisCochain)> {
        let mut coeff = Rational::one();
        if matches!(self.peek(), Some(b'0'..=b'9' | b'+' | b'-')) {
            let start = self.pos;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            self.digits()?;
            if self.peek() == Some(b'/') {
                self.pos += 1;
                self.digits()?;
            }
            let text = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            coeff = crate::rational::parse_rational(text).map_err(|_| Error::Parse {
                position: start,
                message: alloc::format!("bad rational {text:?}"),
            })?;
            self.expect(b'*')?;
            self.skip_ws();
        }
        let symbol_at = self.pos;
        let parity = if self.rest_is("phi") {
            Parity::Even
        } else if self.rest_is("psi") {
            Parity::Odd
        } else {
            return Err(self.error("expected 'phi' or 'psi'"));
        };
        self.pos += 3;
        self.expect(b'[')?;
        let mut exps = Vec::new();
        loop {
            let e = self.uint()?;
            exps.push(u32::try_from(e).map_err(|_| self.error("exponent too large"))?);
            self.skip_ws();
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error("expected ',' or ']'")),
            }
        }
        self.expect(b'_')?;
        let target_at = self.pos;
        let target = self.uint()?;
        if target == 0 || target > space.dim() {
            return Err(Error::Parse { position: target_at, message: alloc::format!("target w{target} out of range") });
        }
        let index = MultiIndex::new(space, exps).map_err(|e| Error::Parse {
            position: symbol_at,
            message: e.to_string(),
        })?;
        let basis = BasisCochain { index, target: target - 1 };
        if basis.parity(space) != parity {
            return Err(Error::Parse {
                position: symbol_at,
                message: alloc::format!(
                    "{} names an {} cochain",
                    format_basis(space, &basis),
                    basis.parity(space)
                ),
            });
        }
        Ok((coeff, basis))
    }
}
