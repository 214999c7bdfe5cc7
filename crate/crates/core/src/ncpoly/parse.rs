//! Recursive-descent parser for the polynomial text grammar:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := coeff | var | '(' expr ')' | 'T(' expr ')'
//! var    := 'x' nat | 'h'
//! coeff  := int ('/' nat)?
//! ```
//!
//! The `*` between factors is mandatory, so `x12` always means variable 12.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::poly::Poly;
use super::scalar::Scalar;
use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// Parses `text` as a polynomial in `num_vars` variables.
pub fn parse(text: &str, num_vars: usize) -> Result<Poly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        num_vars,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    num_vars: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn nat(&mut self) -> Result<usize> {
        self.skip_ws();
        let at = self.pos;
        let d = self.digits().ok_or_else(|| self.error("expected a natural number"))?;
        d.parse().map_err(|_| Error::Parse {
            pos: at,
            msg: "number too large".into(),
        })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.num_vars);
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negate { acc - t } else { acc + t };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = acc * f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let k = self.nat()?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'T') => {
                self.pos += 1;
                if self.src.get(self.pos) != Some(&b'(') {
                    return Err(self.error("expected '(' directly after T"));
                }
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner.transpose())
            }
            Some(b'h') => {
                self.pos += 1;
                Ok(Poly::direction(self.num_vars))
            }
            Some(b'x') => {
                self.pos += 1;
                let idx_at = self.pos;
                let idx: usize = self
                    .digits()
                    .ok_or_else(|| self.error("expected variable index after 'x'"))?
                    .parse()
                    .map_err(|_| Error::Parse {
                        pos: idx_at,
                        msg: "variable index too large".into(),
                    })?;
                if idx == 0 || idx > self.num_vars || idx > usize::from(u16::MAX) {
                    return Err(Error::Parse {
                        pos: start,
                        msg: Error::VarOutOfRange {
                            index: idx,
                            num_vars: self.num_vars,
                        }
                        .to_string(),
                    });
                }
                Ok(Poly::monomial(
                    self.num_vars,
                    Word::new(vec![Letter::X(idx as u16)]),
                    Scalar::from_integer(1.into()),
                ))
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().unwrap().parse().unwrap();
                let mut value = BigRational::from_integer(num);
                // a '/' directly after an integer is part of the coefficient
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den_at = self.pos;
                    let den: BigInt = self
                        .digits()
                        .ok_or_else(|| self.error("expected denominator"))?
                        .parse()
                        .unwrap();
                    if den.is_zero() {
                        return Err(Error::Parse {
                            pos: den_at,
                            msg: "zero denominator".into(),
                        });
                    }
                    value /= BigRational::from_integer(den);
                }
                Ok(Poly::constant(self.num_vars, value))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
