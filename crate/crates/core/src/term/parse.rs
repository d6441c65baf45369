//! Text grammar for terms.
//!
//! ```text
//! term   := sum ( "%" sum )*
//! sum    := prod ( ( "+" | "-." ) prod )*
//! prod   := power ( ( "*" | "/" ) power )*
//! power  := atom ( "^" power )?
//! atom   := natural | ident | "(" term ")" | "fl" "(" term ")"
//! ```
//!
//! `/` is floor division wherever it appears; `fl( .. )` marks a floored
//! quotient and must wrap one. All operators are left-associative except `^`.

use std::str::FromStr;

use num_bigint::BigUint;

use super::{Op, Term};
use crate::error::{Error, Result};

pub fn parse(src: &str) -> Result<Term> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(t)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut lhs = self.sum()?;
        while self.eat("%") {
            lhs = Term::bin(Op::Mod, lhs, self.sum()?);
        }
        Ok(lhs)
    }

    fn sum(&mut self) -> Result<Term> {
        let mut lhs = self.prod()?;
        loop {
            let op = match self.peek() {
                Some(b'+') => Op::Add,
                Some(b'-') => {
                    if self.src.get(self.pos + 1) != Some(&b'.') {
                        return Err(self.error("expected `-.` (truncated subtraction)"));
                    }
                    Op::TruncSub
                }
                _ => return Ok(lhs),
            };
            self.pos += if op == Op::Add { 1 } else { 2 };
            lhs = Term::bin(op, lhs, self.prod()?);
        }
    }

    fn prod(&mut self) -> Result<Term> {
        let mut lhs = self.power()?;
        loop {
            let op = match self.peek() {
                Some(b'*') => Op::Mul,
                Some(b'/') => Op::FloorDiv,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Term::bin(op, lhs, self.power()?);
        }
    }

    fn power(&mut self) -> Result<Term> {
        let base = self.atom()?;
        if self.eat("^") {
            Ok(Term::bin(Op::Pow, base, self.power()?))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let t = self.term()?;
                self.close()?;
                Ok(t)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(Term::Const(BigUint::from_str(digits).expect("digits")))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .src
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if name == "fl" {
                    return self.floored(start);
                }
                Ok(Term::Var(name.to_string()))
            }
            Some(b'-') => Err(self.error("negative literals are not allowed")),
            Some(_) => Err(self.error("expected a number, variable or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn floored(&mut self, start: usize) -> Result<Term> {
        if !self.eat("(") {
            return Err(self.error("expected `(` after `fl`"));
        }
        let inner = self.term()?;
        self.close()?;
        match inner {
            Term::Bin(Op::FloorDiv, ..) => Ok(inner),
            _ => Err(Error::Parse {
                pos: start,
                msg: "fl(...) must wrap a quotient `x / y`".into(),
            }),
        }
    }

    fn close(&mut self) -> Result<()> {
        if self.eat(")") {
            Ok(())
        } else {
            Err(self.error("expected `)`"))
        }
    }
}
