//! Arithmetic terms: natural-number constants and variables closed under
//! `+`, truncated subtraction, `*`, floor division, `^` and `mod`.

mod build;
mod eval;
mod parse;
mod render;

pub use build::build_extraction_term;
pub use eval::{Assignment, Evaluation, DEFAULT_BIT_BUDGET};
pub use parse::parse;
pub use render::TermFormat;

use num_bigint::BigUint;

/// Binary operations of the term language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Add,
    /// `x -. y = max(x - y, 0)`
    TruncSub,
    Mul,
    /// `floor(x / y)`, with `x / 0 = 0`
    FloorDiv,
    /// `x ^ y`, with `0 ^ 0 = 1`
    Pow,
    /// `x mod y = x -. y * floor(x / y)`
    Mod,
}

impl Op {
    pub const ALL: [Op; 6] = [Op::Add, Op::TruncSub, Op::Mul, Op::FloorDiv, Op::Pow, Op::Mod];

    /// Name used by the JSON encoding.
    pub fn name(self) -> &'static str {
        match self {
            Op::Add => "add",
            Op::TruncSub => "truncsub",
            Op::Mul => "mul",
            Op::FloorDiv => "floordiv",
            Op::Pow => "pow",
            Op::Mod => "mod",
        }
    }

    pub fn from_name(s: &str) -> Option<Op> {
        Op::ALL.into_iter().find(|op| op.name() == s)
    }

    /// Binding strength in the text grammar: `^` > `* /` > `+ -.` > `%`.
    pub(crate) fn precedence(self) -> u8 {
        match self {
            Op::Mod => 1,
            Op::Add | Op::TruncSub => 2,
            Op::Mul | Op::FloorDiv => 3,
            Op::Pow => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Const(BigUint),
    Var(String),
    Bin(Op, Box<Term>, Box<Term>),
}

impl Term {
    pub fn num(v: u64) -> Term {
        Term::Const(BigUint::from(v))
    }

    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn bin(op: Op, l: Term, r: Term) -> Term {
        Term::Bin(op, Box::new(l), Box::new(r))
    }

    pub fn add(l: Term, r: Term) -> Term {
        Term::bin(Op::Add, l, r)
    }

    pub fn tsub(l: Term, r: Term) -> Term {
        Term::bin(Op::TruncSub, l, r)
    }

    pub fn mul(l: Term, r: Term) -> Term {
        Term::bin(Op::Mul, l, r)
    }

    pub fn div(l: Term, r: Term) -> Term {
        Term::bin(Op::FloorDiv, l, r)
    }

    pub fn pow(l: Term, r: Term) -> Term {
        Term::bin(Op::Pow, l, r)
    }

    pub fn modulo(l: Term, r: Term) -> Term {
        Term::bin(Op::Mod, l, r)
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Bin(_, l, r) => 1 + l.size() + r.size(),
            _ => 1,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Bin(_, l, r) => 1 + l.depth().max(r.depth()),
            _ => 1,
        }
    }

    /// Variable names in first-occurrence order.
    pub fn variables(&self) -> Vec<String> {
        fn walk(t: &Term, out: &mut Vec<String>) {
            match t {
                Term::Var(v) if !out.contains(v) => out.push(v.clone()),
                Term::Bin(_, l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                _ => {}
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}
