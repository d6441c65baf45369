use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde_json::{json, Value};

use super::{parse, Op, Term};
use crate::error::{Error, Result};

/// Output encodings for terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermFormat {
    /// The parseable grammar of [`parse`].
    Text,
    Latex,
    /// Canonical JSON AST.
    Json,
}

impl FromStr for TermFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(TermFormat::Text),
            "latex" => Ok(TermFormat::Latex),
            "json" => Ok(TermFormat::Json),
            other => Err(Error::Spec(format!("unknown format `{other}`"))),
        }
    }
}

/// Precedence a node presents to its parent. Floored quotients are always
/// written `fl(..)` (or as a LaTeX floor bracket), so they bind like atoms.
fn binding(t: &Term) -> u8 {
    match t {
        Term::Bin(Op::FloorDiv, ..) => 5,
        Term::Bin(op, ..) => op.precedence(),
        _ => 5,
    }
}

fn needs_parens(op: Op, child: &Term, right: bool) -> bool {
    let p = binding(child);
    match op {
        // base must be atomic; exponent may itself be a power (right-assoc)
        Op::Pow => if right { p < 4 } else { p < 5 },
        _ => if right { p <= op.precedence() } else { p < op.precedence() },
    }
}

impl Term {
    pub fn render(&self, fmt: TermFormat) -> String {
        match fmt {
            TermFormat::Text => {
                let mut s = String::new();
                text(self, false, &mut s);
                s
            }
            TermFormat::Latex => {
                let mut s = String::new();
                latex(self, &mut s);
                s
            }
            TermFormat::Json => self.to_json().to_string(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Term::Const(c) => json!({ "const": c.to_string() }),
            Term::Var(v) => json!({ "var": v }),
            Term::Bin(op, l, r) => json!({ "op": op.name(), "args": [l.to_json(), r.to_json()] }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Term> {
        let bad = |m: &str| Error::TermEncoding(m.to_string());
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        if let Some(c) = obj.get("const") {
            let s = c.as_str().ok_or_else(|| bad("`const` must be a decimal string"))?;
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("`const` must be a natural number"));
            }
            return Ok(Term::Const(BigUint::from_str(s).expect("digits")));
        }
        if let Some(name) = obj.get("var") {
            let s = name.as_str().ok_or_else(|| bad("`var` must be a string"))?;
            return Ok(Term::var(s));
        }
        let op = obj
            .get("op")
            .and_then(Value::as_str)
            .and_then(Op::from_name)
            .ok_or_else(|| bad("missing or unknown `op`"))?;
        match obj.get("args").and_then(Value::as_array).map(Vec::as_slice) {
            Some([l, r]) => Ok(Term::bin(op, Term::from_json(l)?, Term::from_json(r)?)),
            _ => Err(bad("`args` must hold exactly two terms")),
        }
    }

    /// Parse the output of [`Term::render`] back, for any format.
    pub fn parse_as(src: &str, fmt: TermFormat) -> Result<Term> {
        match fmt {
            TermFormat::Text => parse(src),
            TermFormat::Json => {
                let v: Value = serde_json::from_str(src).map_err(|e| Error::TermEncoding(e.to_string()))?;
                Term::from_json(&v)
            }
            TermFormat::Latex => Err(Error::Spec("LaTeX output is not parseable".into())),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(TermFormat::Text))
    }
}

fn text(t: &Term, compact: bool, out: &mut String) {
    match t {
        Term::Const(c) => out.push_str(&c.to_string()),
        Term::Var(v) => out.push_str(v),
        Term::Bin(op, l, r) => {
            let child = |c: &Term, right: bool, compact: bool, out: &mut String| {
                if needs_parens(*op, c, right) {
                    out.push('(');
                    text(c, compact, out);
                    out.push(')');
                } else {
                    text(c, compact, out);
                }
            };
            match op {
                Op::FloorDiv => {
                    out.push_str("fl(");
                    child(l, false, compact, out);
                    out.push_str(if compact { "/" } else { " / " });
                    child(r, true, compact, out);
                    out.push(')');
                }
                Op::Pow => {
                    child(l, false, compact, out);
                    out.push('^');
                    child(r, true, true, out);
                }
                _ => {
                    let sym = match op {
                        Op::Add => "+",
                        Op::TruncSub => "-.",
                        Op::Mul => "*",
                        _ => "%",
                    };
                    child(l, false, compact, out);
                    if compact || *op == Op::Mul {
                        out.push_str(sym);
                    } else {
                        out.push(' ');
                        out.push_str(sym);
                        out.push(' ');
                    }
                    child(r, true, compact, out);
                }
            }
        }
    }
}

fn latex(t: &Term, out: &mut String) {
    let Term::Bin(op, l, r) = t else {
        match t {
            Term::Const(c) => out.push_str(&c.to_string()),
            Term::Var(v) => out.push_str(v),
            Term::Bin(..) => unreachable!(),
        }
        return;
    };
    let child = |c: &Term, right: bool, out: &mut String| {
        if needs_parens(*op, c, right) {
            out.push('(');
            latex(c, out);
            out.push(')');
        } else {
            latex(c, out);
        }
    };
    match op {
        Op::FloorDiv => {
            out.push_str("\\left\\lfloor \\frac{");
            latex(l, out);
            out.push_str("}{");
            latex(r, out);
            out.push_str("} \\right\\rfloor");
        }
        Op::Pow => {
            child(l, false, out);
            let mut exp = String::new();
            latex(r, &mut exp);
            if exp.chars().count() == 1 {
                out.push('^');
                out.push_str(&exp);
            } else {
                out.push_str("^{");
                out.push_str(&exp);
                out.push('}');
            }
        }
        Op::Mul => {
            child(l, false, out);
            let juxtapose = matches!(**l, Term::Const(_)) && matches!(**r, Term::Var(_));
            if !juxtapose {
                out.push_str(" \\cdot ");
            }
            child(r, true, out);
        }
        Op::Add | Op::TruncSub | Op::Mod => {
            child(l, false, out);
            out.push_str(match op {
                Op::Add => "+",
                Op::TruncSub => " \\dotdiv ",
                _ => " \\bmod ",
            });
            child(r, true, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIB: &str = "fl(3^(n^2+n) / (3^(2*n) -. (3^n + 1))) % 3^n";

    #[test]
    fn fibonacci_text_is_stable() {
        assert_eq!(parse(FIB).unwrap().render(TermFormat::Text), FIB);
    }

    #[test]
    fn fibonacci_latex() {
        assert_eq!(
            parse(FIB).unwrap().render(TermFormat::Latex),
            "\\left\\lfloor \\frac{3^{n^2+n}}{3^{2n} \\dotdiv (3^n+1)} \\right\\rfloor \\bmod 3^n"
        );
    }

    #[test]
    fn constant_text() {
        assert_eq!(Term::num(55).render(TermFormat::Text), "55");
    }

    #[test]
    fn json_shape() {
        let t = parse("n + 2").unwrap();
        assert_eq!(
            t.to_json(),
            json!({"op": "add", "args": [{"var": "n"}, {"const": "2"}]})
        );
        assert_eq!(Term::parse_as(&t.render(TermFormat::Json), TermFormat::Json).unwrap(), t);
    }

    #[test]
    fn json_rejects_bad_input() {
        assert!(Term::from_json(&json!({"const": "-1"})).is_err());
        assert!(Term::from_json(&json!({"op": "sub", "args": []})).is_err());
        assert!(Term::from_json(&json!({"op": "add", "args": [{"var": "n"}]})).is_err());
        assert!(Term::from_json(&json!(3)).is_err());
    }

    #[test]
    fn parenthesization_round_trips() {
        for src in [
            "(1 + 2) * 3",
            "1 -. (2 -. 3)",
            "(2^3)^4",
            "fl(n / 2) * 3",
            "fl(n / fl(3 / 2))",
            "n % (2 % 3)",
            "2^fl(n / 2)",
            "(n % 2) + 1",
        ] {
            let t = parse(src).unwrap();
            assert_eq!(parse(&t.render(TermFormat::Text)).unwrap(), t, "{src}");
        }
    }
}
