use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{Op, Term};
use crate::error::{Error, Result};

/// Default cap on the size of any intermediate value: 2^26 bits (8 MiB).
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 26;

/// Values for the variables of a term.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<String, BigUint>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assignment binding only `n`.
    pub fn n(v: u64) -> Self {
        let mut a = Self::new();
        a.set("n", BigUint::from(v));
        a
    }

    pub fn set(&mut self, name: &str, v: BigUint) -> &mut Self {
        self.0.insert(name.to_string(), v);
        self
    }

    pub fn get(&self, name: &str) -> Option<&BigUint> {
        self.0.get(name)
    }
}

/// Result of evaluating a term, with the largest intermediate bit length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: BigUint,
    pub peak_bits: u64,
}

impl Term {
    pub fn evaluate(&self, env: &Assignment) -> Result<BigUint> {
        self.evaluate_with_budget(env, DEFAULT_BIT_BUDGET).map(|e| e.value)
    }

    pub fn evaluate_with_budget(&self, env: &Assignment, budget: u64) -> Result<Evaluation> {
        let mut peak = 0;
        let value = eval(self, env, budget, &mut peak)?;
        Ok(Evaluation { value, peak_bits: peak })
    }
}

fn eval(t: &Term, env: &Assignment, budget: u64, peak: &mut u64) -> Result<BigUint> {
    let v = match t {
        Term::Const(c) => c.clone(),
        Term::Var(name) => env
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnboundVariable(name.clone()))?,
        Term::Bin(op, l, r) => {
            let x = eval(l, env, budget, peak)?;
            let y = eval(r, env, budget, peak)?;
            apply(*op, x, y, budget)?
        }
    };
    *peak = (*peak).max(v.bits());
    Ok(v)
}

fn floor_div(x: &BigUint, y: &BigUint) -> BigUint {
    if y.is_zero() {
        BigUint::zero()
    } else {
        x / y
    }
}

fn apply(op: Op, x: BigUint, y: BigUint, budget: u64) -> Result<BigUint> {
    Ok(match op {
        Op::Add => x + y,
        Op::TruncSub => {
            if x > y {
                x - y
            } else {
                BigUint::zero()
            }
        }
        Op::Mul => {
            let needed = (x.bits() + y.bits()).saturating_sub(1);
            if needed > budget && !x.is_zero() && !y.is_zero() {
                return Err(Error::BitBudget { needed, budget });
            }
            x * y
        }
        Op::FloorDiv => floor_div(&x, &y),
        Op::Mod => {
            // x -. y * floor(x / y); gives x when y = 0
            if y.is_zero() {
                x
            } else {
                x.mod_floor(&y)
            }
        }
        Op::Pow => {
            if y.is_zero() || x.is_one() {
                return Ok(BigUint::one());
            }
            if x.is_zero() {
                return Ok(BigUint::zero());
            }
            // x >= 2 and y >= 1: the result has at least (bits(x)-1)*y + 1 bits
            let lower = y
                .to_u64()
                .and_then(|e| (x.bits() - 1).checked_mul(e))
                .map(|b| b + 1)
                .unwrap_or(u64::MAX);
            let e = y.to_u32().filter(|_| lower <= budget);
            match e {
                Some(e) => x.pow(e),
                None => return Err(Error::BitBudget { needed: lower, budget }),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse;

    fn ev(src: &str, n: u64) -> BigUint {
        parse(src).unwrap().evaluate(&Assignment::n(n)).unwrap()
    }

    #[test]
    fn degenerate_conventions() {
        assert_eq!(ev("0^0", 0), BigUint::one());
        assert_eq!(ev("fl(5 / 0)", 0), BigUint::zero());
        assert_eq!(ev("7 % 0", 0), BigUint::from(7u8));
        assert_eq!(ev("9 % 1", 0), BigUint::zero());
        assert_eq!(ev("3 -. 5", 0), BigUint::zero());
        assert_eq!(ev("0^3", 0), BigUint::zero());
        assert_eq!(ev("1^1000000000000", 0), BigUint::one());
    }

    #[test]
    fn fibonacci_at_zero_uses_conventions() {
        let t = "fl(3^(n^2+n) / (3^(2*n) -. (3^n + 1))) % 3^n";
        assert_eq!(ev(t, 0), BigUint::zero());
        assert_eq!(ev(t, 10), BigUint::from(55u8));
    }

    #[test]
    fn unbound_variable() {
        let t = parse("n + m").unwrap();
        assert_eq!(t.evaluate(&Assignment::n(1)), Err(Error::UnboundVariable("m".into())));
    }

    #[test]
    fn budget_guard() {
        let t = parse("2^(10^9)").unwrap();
        assert!(matches!(t.evaluate(&Assignment::new()), Err(Error::BitBudget { .. })));
        let t = parse("2^100").unwrap();
        assert!(t.evaluate_with_budget(&Assignment::new(), 100).is_err());
        assert_eq!(t.evaluate_with_budget(&Assignment::new(), 101).unwrap().peak_bits, 101);
    }

    #[test]
    fn mod_matches_definition() {
        for x in 0u64..30 {
            for y in 0u64..8 {
                let got = ev(&format!("{x} % {y}"), 0);
                let want = if y == 0 { x } else { x - y * (x / y) };
                assert_eq!(got, BigUint::from(want), "{x} mod {y}");
            }
        }
    }
}
