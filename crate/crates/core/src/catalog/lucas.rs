use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::recurrence::Recurrence;
use crate::{QRatFunc, Rational};

/// `s(n+2) = P s(n+1) - Q s(n)` with `4Q` different from `P^2` and `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LucasParams {
    p: i64,
    q: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LucasKind {
    /// Starts `0, 1`.
    U,
    /// Starts `2, P`.
    V,
}

impl LucasParams {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        let four_q = 4 * i128::from(q);
        if q == 0 || four_q == i128::from(p) * i128::from(p) {
            return Err(Error::LucasParams { p, q });
        }
        Ok(LucasParams { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn recurrence(&self, kind: LucasKind) -> Recurrence {
        let init = match kind {
            LucasKind::U => [0, 1],
            LucasKind::V => [2, self.p],
        };
        Recurrence::from_ints(&[-self.p, self.q], &init).expect("Q != 0")
    }
}

pub fn lucas_u(p: LucasParams) -> Recurrence {
    p.recurrence(LucasKind::U)
}

pub fn lucas_v(p: LucasParams) -> Recurrence {
    p.recurrence(LucasKind::V)
}

/// `z / (1 - Pz + Qz^2)` for `U`, `(2 - Pz) / (1 - Pz + Qz^2)` for `V`.
pub fn lucas_gf(p: LucasParams, kind: LucasKind) -> QRatFunc {
    let q = |v: i64| Rational::from_integer(v.into());
    let num = match kind {
        LucasKind::U => vec![q(0), q(1)],
        LucasKind::V => vec![q(2), q(-p.p)],
    };
    RationalFunction::new(Polynomial::new(num), Polynomial::new(vec![q(1), q(-p.p), q(p.q)]))
        .expect("nonzero denominator")
}

/// `x + y*g` in `Z[g]` with `g^2 = disc`.
#[derive(Clone)]
struct Quadratic {
    x: BigInt,
    y: BigInt,
}

impl Quadratic {
    fn mul(&self, o: &Quadratic, disc: &BigInt) -> Quadratic {
        Quadratic {
            x: &self.x * &o.x + &self.y * &o.y * disc,
            y: &self.x * &o.y + &self.y * &o.x,
        }
    }
}

/// `U = (alpha^n - beta^n) / (alpha - beta)` and `V = alpha^n + beta^n`
/// with `alpha, beta = (P +- g) / 2`, evaluated exactly in `Z[g]`:
/// `(P + g)^n = x + y g` gives `U = 2y / 2^n` and `V = 2x / 2^n`.
pub fn lucas_closed_form(p: LucasParams, kind: LucasKind, n: u32) -> BigInt {
    let disc = BigInt::from(p.p) * p.p - BigInt::from(4) * p.q;
    let mut acc = Quadratic { x: BigInt::one(), y: BigInt::zero() };
    let mut base = Quadratic { x: BigInt::from(p.p), y: BigInt::one() };
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base, &disc);
        }
        base = base.mul(&base, &disc);
        e >>= 1;
    }
    let twice: BigInt = match kind {
        LucasKind::U => acc.y * 2u32,
        LucasKind::V => acc.x * 2u32,
    };
    let denom = BigInt::one() << n;
    let (value, rem) = twice.div_rem(&denom);
    debug_assert!(rem.is_zero(), "Lucas values are integers");
    value
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(p: i64, q: i64) -> LucasParams {
        LucasParams::new(p, q).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn invalid_parameters() {
        assert_eq!(LucasParams::new(1, -1), Ok(LucasParams { p: 1, q: -1 }));
        assert!(LucasParams::new(2, 1).is_err());
        assert!(LucasParams::new(2, 0).is_err());
        assert!(LucasParams::new(4, 4).is_err());
    }

    #[test]
    fn families() {
        let fib = Recurrence::from_ints(&[-1, -1], &[0, 1]).unwrap();
        assert_eq!(lucas_u(lp(1, -1)), fib);
        assert_eq!(lucas_v(lp(1, -1)).eval_oracle(4).unwrap().values(), &ints(&[2, 1, 3, 4, 7])[..]);
        assert_eq!(lucas_u(lp(3, 2)).eval_oracle(5).unwrap().values(), &ints(&[0, 1, 3, 7, 15, 31])[..]);
    }

    #[test]
    fn generating_functions() {
        assert_eq!(lucas_gf(lp(1, -1), LucasKind::U).to_string(), "z / (1 - z - z^2)");
        assert_eq!(lucas_gf(lp(2, 3), LucasKind::U).to_string(), "z / (1 - 2z + 3z^2)");
        assert_eq!(lucas_gf(lp(3, 2), LucasKind::V).to_string(), "(2 - 3z) / (1 - 3z + 2z^2)");
        for (p, q) in [(1, -1), (2, -1), (3, 2), (2, 3), (1, 2)] {
            for kind in [LucasKind::U, LucasKind::V] {
                let lp = lp(p, q);
                assert_eq!(lucas_gf(lp, kind), lp.recurrence(kind).generating_function());
            }
        }
    }

    #[test]
    fn closed_form() {
        assert_eq!(lucas_closed_form(lp(1, -1), LucasKind::U, 10), BigInt::from(55));
        assert_eq!(lucas_closed_form(lp(1, -1), LucasKind::V, 0), BigInt::from(2));
        assert_eq!(lucas_closed_form(lp(2, -1), LucasKind::U, 5), BigInt::from(29));
        assert_eq!(lucas_closed_form(lp(2, 3), LucasKind::U, 3), BigInt::from(1));
    }
}
