//! Named sequence families and the worked examples used as fixtures.

mod fixtures;
mod lucas;
mod pell;

pub use fixtures::{fixture, fixtures, Fixture};
pub use lucas::{lucas_closed_form, lucas_gf, lucas_u, lucas_v, LucasKind, LucasParams};
pub use pell::{pell_fundamental, pell_recurrences};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::algebra::{Polynomial, RationalFunction};
use crate::error::Result;
use crate::recurrence::Recurrence;
use crate::Rational;

/// The `r`-th Fibonacci convolution: generating function
/// `(z / (1 - z - z^2))^(r+1)`, order `2(r+1)`.
pub fn fibonacci_convolution(r: u32) -> Result<Recurrence> {
    let q = |v: i64| Rational::from_integer(v.into());
    let fib = RationalFunction::new(
        Polynomial::new(vec![q(0), q(1)]),
        Polynomial::new(vec![q(1), q(-1), q(-1)]),
    )?;
    Recurrence::from_generating_function(&fib.pow(r + 1))
}

/// `F(n) = 2^(1-n) sum_k 5^k C(n, 2k+1)`, with `F(0) = 0`.
pub fn fibonacci_binomial(n: u64) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    let n_big = BigInt::from(n);
    let mut sum = BigInt::zero();
    let mut five = BigInt::one();
    for k in 0..=(n - 1) / 2 {
        sum += &five * binomial(n_big.clone(), BigInt::from(2 * k + 1));
        five *= 5;
    }
    sum >> (n - 1)
}
