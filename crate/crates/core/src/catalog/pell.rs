use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::recurrence::{is_square, Recurrence};

/// Least positive solution of `X^2 - k Y^2 = 1`, read off the convergents of
/// the continued fraction of `sqrt(k)`.
pub fn pell_fundamental(k: u64) -> Result<(BigInt, BigInt)> {
    let kb = BigInt::from(k);
    if k < 2 || is_square(&kb) {
        return Err(Error::PellParameter(k));
    }
    let a0 = kb.sqrt();
    // sqrt(k) = [a0; a1, a2, ..] with (m, d, a) the standard recurrence
    let (mut m, mut d, mut a) = (BigInt::from(0), BigInt::one(), a0.clone());
    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut q_prev, mut q) = (BigInt::from(0), BigInt::one());
    loop {
        if &h * &h - &kb * &q * &q == BigInt::one() {
            return Ok((h, q));
        }
        m = &d * &a - m;
        d = (&kb - &m * &m) / d;
        a = (&a0 + &m) / &d;
        let h_next = &a * &h + h_prev;
        let q_next = &a * &q + q_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
}

/// Recurrences `s(n+2) = 2 x1 s(n+1) - s(n)` for the solutions `x(n)`
/// (from `1, x1`) and `y(n)` (from `0, y1`).
pub fn pell_recurrences(k: u64) -> Result<(Recurrence, Recurrence)> {
    let (x1, y1) = pell_fundamental(k)?;
    let coeffs = || vec![crate::Rational::from_integer(-2 * &x1), crate::Rational::one()];
    let x = Recurrence::new(coeffs(), vec![BigInt::one(), x1.clone()])?;
    let y = Recurrence::new(coeffs(), vec![BigInt::from(0), y1])?;
    Ok((x, y))
}
