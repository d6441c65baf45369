use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::Term;
use crate::error::{Error, Result};
use crate::ZPoly;

/// Assemble `fl((N+ -. N-) / (D+ -. D-)) % b^n` where
/// `N± = b^(n^2+hn) A±(b^-n)` and `D± = b^(hn) B±(b^-n)`, each written as a
/// sum of natural monomials.
///
/// `a_*` and `b_*` must have nonnegative coefficients, `h` must be the degree
/// of `b_plus - b_minus`, and `a_plus - a_minus` must have degree below `h`.
pub fn build_extraction_term(
    a_plus: &ZPoly,
    a_minus: &ZPoly,
    b_plus: &ZPoly,
    b_minus: &ZPoly,
    h: usize,
    b: &BigInt,
) -> Result<Term> {
    let bad = |m: &str| Error::Spec(format!("cannot build extraction term: {m}"));
    if *b < BigInt::from(2) {
        return Err(bad("base must be at least 2"));
    }
    if [a_plus, a_minus, b_plus, b_minus].iter().any(|p| p.coeffs().iter().any(Signed::is_negative)) {
        return Err(bad("sign-split parts must have nonnegative coefficients"));
    }
    if (b_plus - b_minus).degree() != Some(h) || h == 0 {
        return Err(bad("h must be the (positive) degree of the denominator"));
    }
    let a = a_plus - a_minus;
    if a.is_zero() || a.degree() >= Some(h) {
        return Err(bad("numerator must be nonzero with degree below h"));
    }
    if b_plus.coeff(0) <= b_minus.coeff(0) {
        return Err(bad("denominator must be positive at zero"));
    }
    let base = Term::Const(b.magnitude().clone());
    let block = |p: &ZPoly, square: bool| -> Option<Term> {
        (0..=h)
            .filter(|&i| !p.coeff(i).is_zero())
            .map(|i| monomial(p.coeff(i).magnitude(), &base, square, h - i))
            .reduce(Term::add)
    };
    let diff = |plus: &ZPoly, minus: &ZPoly, square: bool| -> Term {
        let p = block(plus, square).unwrap_or_else(|| Term::num(0));
        match block(minus, square) {
            Some(m) => Term::tsub(p, m),
            None => p,
        }
    };
    let quotient = Term::div(diff(a_plus, a_minus, true), diff(b_plus, b_minus, false));
    Ok(Term::modulo(quotient, Term::pow(base, Term::var("n"))))
}

/// `coeff * b^(n^2 + k n)` when `square`, else `coeff * b^(k n)`, with unit
/// factors and zero exponents dropped.
fn monomial(coeff: &BigUint, base: &Term, square: bool, k: usize) -> Term {
    let n = || Term::var("n");
    let linear = match k {
        0 => None,
        1 => Some(n()),
        _ => Some(Term::mul(Term::num(k as u64), n())),
    };
    let exponent = if square {
        let sq = Term::pow(n(), Term::num(2));
        Some(match linear {
            Some(l) => Term::add(sq, l),
            None => sq,
        })
    } else {
        linear
    };
    let power = exponent.map(|e| Term::pow(base.clone(), e));
    match (coeff.is_one(), power) {
        (_, None) => Term::Const(coeff.clone()),
        (true, Some(p)) => p,
        (false, Some(p)) => Term::mul(Term::Const(coeff.clone()), p),
    }
}
