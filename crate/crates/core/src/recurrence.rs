//! C-recursive sequences `s(n+d) + a1 s(n+d-1) + ... + ad s(n) = 0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::{QPoly, QRatFunc, Rational};

/// Recurrence of order `d` with rational coefficients `[a1, .., ad]`
/// (`ad != 0`) and integer initial terms `[s(0), .., s(d-1)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    coeffs: Vec<Rational>,
    init: Vec<BigInt>,
}

/// Exact prefix `s(0), .., s(N)` of a sequence together with its recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceWindow {
    values: Vec<BigInt>,
    source: Recurrence,
}

impl SequenceWindow {
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.values.get(n)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn source(&self) -> &Recurrence {
        &self.source
    }
}

impl Recurrence {
    pub fn new(coeffs: Vec<Rational>, init: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidRecurrence("order must be at least 1".into()));
        }
        if coeffs.last().is_some_and(|a| a.is_zero()) {
            return Err(Error::InvalidRecurrence("last coefficient must be nonzero".into()));
        }
        if coeffs.len() != init.len() {
            return Err(Error::InvalidRecurrence(format!(
                "order {} needs {} initial terms, got {}",
                coeffs.len(),
                coeffs.len(),
                init.len()
            )));
        }
        Ok(Recurrence { coeffs, init })
    }

    /// Convenience constructor for integer coefficients.
    pub fn from_ints(coeffs: &[i64], init: &[i64]) -> Result<Self> {
        Self::new(
            coeffs.iter().map(|&a| Rational::from_integer(a.into())).collect(),
            init.iter().map(|&s| BigInt::from(s)).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn init(&self) -> &[BigInt] {
        &self.init
    }

    /// A C-recursive sequence vanishes iff its first `d` terms do.
    pub fn is_zero_sequence(&self) -> bool {
        self.init.iter().all(Zero::is_zero)
    }

    /// Exact values `s(0), .., s(n)` by direct iteration.
    pub fn eval_oracle(&self, n: usize) -> Result<SequenceWindow> {
        let d = self.order();
        let mut values: Vec<BigInt> = self.init.iter().take(n + 1).cloned().collect();
        let integral = self.coeffs.iter().all(|a| a.is_integer());
        let int_coeffs: Vec<BigInt> = self.coeffs.iter().map(|a| a.to_integer()).collect();
        for k in d..=n {
            let next = if integral {
                -int_coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, a)| a * &values[k - 1 - i])
                    .sum::<BigInt>()
            } else {
                let v: Rational = -self
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, a)| a * Rational::from_integer(values[k - 1 - i].clone()))
                    .sum::<Rational>();
                if !v.is_integer() {
                    return Err(Error::NonIntegerTerm { index: k, value: v.to_string() });
                }
                v.to_integer()
            };
            values.push(next);
        }
        Ok(SequenceWindow { values, source: self.clone() })
    }

    /// `B(z) = 1 + a1 z + .. + ad z^d`.
    pub fn characteristic_denominator(&self) -> QPoly {
        let mut c = vec![Rational::one()];
        c.extend(self.coeffs.iter().cloned());
        Polynomial::new(c)
    }

    /// `GF_s = A / B` in lowest terms, where `A` is `GF_s * B` truncated
    /// below degree `d`.
    pub fn generating_function(&self) -> QRatFunc {
        let den = self.characteristic_denominator();
        let s: QPoly = Polynomial::new(
            self.init.iter().map(|v| Rational::from_integer(v.clone())).collect(),
        );
        let num = (&s * &den).truncate(self.order());
        RationalFunction::new(num, den).expect("B(0) = 1")
    }

    /// Inverse of [`Recurrence::generating_function`]: reads the recurrence
    /// off a proper generating function with `den(0) != 0`.
    pub fn from_generating_function(f: &QRatFunc) -> Result<Self> {
        if !f.is_power_series() {
            return Err(Error::PoleAtOrigin);
        }
        if f.numerator().is_zero() {
            return Err(Error::AllZero);
        }
        let d = f.denominator().degree().unwrap_or(0);
        if f.numerator().degree() >= Some(d) {
            return Err(Error::InvalidRecurrence(
                "generating function is not a proper fraction".into(),
            ));
        }
        let den = f.denominator();
        let d0 = den.coeff(0);
        let coeffs = (1..=d).map(|i| den.coeff(i) / &d0).collect();
        let init = f
            .series_coefficients(d - 1)?
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                if v.is_integer() {
                    Ok(v.to_integer())
                } else {
                    Err(Error::NonIntegerTerm { index: i, value: v.to_string() })
                }
            })
            .collect::<Result<_>>()?;
        Recurrence::new(coeffs, init)
    }

    fn abs_coeff_sum(&self) -> Rational {
        self.coeffs.iter().map(|a| a.abs()).sum()
    }

    /// `sum_i |a_i| / b^i`.
    pub fn weighted_coeff_sum(&self, b: &BigInt) -> Rational {
        let mut pw = BigInt::one();
        let mut acc = Rational::zero();
        for a in &self.coeffs {
            pw *= b;
            acc += a.abs() / Rational::from_integer(pw.clone());
        }
        acc
    }

    /// Smallest `c >= 1` with `d * sum |a_i| < c` and `|s(k)| < c^(k+1)` for
    /// `k < d`. By induction `|s(n)| < c^(n+1)` for every `n`.
    pub fn growth_constant(&self) -> BigInt {
        let bound = Rational::from_integer(self.order().into()) * self.abs_coeff_sum();
        let mut c = bound.floor().to_integer() + 1;
        if c < BigInt::one() {
            c = BigInt::one();
        }
        while !init_below(&self.init, &c, true) {
            c += 1;
        }
        c
    }

    /// Smallest `c >= 1` with `sum |a_i| c^-i <= 1` and `|s(k)| <= c^(k+1)`
    /// for `k < d`, such that `s(n) + c^(n+1)` is not identically zero.
    ///
    /// The weighted condition propagates `|s(n)| <= c^(n+1)` to every `n`,
    /// so `t(n) = s(n) + c^(n+1)` is a sequence of natural numbers.
    pub fn shift_constant(&self) -> BigInt {
        let d = self.order();
        let mut c = BigInt::one();
        loop {
            if self.weighted_coeff_sum(&c) <= Rational::one() && init_below(&self.init, &c, false) {
                let window = self.eval_oracle(d).map(|w| w.values).unwrap_or_default();
                let mut pw = c.clone();
                let vanishes = window.iter().all(|s| {
                    let z = (s + &pw).is_zero();
                    pw *= &c;
                    z
                });
                if !vanishes {
                    return c;
                }
            }
            c += 1;
        }
    }

    /// Sufficient test that no term is negative.
    ///
    /// Accepts when every `-a_i` and every initial term is nonnegative, when
    /// the reduced generating function is `A / C^e` with `A` and `1 - C`
    /// having nonnegative coefficients, or when `s(0..probe)` is nonnegative
    /// and its last `d` entries satisfy a dominance `s(j+1) >= lambda s(j)`
    /// that the recurrence provably preserves.
    pub fn is_provably_nonnegative(&self, probe: usize) -> bool {
        let syntactic = self.coeffs.iter().all(|a| !a.is_positive())
            && self.init.iter().all(|s| !s.is_negative());
        if syntactic || self.nonnegative_generating_function() {
            return true;
        }
        let d = self.order();
        let len = probe.max(d);
        let Ok(window) = self.eval_oracle(len - 1) else {
            return false;
        };
        let values = window.values();
        if values.iter().any(Signed::is_negative) {
            return false;
        }
        let tail = &values[len - d..];
        dominance_ratios(self, tail).into_iter().any(|lambda| {
            preserves_dominance(self, &lambda) && window_dominates(tail, &lambda)
        })
    }

    fn nonnegative_generating_function(&self) -> bool {
        let gf = self.generating_function();
        if gf.numerator().coeffs().iter().any(Signed::is_negative) {
            return false;
        }
        let den = gf.denominator();
        let d = den.degree().unwrap_or(0);
        (1..=d.max(1)).filter(|e| d.is_multiple_of(*e)).any(|e| {
            series_root(den, e, d / e).is_some_and(|c| {
                c.coeffs().iter().skip(1).all(|x| !x.is_positive()) && &c.pow(e as u32) == den
            })
        })
    }

    /// Parameters of an order-2 Lucas-type recurrence when integral: `(P, Q)`
    /// for `s(n+2) = P s(n+1) - Q s(n)`.
    pub fn as_lucas_pair(&self) -> Option<(i64, i64)> {
        if self.order() != 2 || !self.coeffs.iter().all(|a| a.is_integer()) {
            return None;
        }
        let p = (-self.coeffs[0].to_integer()).to_i64()?;
        let q = self.coeffs[1].to_integer().to_i64()?;
        Some((p, q))
    }
}

/// Power-series `e`-th root of `p` with constant term 1, truncated to degree
/// `deg`. The coefficient of `z^k` in `C^e` is `e c_k` plus terms in lower
/// coefficients, which fixes `c_k` one at a time.
fn series_root(p: &QPoly, e: usize, deg: usize) -> Option<QPoly> {
    if p.coeff(0) != Rational::one() {
        return None;
    }
    let mut c = vec![Rational::one()];
    let ef = Rational::from_integer(e.into());
    for k in 1..=deg {
        let partial = Polynomial::new(c.clone()).pow(e as u32);
        c.push((p.coeff(k) - partial.coeff(k)) / &ef);
    }
    Some(Polynomial::new(c))
}

fn init_below(init: &[BigInt], c: &BigInt, strict: bool) -> bool {
    let mut pw = c.clone();
    init.iter().all(|s| {
        let ok = if strict { s.abs() < pw } else { s.abs() <= pw };
        pw *= c;
        ok
    })
}

/// Candidate dominance ratios: 0, 1, the small integers up to `-a1`, and the
/// smallest ratio actually present in the window.
fn dominance_ratios(rec: &Recurrence, tail: &[BigInt]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(), Rational::one()];
    let beta1 = -rec.coeffs[0].clone();
    let top = beta1.floor().to_integer().to_u32().unwrap_or(0).min(64);
    out.extend((2..=top).map(|k| Rational::from_integer(k.into())));
    let observed = tail
        .windows(2)
        .filter(|w| w[0].is_positive())
        .map(|w| Rational::new(w[1].clone(), w[0].clone()))
        .min();
    out.extend(observed);
    out
}

/// With `x_1 = s(k+d-1)` and `x_i <= x_1 lambda^(1-i)`, the next term is at
/// least `x_1 * (b1 - lambda + sum_{i>=2, b_i<0} b_i lambda^(1-i))` where
/// `b_i = -a_i`; dominance is preserved when that factor is nonnegative.
fn preserves_dominance(rec: &Recurrence, lambda: &Rational) -> bool {
    let beta: Vec<Rational> = rec.coeffs.iter().map(|a| -a.clone()).collect();
    let needs_positive = beta.iter().skip(1).any(Signed::is_negative);
    if lambda.is_negative() || (needs_positive && lambda.is_zero()) {
        return false;
    }
    let mut factor = &beta[0] - lambda;
    let mut inv_pow = Rational::one();
    for b in beta.iter().skip(1) {
        if needs_positive {
            inv_pow /= lambda;
        }
        if b.is_negative() {
            factor += b * &inv_pow;
        }
    }
    !factor.is_negative()
}

fn window_dominates(tail: &[BigInt], lambda: &Rational) -> bool {
    tail.windows(2).all(|w| {
        Rational::from_integer(w[1].clone()) >= lambda * Rational::from_integer(w[0].clone())
    })
}

/// `GF_t = GF_s + c / (1 - c z)`, the generating function of
/// `t(n) = s(n) + c^(n+1)`.
pub fn gf_shift(f: &QRatFunc, c: &BigInt) -> QRatFunc {
    if c.is_zero() {
        return f.clone();
    }
    let cq = Rational::from_integer(c.clone());
    let geometric = RationalFunction::new(
        Polynomial::constant(cq.clone()),
        Polynomial::new(vec![Rational::one(), -cq]),
    )
    .expect("1 - cz is nonzero");
    f.add(&geometric)
}

/// `true` when `n` is a perfect square; used by the Pell constructors.
pub(crate) fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Wire format: `{"order": d, "coeffs": ["-1", "1/2", ..], "init": ["0", ..]}`
/// with coefficients `a1..ad` as rational strings and decimal initial terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceSpec {
    pub order: usize,
    pub coeffs: Vec<String>,
    pub init: Vec<String>,
}

impl RecurrenceSpec {
    pub fn to_recurrence(&self) -> Result<Recurrence> {
        let bad = |m: String| Error::InvalidRecurrence(m);
        if self.coeffs.len() != self.order {
            return Err(bad(format!("order {} but {} coefficients", self.order, self.coeffs.len())));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| parse_rational(c).ok_or_else(|| bad(format!("bad coefficient `{c}`"))))
            .collect::<Result<_>>()?;
        let init = self
            .init
            .iter()
            .map(|v| v.trim().parse::<BigInt>().map_err(|_| bad(format!("bad initial term `{v}`"))))
            .collect::<Result<_>>()?;
        Recurrence::new(coeffs, init)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            (!q.is_zero()).then(|| Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

impl Recurrence {
    pub fn to_spec(&self) -> RecurrenceSpec {
        RecurrenceSpec {
            order: self.order(),
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
            init: self.init.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn to_spec_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_spec()).expect("plain strings")
    }

    /// Parse the wire format from JSON text.
    pub fn from_spec_str(src: &str) -> Result<Recurrence> {
        let spec: RecurrenceSpec = serde_json::from_str(src)
            .map_err(|e| Error::InvalidRecurrence(format!("malformed spec: {e}")))?;
        spec.to_recurrence()
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn qpoly(v: &[i64]) -> QPoly {
        Polynomial::new(v.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    fn rf(num: &[i64], den: &[i64]) -> QRatFunc {
        RationalFunction::new(qpoly(num), qpoly(den)).unwrap()
    }

    fn fib() -> Recurrence {
        Recurrence::from_ints(&[-1, -1], &[0, 1]).unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(fib().eval_oracle(10).unwrap().values(), ints(&[0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]));
        let twos = Recurrence::from_ints(&[-2, 1], &[2, 2]).unwrap();
        assert_eq!(twos.eval_oracle(4).unwrap().values(), ints(&[2, 2, 2, 2, 2]));
        let trib = Recurrence::from_ints(&[-1, -1, -1], &[0, 0, 1]).unwrap();
        assert_eq!(trib.eval_oracle(7).unwrap().values(), ints(&[0, 0, 1, 1, 2, 4, 7, 13]));
        assert_eq!(fib().eval_oracle(0).unwrap().values(), ints(&[0]));
    }

    #[test]
    fn non_integer_terms_are_errors() {
        let half = Recurrence::new(vec![Rational::new((-1).into(), 2.into())], ints(&[1])).unwrap();
        assert_eq!(
            half.eval_oracle(3).unwrap_err(),
            Error::NonIntegerTerm { index: 1, value: "1/2".into() }
        );
        // s(n+1) = s(n)/2 starting at 4 stays integral for two steps
        let ok = Recurrence::new(vec![Rational::new((-1).into(), 2.into())], ints(&[4])).unwrap();
        assert_eq!(ok.eval_oracle(2).unwrap().values(), ints(&[4, 2, 1]));
    }

    #[test]
    fn invalid_shapes() {
        assert!(Recurrence::from_ints(&[], &[]).is_err());
        assert!(Recurrence::from_ints(&[1, 0], &[1, 1]).is_err());
        assert!(Recurrence::from_ints(&[1], &[1, 1]).is_err());
    }

    #[test]
    fn generating_function_examples() {
        assert_eq!(fib().generating_function(), rf(&[0, 1], &[1, -1, -1]));
        let padovan = Recurrence::from_ints(&[0, -1, -1], &[1, 0, 0]).unwrap();
        assert_eq!(padovan.generating_function(), rf(&[1, 0, -1], &[1, 0, -1, -1]));
        let narayana = Recurrence::from_ints(&[-1, 0, -1], &[1, 1, 1]).unwrap();
        assert_eq!(narayana.generating_function(), rf(&[1], &[1, -1, 0, -1]));
    }

    #[test]
    fn generating_function_reduces() {
        // all-twos: (2 - 2z) / (1 - 2z + z^2) = 2 / (1 - z)
        let twos = Recurrence::from_ints(&[-2, 1], &[2, 2]).unwrap();
        assert_eq!(twos.generating_function(), rf(&[2], &[1, -1]));
        let back = Recurrence::from_generating_function(&twos.generating_function()).unwrap();
        assert_eq!(back, Recurrence::from_ints(&[-1], &[2]).unwrap());
    }

    #[test]
    fn shift_examples() {
        let f = fib().generating_function();
        assert_eq!(gf_shift(&f, &BigInt::zero()), f);
        let u23 = Recurrence::from_ints(&[-2, 3], &[0, 1]).unwrap();
        assert_eq!(
            gf_shift(&u23.generating_function(), &BigInt::from(3)),
            rf(&[3, -5, 6], &[1, -5, 9, -9])
        );
        let v12 = Recurrence::from_ints(&[-1, 2], &[2, 1]).unwrap();
        assert_eq!(
            gf_shift(&v12.generating_function(), &BigInt::from(2)),
            rf(&[4, -7, 6], &[1, -3, 4, -4])
        );
        assert_eq!(gf_shift(&f, &BigInt::from(2)), rf(&[2, -1, -4], &[1, -3, 1, 2]));
    }

    #[test]
    fn growth_constant_examples() {
        assert_eq!(fib().growth_constant(), BigInt::from(5));
        assert_eq!(Recurrence::from_ints(&[-2, 1], &[2, 2]).unwrap().growth_constant(), BigInt::from(7));
        assert_eq!(Recurrence::from_ints(&[-2, 3], &[0, 1]).unwrap().growth_constant(), BigInt::from(11));
    }

    #[test]
    fn shift_constant_examples() {
        assert_eq!(Recurrence::from_ints(&[-2, 3], &[0, 1]).unwrap().shift_constant(), BigInt::from(3));
        assert_eq!(Recurrence::from_ints(&[-1, 2], &[2, 1]).unwrap().shift_constant(), BigInt::from(2));
        // s(n) = -2^(n+1) would make t vanish at c = 2
        let neg = Recurrence::from_ints(&[-2], &[-2]).unwrap();
        assert_eq!(neg.shift_constant(), BigInt::from(3));
    }

    #[test]
    fn nonnegativity_examples() {
        assert!(fib().is_provably_nonnegative(0));
        assert!(!Recurrence::from_ints(&[-2, 3], &[0, 1]).unwrap().is_provably_nonnegative(32));
        let mersenne = Recurrence::from_ints(&[-3, 2], &[0, 1]).unwrap();
        assert!(mersenne.is_provably_nonnegative(8));
        assert!(Recurrence::from_ints(&[-2, 1], &[2, 2]).unwrap().is_provably_nonnegative(8));
        // (z / (1 - z - z^2))^2: mixed signs, but a square of 1 - z - z^2
        let conv = Recurrence::from_ints(&[-2, -1, 2, 1], &[0, 0, 1, 2]).unwrap();
        assert!(conv.is_provably_nonnegative(0));
        // 1, 1, 0, -1, -1, 0, ...
        let periodic = Recurrence::from_ints(&[-1, 1], &[1, 1]).unwrap();
        assert!(!periodic.is_provably_nonnegative(16));
        // 5, 1, then 1 - 5 < 0: the window catches it
        let dips = Recurrence::from_ints(&[-1, 1], &[5, 1]).unwrap();
        assert!(!dips.is_provably_nonnegative(2));
    }

    #[test]
    fn square_helper() {
        assert!(is_square(&BigInt::from(49)));
        assert!(!is_square(&BigInt::from(7)));
    }
}
