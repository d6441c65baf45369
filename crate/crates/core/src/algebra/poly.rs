use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense univariate polynomial in `z`; `coeffs[i]` is the coefficient of `z^i`.
///
/// Trailing zeros are never stored, so the zero polynomial is the empty
/// vector and its degree is `None` (below every integer degree).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficient-wise conversion into another ring.
    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// First `n` coefficients (the polynomial reduced mod `z^n`).
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }
}

impl<T: Field> Polynomial<T> {
    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading()?.clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return Some((Self::zero(), self.clone()));
        };
        let mut quot = vec![T::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd].clone() / lead.clone();
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * d.clone();
            }
            quot[k] = q;
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&(T::one() / l.clone())),
            None => Self::zero(),
        }
    }
}

/// Monic greatest common divisor by the Euclidean remainder sequence.
pub fn poly_gcd<T: Field>(p: &Polynomial<T>, q: &Polynomial<T>) -> Result<Polynomial<T>> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b).expect("nonzero divisor");
        a = b;
        b = r.monic();
    }
    Ok(a.monic())
}

/// Split an integer polynomial as `p = plus - minus` with both parts having
/// nonnegative coefficients and disjoint supports.
pub fn split_signs(p: &Polynomial<BigInt>) -> (Polynomial<BigInt>, Polynomial<BigInt>) {
    let plus = p.map(|c| if c.is_positive() { c.clone() } else { BigInt::zero() });
    let minus = p.map(|c| if c.is_negative() { -c } else { BigInt::zero() });
    (plus, minus)
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial::new(
            self.coeffs
                .iter()
                .map(|c| T::zero() - c.clone())
                .collect(),
        )
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<T: Scalar> $tr for Polynomial<T> {
            type Output = Polynomial<T>;
            fn $m(self, rhs: Self) -> Polynomial<T> {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<T: Scalar> Neg for Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        -&self
    }
}

impl<T: Scalar> Zero for Polynomial<T> {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Scalar> One for Polynomial<T> {
    fn one() -> Self {
        Polynomial::one()
    }
}

impl<T: fmt::Debug> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial{:?}", self.coeffs)
    }
}

/// Renders like `1 - 3z + z^2 + 2z^3`; non-integer coefficients are
/// parenthesized, e.g. `(1/2)z`.
impl<T: Scalar + Signed + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = c.abs();
            if i == 0 || !mag.is_one() {
                let s = mag.to_string();
                if s.contains('/') && i > 0 {
                    write!(f, "({s})")?;
                } else {
                    f.write_str(&s)?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("z")?,
                _ => write!(f, "z^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Ratio};

    fn q(v: &[i64]) -> Polynomial<BigRational> {
        Polynomial::new(v.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    fn z(v: &[i64]) -> Polynomial<BigInt> {
        Polynomial::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&q(&[1, -1, -1]) + &q(&[0, 1, 1]), q(&[1]));
        assert_eq!(&q(&[0, 1]) * &q(&[0, 1]), q(&[0, 0, 1]));
        assert_eq!(&q(&[1, -1, -1]) * &q(&[1]), q(&[1, -1, -1]));
        assert_eq!(&q(&[1, 2]) - &q(&[1, 2]), Polynomial::zero());
    }

    #[test]
    fn zero_degree_is_sentinel() {
        let zero = q(&[0, 0, 0]);
        assert!(zero.is_zero());
        assert_eq!(zero.degree(), None);
        assert!(zero.degree() < Some(0));
        assert_eq!(q(&[5]).degree(), Some(0));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&q(&[-1, 0, 1]), &q(&[-1, 1])).unwrap(), q(&[-1, 1]));
        assert_eq!(poly_gcd(&q(&[1, -1, -1]), &q(&[0, 1])).unwrap(), q(&[1]));
        let a = &q(&[0, 1]) * &q(&[1, -1]);
        let b = &q(&[0, 1]) * &q(&[1, 1]);
        assert_eq!(poly_gcd(&a, &b).unwrap(), q(&[0, 1]));
        assert_eq!(poly_gcd(&q(&[0, 0, 3]), &Polynomial::zero()).unwrap(), q(&[0, 0, 1]));
    }

    #[test]
    fn gcd_of_zeros_is_an_error() {
        let zero: Polynomial<BigRational> = Polynomial::zero();
        assert_eq!(poly_gcd(&zero, &zero), Err(Error::ZeroGcd));
    }

    #[test]
    fn div_rem_reconstructs() {
        let p = q(&[3, 0, -2, 7, 1]);
        let d = q(&[1, -1, 2]);
        let (quo, rem) = p.div_rem(&d).unwrap();
        assert!(rem.degree() < d.degree());
        assert_eq!(&(&quo * &d) + &rem, p);
        assert!(p.div_rem(&Polynomial::zero()).is_none());
    }

    #[test]
    fn split_sign_examples() {
        assert_eq!(split_signs(&z(&[1, -1, -1])), (z(&[1]), z(&[0, 1, 1])));
        assert_eq!(split_signs(&z(&[1])), (z(&[1]), Polynomial::zero()));
        assert_eq!(split_signs(&z(&[0, -2, 3])), (z(&[0, 0, 3]), z(&[0, 2])));
    }

    #[test]
    fn display_forms() {
        assert_eq!(z(&[1, -3, 1, 2]).to_string(), "1 - 3z + z^2 + 2z^3");
        assert_eq!(z(&[0, 1]).to_string(), "z");
        assert_eq!(z(&[0, -1]).to_string(), "-z");
        let half = Polynomial::new(vec![Ratio::new(1i64, 2), Ratio::new(-1, 2)]);
        assert_eq!(half.to_string(), "1/2 - (1/2)z");
    }

    #[test]
    fn small_ratio_instantiation() {
        let p: Polynomial<Ratio<i64>> = Polynomial::new(vec![Ratio::from(1), Ratio::from(-1)]);
        assert_eq!(p.pow(3).coeffs().len(), 4);
        assert_eq!(p.eval(&Ratio::new(1, 2)), Ratio::new(1, 2));
    }
}
