use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{poly_gcd, Field, Polynomial};
use crate::error::{Error, Result};

/// Reduced quotient `num / den` of two polynomials over a field.
///
/// Canonical form: `gcd(num, den) = 1` and the lowest nonzero coefficient
/// of `den` equals one. For a generating function that is the constant
/// term, so `den(0) = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction<T> {
    num: Polynomial<T>,
    den: Polynomial<T>,
}

impl<T: Field> RationalFunction<T> {
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let g = poly_gcd(&num, &den)?;
        let (num, _) = num.div_rem(&g).expect("gcd is nonzero");
        let (den, _) = den.div_rem(&g).expect("gcd is nonzero");
        let low = den.coeffs()[den.valuation().expect("nonzero")].clone();
        let inv = T::one() / low;
        Ok(RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_polynomial(p: Polynomial<T>) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn numerator(&self) -> &Polynomial<T> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<T> {
        &self.den
    }

    /// Whether this is the generating function of some sequence, i.e. it
    /// has no pole at the origin.
    pub fn is_power_series(&self) -> bool {
        !self.den.coeff(0).is_zero()
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &T) -> Option<T> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::new(num, &self.den * &rhs.den).expect("product of nonzero denominators")
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::new(self.num.pow(e), self.den.pow(e)).expect("power of nonzero denominator")
    }

    /// Taylor coefficients `[z^0] .. [z^n]` by power-series long division.
    pub fn series_coefficients(&self, n: usize) -> Result<Vec<T>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        let den = self.den.coeffs();
        let mut out: Vec<T> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut v = self.num.coeff(k);
            for (i, di) in den.iter().enumerate().skip(1).take(k) {
                v = v - di.clone() * out[k - i].clone();
            }
            out.push(v / d0.clone());
        }
        Ok(out)
    }
}

/// Scale a rational-coefficient fraction to an integer pair with no common
/// content and a positive lowest denominator coefficient.
pub fn clear_denominators(f: &RationalFunction<BigRational>) -> (Polynomial<BigInt>, Polynomial<BigInt>) {
    let all = f.numerator().coeffs().iter().chain(f.denominator().coeffs());
    let lcm = all.clone().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let content = all
        .map(|c| (c * &lcm).to_integer())
        .fold(BigInt::zero(), |acc, c| acc.gcd(&c));
    let low = f.denominator().coeffs()[f.denominator().valuation().expect("nonzero")].clone();
    let scale = if low.is_negative() { -content } else { content };
    let to_int = |p: &Polynomial<BigRational>| p.map(|c| (c * &lcm).to_integer() / &scale);
    (to_int(f.numerator()), to_int(f.denominator()))
}

impl<T: Field + Signed + fmt::Display> fmt::Display for RationalFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Polynomial<T>| {
            let multi = p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1;
            if multi {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{} / {}", wrap(&self.num), wrap(&self.den))
    }
}
