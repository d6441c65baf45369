//! Exact polynomial and rational-function arithmetic.
//!
//! Everything here is generic over the coefficient type. The synthesis
//! pipeline instantiates it with arbitrary-precision rationals and integers
//! (see the aliases at the crate root); small machine-word ratios are handy
//! in tests.

mod poly;
mod ratfunc;

pub use poly::{poly_gcd, split_signs, Polynomial};
pub use ratfunc::{clear_denominators, RationalFunction};

use std::fmt::Debug;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Num;

/// Coefficient ring: exact, cloneable, comparable.
pub trait Scalar: Clone + PartialEq + Debug + Num {}

impl<T: Clone + PartialEq + Debug + Num> Scalar for T {}

/// A [`Scalar`] with exact division, as needed by Euclidean gcd and
/// power-series division.
pub trait Field: Scalar {}

impl<T: Clone + Integer + Debug> Field for Ratio<T> {}
