//! Exact closed-form arithmetic terms for C-recursive integer sequences.
//!
//! Given a linear recurrence with constant rational coefficients and integer
//! initial terms, [`synthesis::synthesize`] builds a term `E(n)` over the
//! operations `+`, truncated `-`, `*`, floor division, `^` and `mod`, plus a
//! shift constant `c`, such that `s(n) = E(n) - c^(n+1)` for every `n >= 1`.
//! The term reads `s(n)` off as a digit block of the generating function
//! evaluated at `b^-n`.
//!
//! The algebra layer is generic over the coefficient ring; the aliases below
//! fix the arbitrary-precision instantiation used by the pipeline.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod recurrence;
pub mod synthesis;
pub mod term;
pub mod verify;

pub use num_bigint::{BigInt, BigUint};

pub use error::{Error, Result};
pub use catalog::{fixture, fixtures, Fixture};
pub use recurrence::{gf_shift, Recurrence, RecurrenceSpec, SequenceWindow};
pub use synthesis::{synthesize, BoundsCertificate, SynthOptions, SynthesisResult};
pub use verify::{verify_catalog, verify_fixture, verify_term, VerificationReport};
pub use term::{Term, TermFormat};

/// Exact rational number.
pub type Rational = num_rational::BigRational;
/// Polynomial with rational coefficients.
pub type QPoly = algebra::Polynomial<Rational>;
/// Polynomial with integer coefficients.
pub type ZPoly = algebra::Polynomial<BigInt>;
/// Rational function over the rationals; houses generating functions.
pub type QRatFunc = algebra::RationalFunction<Rational>;
