use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("rational function with zero denominator")]
    ZeroDenominator,
    #[error("generating function has a pole at the origin (denominator constant term is zero)")]
    PoleAtOrigin,
    #[error("invalid recurrence: {0}")]
    InvalidRecurrence(String),
    #[error("recurrence produces a non-integer term s({index}) = {value}")]
    NonIntegerTerm { index: usize, value: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("evaluation would need about {needed} bits, over the budget of {budget}")]
    BitBudget { needed: u64, budget: u64 },
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid term encoding: {0}")]
    TermEncoding(String),
    #[error("the sequence is identically zero")]
    AllZero,
    #[error("invalid Lucas parameters P={p}, Q={q}: 4Q must differ from P^2 and from 0")]
    LucasParams { p: i64, q: i64 },
    #[error("invalid Pell parameter {0}: need a non-square integer k >= 2")]
    PellParameter(u64),
    #[error("no certified base in [{lo}, {hi}]")]
    NoValidBase { lo: String, hi: String },
    #[error("term disagrees with the sequence at n = {n}: expected {expected}, got {got}")]
    Mismatch { n: usize, expected: String, got: String },
    #[error("forced shift c = {c} leaves t({n}) negative")]
    NegativeShiftedTerm { c: String, n: usize },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("{0}")]
    Spec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
