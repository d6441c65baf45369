//! Compare a term against a sequence over an index range.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::catalog::{fixtures, Fixture};
use crate::error::{Error, Result};
use crate::recurrence::SequenceWindow;
use crate::term::{Assignment, Term, DEFAULT_BIT_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub n: usize,
    pub expected: BigInt,
    /// `None` when evaluation itself failed.
    pub got: Option<BigInt>,
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub range: (usize, usize),
    /// Indices compared, including a failing one.
    pub checked: usize,
    pub first_failure: Option<Failure>,
    pub elapsed: Duration,
    pub peak_bits: u64,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn to_json(&self) -> Value {
        let failure = self.first_failure.as_ref().map(|f| {
            let mut v = json!({
                "n": f.n,
                "expected": f.expected.to_string(),
                "got": f.got.as_ref().map(ToString::to_string),
            });
            if let Some(e) = &f.error {
                v["error"] = json!(e);
            }
            v
        });
        json!({
            "range": [self.range.0, self.range.1],
            "ok": self.ok(),
            "checked": self.checked,
            "first_failure": failure,
            "peak_bits": self.peak_bits,
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }
}

/// Check `term(n) - c^(n+1) = oracle[n]` for `lo <= n <= hi`, stopping at
/// the first disagreement or evaluation error.
pub fn verify_term(
    oracle: &SequenceWindow,
    term: &Term,
    c: &BigInt,
    range: (usize, usize),
) -> Result<VerificationReport> {
    let (lo, hi) = range;
    if hi >= oracle.len() {
        return Err(Error::Spec(format!("oracle covers 0..={}, range ends at {hi}", oracle.len() as isize - 1)));
    }
    let start = Instant::now();
    let mut peak_bits = 0;
    let mut checked = 0;
    let mut first_failure = None;
    for n in lo..=hi {
        checked += 1;
        let expected = oracle.values()[n].clone();
        match term.evaluate_with_budget(&Assignment::n(n as u64), DEFAULT_BIT_BUDGET) {
            Ok(e) => {
                peak_bits = peak_bits.max(e.peak_bits);
                let got = BigInt::from(e.value) - num_traits::pow(c.clone(), n + 1);
                if got != expected {
                    first_failure = Some(Failure { n, expected, got: Some(got), error: None });
                    break;
                }
            }
            Err(err) => {
                first_failure = Some(Failure { n, expected, got: None, error: Some(err.to_string()) });
                break;
            }
        }
    }
    Ok(VerificationReport { range, checked, first_failure, elapsed: start.elapsed(), peak_bits })
}

/// Verify one fixture on `[valid_from, horizon]`.
pub fn verify_fixture(f: &Fixture, horizon: usize) -> Result<VerificationReport> {
    let oracle = f.recurrence.eval_oracle(horizon)?;
    verify_term(&oracle, &f.term, &f.c, (f.valid_from, horizon.max(f.valid_from)))
}

/// Every fixture on `[valid_from, horizon]`.
pub fn verify_catalog(horizon: usize) -> Result<Vec<(String, VerificationReport)>> {
    fixtures()
        .iter()
        .map(|f| Ok((f.id.clone(), verify_fixture(f, horizon.max(f.valid_from))?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::fixture;
    use crate::recurrence::Recurrence;
    use crate::term::parse;

    fn fib() -> Recurrence {
        Recurrence::from_ints(&[-1, -1], &[0, 1]).unwrap()
    }

    #[test]
    fn fibonacci_passes_from_zero() {
        let t = parse("fl(3^(n^2+n) / (3^(2*n) -. (3^n + 1))) % 3^n").unwrap();
        let r = verify_term(&fib().eval_oracle(40).unwrap(), &t, &BigInt::from(0), (0, 40)).unwrap();
        assert!(r.ok());
        assert_eq!(r.checked, 41);
        assert!(r.peak_bits > 2000);
    }

    #[test]
    fn base_two_fails_at_one() {
        let t = parse("fl(2^(n^2+n) / (2^(2*n) -. (2^n + 1))) % 2^n").unwrap();
        let r = verify_term(&fib().eval_oracle(1).unwrap(), &t, &BigInt::from(0), (1, 1)).unwrap();
        let f = r.first_failure.unwrap();
        assert_eq!((f.n, f.expected, f.got), (1, BigInt::from(1), Some(BigInt::from(0))));
    }

    #[test]
    fn shifted_fixture() {
        let f = fixture("A088137").unwrap();
        let r = verify_term(&f.recurrence.eval_oracle(30).unwrap(), &f.term, &f.c, (1, 30)).unwrap();
        assert!(r.ok());
    }

    #[test]
    fn small_horizon_catalog() {
        for (id, r) in verify_catalog(2).unwrap() {
            assert!(r.ok(), "{id}");
        }
    }

    #[test]
    fn corrupted_base_is_reported() {
        let mut f = fixture("A000129").unwrap();
        f.term = parse("fl(2^(n^2+n) / (2^(2*n) -. (2*2^n + 1))) % 2^n").unwrap();
        let r = verify_fixture(&f, 20).unwrap();
        assert!(!r.ok());
    }

    #[test]
    fn budget_errors_are_recorded() {
        let t = parse("2^(n^12)").unwrap();
        let r = verify_term(&fib().eval_oracle(10).unwrap(), &t, &BigInt::from(0), (5, 10)).unwrap();
        let f = r.first_failure.clone().unwrap();
        assert!(f.got.is_none() && f.error.is_some());
        assert_eq!(r.to_json()["ok"], json!(false));
    }
}
