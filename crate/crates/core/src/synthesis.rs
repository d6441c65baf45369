//! From a recurrence to a verified term `E(n)` with `s(n) = E(n) - c^(n+1)`.
//!
//! Pipeline: choose the shift `c`, form `GF_t = GF_s + c/(1 - cz)`, clear
//! denominators and split signs, then search for the smallest base `b` whose
//! extraction term reproduces `t(n)` on the horizon and whose validity beyond
//! it is certified by one of the two extraction theorems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::{clear_denominators, split_signs};
use crate::error::{Error, Result};
use crate::recurrence::{gf_shift, Recurrence};
use crate::term::{build_extraction_term, Assignment, Term, TermFormat};
use crate::{QRatFunc, Rational, ZPoly};

/// Largest index the synthesizer will evaluate directly to close the gap
/// between the horizon and the start of a tail certificate.
const DIRECT_CHECK_LIMIT: usize = 160;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthOptions {
    /// Check `E(n) - c^(n+1) = s(n)` for `1 <= n <= horizon`.
    pub horizon: usize,
    pub force_b: Option<BigInt>,
    pub force_c: Option<BigInt>,
    /// Window length for the nonnegativity test that selects `c = 0`.
    pub probe: usize,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions { horizon: 40, force_b: None, force_c: None, probe: 32 }
    }
}

/// Generic base bounds: `b1` with threshold `m` for the first extraction
/// theorem and `b2` for the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsCertificate {
    pub c: BigInt,
    /// `|t(n)| < c_t^(n+1)` for all `n`.
    pub c_t: BigInt,
    /// Certified lower bound on the radius of convergence of `GF_t`.
    pub rho: Rational,
    pub b1: BigInt,
    pub m: usize,
    pub b2: BigInt,
}

impl BoundsCertificate {
    /// Recheck every inequality exactly.
    pub fn check(&self) -> bool {
        let m = self.m as u32;
        let b1_ok = below_radius(&self.b1, m, &self.rho)
            && pow(&self.c_t, m + 1) < pow(&self.b1, m - 2)
            && self.b1 > self.c_t
            && self.m >= 3;
        let floor = BigInt::from(8).max(pow(&self.c_t, 6) + 1);
        b1_ok && self.b2 >= floor && below_radius(&self.b2, 1, &self.rho)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "c": self.c.to_string(),
            "c_t": self.c_t.to_string(),
            "rho": self.rho.to_string(),
            "b1": self.b1.to_string(),
            "m": self.m,
            "b2": self.b2.to_string(),
        })
    }
}

/// Why the chosen base is valid beyond the checked horizon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseCertificate {
    /// `b >= 8`, `b > c_t^6` and `1/b < rho`: valid for every `n >= 1`.
    Uniform,
    /// `|t(r)| < b^(r-2)` for all `r >= from` and `b^-from < rho`: valid for
    /// `n >= from`, with `1 <= n < from` checked directly.
    Tail { from: usize },
    /// Only the checked range is established (forced bases).
    Unproven,
}

impl BaseCertificate {
    pub fn to_json(&self) -> Value {
        match self {
            BaseCertificate::Uniform => json!({ "kind": "uniform" }),
            BaseCertificate::Tail { from } => json!({ "kind": "tail", "from": from }),
            BaseCertificate::Unproven => json!({ "kind": "unproven" }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SynthesisResult {
    pub recurrence: Recurrence,
    /// Term in `n` with `b` substituted.
    pub term: Term,
    pub b: BigInt,
    pub c: BigInt,
    /// Always 1.
    pub valid_from: usize,
    /// Whether the identity also holds at `n = 0` under the evaluation
    /// conventions.
    pub valid_at_zero: bool,
    pub certificate: BoundsCertificate,
    pub base_certificate: BaseCertificate,
    pub gf_t: QRatFunc,
}

impl SynthesisResult {
    pub fn to_json(&self) -> Value {
        json!({
            "recurrence": self.recurrence.to_spec_json(),
            "term": self.term.render(TermFormat::Text),
            "term_ast": self.term.to_json(),
            "b": self.b.to_string(),
            "c": self.c.to_string(),
            "valid_from": self.valid_from,
            "valid_at_zero": self.valid_at_zero,
            "certificate": self.certificate.to_json(),
            "base_certificate": self.base_certificate.to_json(),
            "gf_t": self.gf_t.to_string(),
        })
    }
}

fn pow(x: &BigInt, e: u32) -> BigInt {
    num_traits::pow(x.clone(), e as usize)
}

/// `b^-k < rho`, i.e. `rho * b^k > 1`, compared as integers.
fn below_radius(b: &BigInt, k: u32, rho: &Rational) -> bool {
    rho.numer() * pow(b, k) > *rho.denom()
}

/// `|d0| / (|d0| + max_{i>=1} |di|)`: every root of `den` has modulus at
/// least this, so it bounds the radius of convergence from below.
pub fn radius_lower_bound(den: &ZPoly) -> Result<Rational> {
    let d0 = den.coeff(0).abs();
    if d0.is_zero() {
        return Err(Error::PoleAtOrigin);
    }
    let tail = den.coeffs().iter().skip(1).map(Signed::abs).max();
    match tail {
        Some(mx) if !mx.is_zero() => Ok(Rational::new(d0.clone(), d0 + mx)),
        _ => Ok(Rational::one()),
    }
}

/// `0` when the sequence is provably nonnegative, else the weighted shift
/// constant of [`Recurrence::shift_constant`].
pub fn find_shift(rec: &Recurrence) -> BigInt {
    find_shift_with_probe(rec, SynthOptions::default().probe)
}

fn find_shift_with_probe(rec: &Recurrence, probe: usize) -> BigInt {
    if rec.is_provably_nonnegative(probe) {
        BigInt::zero()
    } else {
        rec.shift_constant()
    }
}

/// `b1 = max(c_t + 1, 2)` and the smallest `m >= 3` with
/// `c_t^(m+1) < b1^(m-2)` and `b1^-m < rho`. Both conditions persist for
/// larger `m` because `b1 > c_t`, so the threshold is found by galloping and
/// bisection.
pub fn find_b1_m(c_t: &BigInt, rho: &Rational) -> (BigInt, usize) {
    let b1: BigInt = (c_t + 1u32).max(BigInt::from(2));
    let ok = |m: usize| {
        let m32 = m as u32;
        pow(c_t, m32 + 1) < pow(&b1, m32 - 2) && below_radius(&b1, m32, rho)
    };
    (b1.clone(), first_true(3, ok))
}

/// Smallest `k >= lo` satisfying a predicate that stays true once true.
fn first_true(lo: usize, ok: impl Fn(usize) -> bool) -> usize {
    first_true_upto(lo, usize::MAX, ok).expect("predicate eventually holds")
}

/// As [`first_true`], giving up past `cap`.
fn first_true_upto(lo: usize, cap: usize, ok: impl Fn(usize) -> bool) -> Option<usize> {
    if ok(lo) {
        return Some(lo);
    }
    let (mut bad, mut step) = (lo, 1);
    let mut good = loop {
        let probe = lo.saturating_add(step).min(cap);
        if ok(probe) {
            break probe;
        }
        if probe == cap {
            return None;
        }
        bad = probe;
        step *= 2;
    };
    while good - bad > 1 {
        let mid = bad + (good - bad) / 2;
        if ok(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Some(good)
}

/// Smallest `b2 >= max(8, c_t^6 + 1)` with `1/b2 < rho`.
pub fn find_b2(c_t: &BigInt, rho: &Rational) -> BigInt {
    let radius_floor = (rho.recip()).floor().to_integer() + 1;
    BigInt::from(8).max(pow(c_t, 6) + 1).max(radius_floor)
}

/// Everything about `t(n) = s(n) + c^(n+1)` that the base search needs.
#[derive(Clone, Debug)]
pub struct ExtractionPlan {
    pub recurrence: Recurrence,
    pub c: BigInt,
    pub gf_t: QRatFunc,
    pub num: ZPoly,
    pub den: ZPoly,
    /// Degree of `den`.
    pub h: usize,
    pub certificate: BoundsCertificate,
    t_rec: Recurrence,
    /// `(K, g)` pairs with `|t(r)| <= K g^r` for every `r`.
    envelopes: Vec<(Rational, Rational)>,
    splits: [ZPoly; 4],
}

impl ExtractionPlan {
    /// Fails when `t` is identically zero or, for a forced `c`, when a
    /// shifted term in the probe window is negative.
    pub fn new(rec: &Recurrence, c: &BigInt) -> Result<Self> {
        if rec.is_zero_sequence() && c.is_zero() {
            return Err(Error::AllZero);
        }
        let gf_t = gf_shift(&rec.generating_function(), c);
        let t_rec = Recurrence::from_generating_function(&gf_t)?;
        let (num, den) = clear_denominators(&gf_t);
        let h = den.degree().unwrap_or(0);
        let rho = radius_lower_bound(&den)?;
        let c_t = t_rec.growth_constant();
        let (b1, m) = find_b1_m(&c_t, &rho);
        let b2 = find_b2(&c_t, &rho);
        let certificate = BoundsCertificate { c: c.clone(), c_t: c_t.clone(), rho, b1, m, b2 };
        let (a_plus, a_minus) = split_signs(&num);
        let (b_plus, b_minus) = split_signs(&den);
        let ct = Rational::from_integer(c_t);
        let envelopes = vec![(ct.clone(), ct), weighted_envelope(&t_rec)];
        Ok(ExtractionPlan {
            recurrence: rec.clone(),
            c: c.clone(),
            gf_t,
            num,
            den,
            h,
            certificate,
            t_rec,
            envelopes,
            splits: [a_plus, a_minus, b_plus, b_minus],
        })
    }

    pub fn shifted_recurrence(&self) -> &Recurrence {
        &self.t_rec
    }

    pub fn term(&self, b: &BigInt) -> Result<Term> {
        let [ap, am, bp, bm] = &self.splits;
        build_extraction_term(ap, am, bp, bm, self.h, b)
    }

    /// `t(0), .., t(n)` computed from `s` and `c`.
    pub fn shifted_values(&self, n: usize) -> Result<Vec<BigInt>> {
        let s = self.recurrence.eval_oracle(n)?;
        let mut pw = self.c.clone();
        Ok(s.values()
            .iter()
            .map(|v| {
                let t = v + &pw;
                pw *= &self.c;
                t
            })
            .collect())
    }

    /// Base certificate for `b`, if one of the extraction theorems applies.
    pub fn certify(&self, b: &BigInt) -> Option<BaseCertificate> {
        let cert = &self.certificate;
        if *b >= BigInt::from(8) && *b > pow(&cert.c_t, 6) && below_radius(b, 1, &cert.rho) {
            return Some(BaseCertificate::Uniform);
        }
        let bq = Rational::from_integer(b.clone());
        self.envelopes
            .iter()
            .filter(|(_, g)| bq > *g)
            .filter_map(|(k, g)| {
                first_true_upto(2, DIRECT_CHECK_LIMIT + 1, |r| {
                    let r32 = r as u32;
                    k * num_traits::pow(g.clone(), r) < Rational::from_integer(pow(b, r32 - 2))
                        && below_radius(b, r32, &cert.rho)
                })
            })
            .min()
            .map(|from| BaseCertificate::Tail { from })
    }

    /// `E(n, b) = t(n)` for every `n` in `lo..=hi`, against precomputed `t`.
    fn matches(&self, term: &Term, t: &[BigInt], lo: usize, hi: usize) -> bool {
        (lo..=hi).all(|n| match term.evaluate(&Assignment::n(n as u64)) {
            Ok(v) => BigInt::from(v) == t[n],
            Err(_) => false,
        })
    }

    /// Smallest base whose term reproduces `t` on `[1, horizon]` and carries a
    /// certificate for all larger `n`.
    ///
    /// Bases are probed by galloping and bisection on the horizon predicate
    /// from `b = 2` up to `b2`; if the candidate cannot be certified, an
    /// ascending scan takes over. `b2` itself is always certified.
    pub fn minimal_valid_b(&self, horizon: usize) -> Result<(BigInt, BaseCertificate)> {
        let t = self.shifted_values(horizon.max(DIRECT_CHECK_LIMIT))?;
        let quick = |b: &BigInt| self.term(b).is_ok_and(|term| self.matches(&term, &t, 1, horizon));
        let accept = |b: &BigInt| -> Option<BaseCertificate> {
            if !quick(b) {
                return None;
            }
            let cert = self.certify(b)?;
            if let BaseCertificate::Tail { from } = cert {
                if from > DIRECT_CHECK_LIMIT + 1 {
                    return None;
                }
                let term = self.term(b).ok()?;
                if from > horizon + 1 && !self.matches(&term, &t, horizon + 1, from - 1) {
                    return None;
                }
            }
            Some(cert)
        };

        let lo = BigInt::from(2);
        let hi = self.certificate.b2.clone();
        if let Some(b) = self.search(&lo, &hi, &quick) {
            if let Some(cert) = accept(&b) {
                return Ok((b, cert));
            }
            // the candidate passed the horizon but lacks a certificate;
            // larger bases near it usually have one
            let mut b = b + 1;
            while b <= hi {
                if let Some(cert) = accept(&b) {
                    return Ok((b, cert));
                }
                b += 1;
            }
        }
        let mut b = lo.clone();
        while b <= hi {
            if let Some(cert) = accept(&b) {
                return Ok((b, cert));
            }
            b += 1;
        }
        Err(Error::NoValidBase { lo: lo.to_string(), hi: hi.to_string() })
    }

    /// Least base in `[lo, hi]` passing `quick`, assuming monotonicity.
    fn search(&self, lo: &BigInt, hi: &BigInt, quick: &impl Fn(&BigInt) -> bool) -> Option<BigInt> {
        if quick(lo) {
            return Some(lo.clone());
        }
        let mut bad = lo.clone();
        let mut step = BigInt::one();
        let mut good = loop {
            let probe = (lo + &step).min(hi.clone());
            if quick(&probe) {
                break probe;
            }
            if probe == *hi {
                return None;
            }
            bad = probe;
            step *= 2;
        };
        while &good - &bad > BigInt::one() {
            let mid = (&bad + &good).div_floor(&BigInt::from(2));
            if quick(&mid) {
                good = mid;
            } else {
                bad = mid;
            }
        }
        Some(good)
    }
}

/// `(K, g)` with `sum |a_i| g^-i <= 1` and `K >= |t(k)| / g^k` for the
/// initial terms; induction then gives `|t(r)| <= K g^r` for every `r`.
/// `g` is the least such integer refined downwards by bisection to within
/// `2^-ENVELOPE_BITS`, since the weighted sum decreases in `g`.
fn weighted_envelope(rec: &Recurrence) -> (Rational, Rational) {
    const ENVELOPE_BITS: u32 = 12;
    let weighted = |g: &Rational| -> Rational {
        let mut pw = Rational::one();
        rec.coeffs()
            .iter()
            .map(|a| {
                pw /= g;
                a.abs() * &pw
            })
            .sum()
    };
    let one = Rational::one();
    let mut hi = one.clone();
    while weighted(&hi) > one {
        hi += &one;
    }
    let mut lo = (&hi - &one).max(Rational::new(1.into(), 2.into()));
    if weighted(&lo) <= one {
        hi = lo.clone();
    }
    for _ in 0..ENVELOPE_BITS {
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        if weighted(&mid) <= one {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut pw = Rational::one();
    let mut k = Rational::one();
    for v in rec.init() {
        k = k.max(Rational::from_integer(v.abs()) / &pw);
        pw *= &hi;
    }
    (k, hi)
}

/// Run the whole pipeline and verify the result on `[1, horizon]`.
pub fn synthesize(rec: &Recurrence, opts: &SynthOptions) -> Result<SynthesisResult> {
    if rec.is_zero_sequence() {
        return Err(Error::AllZero);
    }
    let c = match &opts.force_c {
        Some(c) => c.clone(),
        None => find_shift_with_probe(rec, opts.probe),
    };
    let plan = ExtractionPlan::new(rec, &c)?;
    if opts.force_c.is_some() {
        let t = plan.shifted_values(opts.horizon.max(opts.probe))?;
        if let Some(n) = t.iter().position(Signed::is_negative) {
            return Err(Error::NegativeShiftedTerm { c: c.to_string(), n });
        }
    }
    let (b, base_certificate) = match &opts.force_b {
        Some(b) => {
            let cert = plan.certify(b).unwrap_or(BaseCertificate::Unproven);
            let cert = match cert {
                BaseCertificate::Tail { from } if from > opts.horizon + 1 => BaseCertificate::Unproven,
                other => other,
            };
            (b.clone(), cert)
        }
        None => plan.minimal_valid_b(opts.horizon)?,
    };
    let term = plan.term(&b)?;

    let s = rec.eval_oracle(opts.horizon)?;
    let check = |n: usize| -> Result<bool> {
        let e = BigInt::from(term.evaluate(&Assignment::n(n as u64))?);
        let shift = pow(&c, n as u32 + 1);
        Ok(e - shift == s.values()[n])
    };
    for n in 1..=opts.horizon {
        if !check(n)? {
            let got = BigInt::from(term.evaluate(&Assignment::n(n as u64))?) - pow(&c, n as u32 + 1);
            return Err(Error::Mismatch { n, expected: s.values()[n].to_string(), got: got.to_string() });
        }
    }
    let valid_at_zero = check(0).unwrap_or(false);
    Ok(SynthesisResult {
        recurrence: rec.clone(),
        term,
        b,
        c,
        valid_from: 1,
        valid_at_zero,
        certificate: plan.certificate.clone(),
        base_certificate,
        gf_t: plan.gf_t.clone(),
    })
}

/// `t(n)` read off the generating function directly:
/// `floor(b^(n^2) GF_t(b^-n)) mod b^n`, in exact rationals.
pub fn extraction_value(gf: &QRatFunc, b: &BigInt, n: usize) -> Option<BigInt> {
    let bn = pow(b, n as u32);
    let x = Rational::new(BigInt::one(), bn.clone());
    let v = gf.eval(&x)? * Rational::from_integer(pow(&bn, n as u32));
    Some(v.floor().to_integer().mod_floor(&bn))
}
