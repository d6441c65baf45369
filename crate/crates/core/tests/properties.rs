use aterm::algebra::{clear_denominators, poly_gcd, split_signs, Polynomial, RationalFunction};
use aterm::synthesis::ExtractionPlan;
use aterm::term::{parse, Assignment, Op, TermFormat};
use aterm::{fixtures, gf_shift, synthesize, BigInt, BigUint, QPoly, Rational, Recurrence, SynthOptions, Term, ZPoly};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn qpoly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((-6i64..=6, 1i64..=4), 0..6)
        .prop_map(|v| Polynomial::new(v.into_iter().map(|(n, d)| q(n, d)).collect()))
}

fn series_den() -> impl Strategy<Value = QPoly> {
    (qpoly(), 1i64..=5).prop_map(|(p, c0)| {
        let mut c = p.coeffs().to_vec();
        if c.is_empty() {
            c.push(q(c0, 1));
        } else {
            c[0] = q(c0, 1);
        }
        Polynomial::new(c)
    })
}

fn small_recurrence() -> impl Strategy<Value = Recurrence> {
    (1usize..=4)
        .prop_flat_map(|d| {
            (
                prop::collection::vec(-5i64..=5, d),
                prop::sample::select(vec![-5i64, -4, -3, -2, -1, 1, 2, 3, 4, 5]),
                prop::collection::vec(-10i64..=10, d),
            )
        })
        .prop_map(|(mut a, last, init)| {
            *a.last_mut().unwrap() = last;
            Recurrence::from_ints(&a, &init).unwrap()
        })
}

fn term(depth: u32) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        any::<u64>().prop_map(Term::num),
        "[0-9]{20,40}".prop_map(|s| Term::Const(s.parse::<BigUint>().unwrap())),
        prop::sample::select(vec!["n", "b", "x1"]).prop_map(Term::var),
    ];
    leaf.prop_recursive(depth, 256, 2, |inner| {
        (prop::sample::select(Op::ALL.to_vec()), inner.clone(), inner)
            .prop_map(|(op, l, r)| Term::bin(op, l, r))
    })
}

proptest! {
    #[test]
    fn series_times_denominator_gives_numerator(num in qpoly(), den in series_den()) {
        let f = RationalFunction::new(num.clone(), den.clone()).unwrap();
        let n = 12;
        let s = Polynomial::new(f.series_coefficients(n).unwrap());
        let back = (&s * f.denominator()).truncate(n + 1);
        prop_assert_eq!(back, f.numerator().truncate(n + 1));
        // and the original pair agrees as well
        prop_assert_eq!((&s * &den).truncate(n + 1), num.truncate(n + 1));
    }

    #[test]
    fn gcd_divides_both(a in qpoly(), b in qpoly(), c in qpoly()) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let (x, y) = (&a * &c, &b * &c);
        prop_assume!(!(x.is_zero() && y.is_zero()));
        let g = poly_gcd(&x, &y).unwrap();
        prop_assert_eq!(g.leading().cloned(), Some(Rational::one()));
        prop_assert!(x.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(y.div_rem(&g).unwrap().1.is_zero());
        if !c.is_zero() {
            prop_assert!(g.div_rem(&c.monic()).unwrap().1.is_zero());
        }
    }

    #[test]
    fn rational_functions_are_reduced(num in qpoly(), den in series_den(), extra in series_den()) {
        let f = RationalFunction::new(&num * &extra, &den * &extra).unwrap();
        let g = poly_gcd(f.numerator(), f.denominator()).unwrap();
        prop_assert_eq!(g.degree(), Some(0));
        prop_assert_eq!(f.denominator().coeff(0), Rational::one());
        prop_assert_eq!(f, RationalFunction::new(num, den).unwrap());
    }

    #[test]
    fn split_signs_reassembles(p in prop::collection::vec(-20i64..=20, 0..8), points in prop::collection::vec((-9i64..=9, 1i64..=9), 20)) {
        let p: ZPoly = Polynomial::new(p.into_iter().map(BigInt::from).collect());
        let (plus, minus) = split_signs(&p);
        prop_assert_eq!(&plus - &minus, p.clone());
        for i in 0..=p.degree().unwrap_or(0) {
            prop_assert!(plus.coeff(i).is_zero() || minus.coeff(i).is_zero());
            prop_assert!(plus.coeff(i) >= BigInt::zero() && minus.coeff(i) >= BigInt::zero());
        }
        let lift = |z: &ZPoly| z.map(|c| Rational::from_integer(c.clone()));
        for (n, d) in points {
            let x = q(n, d);
            prop_assert_eq!(lift(&p).eval(&x), lift(&plus).eval(&x) - lift(&minus).eval(&x));
        }
    }

    #[test]
    fn cleared_denominators_keep_the_function(num in qpoly(), den in series_den()) {
        let f = RationalFunction::new(num, den).unwrap();
        let (a, b) = clear_denominators(&f);
        prop_assert!(b.coeff(0) > BigInt::zero());
        let lift = |z: &ZPoly| z.map(|c| Rational::from_integer(c.clone()));
        prop_assert_eq!(RationalFunction::new(lift(&a), lift(&b)).unwrap(), f);
    }

    #[test]
    fn generating_function_round_trip(rec in small_recurrence()) {
        prop_assume!(!rec.is_zero_sequence());
        let gf = rec.generating_function();
        let back = Recurrence::from_generating_function(&gf).unwrap();
        let n = 20;
        let (got, want) = (back.eval_oracle(n).unwrap(), rec.eval_oracle(n).unwrap());
        prop_assert_eq!(got.values(), want.values());
        let series = gf.series_coefficients(n).unwrap();
        let values: Vec<Rational> = want.values().iter().cloned().map(Rational::from_integer).collect();
        prop_assert_eq!(series, values);
    }

    #[test]
    fn shift_adds_geometric_terms(rec in small_recurrence(), c in 0i64..=6) {
        let c = BigInt::from(c);
        let shifted = gf_shift(&rec.generating_function(), &c).series_coefficients(15).unwrap();
        let s = rec.eval_oracle(15).unwrap();
        for (n, v) in shifted.iter().enumerate() {
            let want = &s.values()[n] + num_traits::pow(c.clone(), n + 1);
            prop_assert_eq!(v.clone(), Rational::from_integer(want));
        }
    }

    #[test]
    fn shift_constant_makes_terms_natural(rec in small_recurrence()) {
        prop_assume!(!rec.is_zero_sequence());
        let c = rec.shift_constant();
        let s = rec.eval_oracle(40).unwrap();
        for (n, v) in s.values().iter().enumerate() {
            prop_assert!(v + num_traits::pow(c.clone(), n + 1) >= BigInt::zero());
        }
    }

    #[test]
    fn nonnegativity_claims_hold(rec in small_recurrence()) {
        if rec.is_provably_nonnegative(32) {
            prop_assert!(rec.eval_oracle(200).unwrap().values().iter().all(|v| *v >= BigInt::zero()));
        }
    }

    #[test]
    fn text_round_trip(t in term(6)) {
        let text = t.render(TermFormat::Text);
        prop_assert_eq!(parse(&text).unwrap(), t.clone());
        prop_assert_eq!(Term::parse_as(&t.render(TermFormat::Json), TermFormat::Json).unwrap(), t);
    }

    #[test]
    fn mod_and_truncated_subtraction(x in any::<u64>(), y in any::<u64>()) {
        let env = Assignment::new();
        let ev = |s: String| parse(&s).unwrap().evaluate(&env).unwrap();
        let m = ev(format!("{x} % {y}"));
        let want = if y == 0 { x } else { x - y * (x / y) };
        prop_assert_eq!(m, BigUint::from(want));
        prop_assert_eq!(ev(format!("{x} -. {y}")), BigUint::from(x.saturating_sub(y)));
        let quotient = x.checked_div(y).unwrap_or(0);
        prop_assert_eq!(ev(format!("fl({x} / {y})")), BigUint::from(quotient));
    }
}

#[test]
fn truncated_subtractions_never_clamp() {
    // numerator and denominator blocks of every synthesized term are
    // strictly positive at z = b^-n
    for f in fixtures() {
        let r = synthesize(&f.recurrence, &SynthOptions::default()).unwrap();
        let plan = ExtractionPlan::new(&f.recurrence, &r.c).unwrap();
        let (ap, am) = split_signs(&plan.num);
        let (bp, bm) = split_signs(&plan.den);
        let lift = |z: &ZPoly| z.map(|c| Rational::from_integer(c.clone()));
        for n in 1..=25u32 {
            let x = Rational::new(BigInt::one(), num_traits::pow(r.b.clone(), n as usize));
            assert!(lift(&ap).eval(&x) > lift(&am).eval(&x), "{} numerator at n = {n}", f.id);
            assert!(lift(&bp).eval(&x) > lift(&bm).eval(&x), "{} denominator at n = {n}", f.id);
        }
    }
}

#[test]
fn spec_round_trip() {
    let rec = Recurrence::from_spec_str(r#"{"order": 2, "coeffs": ["-1", "-1"], "init": ["0", "1"]}"#).unwrap();
    assert_eq!(rec, Recurrence::from_ints(&[-1, -1], &[0, 1]).unwrap());
    assert_eq!(Recurrence::from_spec_str(&rec.to_spec_json().to_string()).unwrap(), rec);
    let half = Recurrence::from_spec_str(r#"{"order": 1, "coeffs": ["-1/2"], "init": ["4"]}"#).unwrap();
    assert_eq!(half.coeffs()[0], q(-1, 2));
    for bad in [
        r#"{"order": 2, "coeffs": ["-1"], "init": ["0", "1"]}"#,
        r#"{"order": 1, "coeffs": ["1/0"], "init": ["1"]}"#,
        r#"{"order": 1, "coeffs": ["x"], "init": ["1"]}"#,
        r#"{"order": 1, "coeffs": ["0"], "init": ["1"]}"#,
        r#"{"order": 1, "coeffs": ["1"], "init": ["1.5"]}"#,
        "not json",
    ] {
        assert!(Recurrence::from_spec_str(bad).is_err(), "{bad}");
    }
}

#[test]
fn convolutions_are_powers_of_the_fibonacci_series() {
    let fib = Recurrence::from_ints(&[-1, -1], &[0, 1]).unwrap().generating_function();
    for r in 0..=4u32 {
        let conv = aterm::catalog::fibonacci_convolution(r).unwrap();
        assert_eq!(conv.generating_function(), fib.pow(r + 1), "r = {r}");
    }
}

#[test]
fn lucas_closed_form_matches_recurrence() {
    use aterm::catalog::{lucas_closed_form, LucasKind, LucasParams};
    for (p, q) in [(1, -1), (2, -1), (1, -2), (3, 2), (2, 3), (1, 2), (16, 1), (14, 1), (-3, 5)] {
        let params = LucasParams::new(p, q).unwrap();
        for kind in [LucasKind::U, LucasKind::V] {
            let s = params.recurrence(kind).eval_oracle(100).unwrap();
            for n in 0..=100u32 {
                assert_eq!(lucas_closed_form(params, kind, n), s.values()[n as usize], "({p}, {q}) {kind:?} n = {n}");
            }
        }
    }
}
