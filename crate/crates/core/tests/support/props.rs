//! Algebraic laws checked on random inputs. Each returns the first
//! counterexample proptest finds, shrunk, as an error string.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use apolar::apolarity::hilbert_function;
use apolar::dp::{contract, DualForm, Exponent, RingElement, VariableSet};
use apolar::io::parse_form;
use apolar::linalg::Field;

type Terms = Vec<(Vec<u32>, i64, i64)>;

fn terms(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec(
        (
            prop::collection::vec(0..=max_deg, nvars),
            (-9i64..=9).prop_filter("nonzero", |c| *c != 0),
            1i64..=4,
        ),
        1..=max_terms,
    )
}

/// Terms of one total degree: the last exponent absorbs the remainder.
fn homogeneous(nvars: usize, deg: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec(
        (
            prop::collection::vec(0..=deg, nvars - 1),
            (-5i64..=5).prop_filter("nonzero", |c| *c != 0),
            Just(1i64),
        ),
        1..=max_terms,
    )
    .prop_map(move |ts| {
        ts.into_iter()
            .map(|(mut e, c, d)| {
                let mut left = deg;
                for x in e.iter_mut() {
                    *x = (*x).min(left);
                    left -= *x;
                }
                e.push(left);
                (e, c, d)
            })
            .collect()
    })
}

fn q(num: i64, den: i64) -> apolar::linalg::Scalar {
    Field::Rational
        .from_ratio(&num.into(), &den.into())
        .expect("nonzero denominator")
}

fn dual(nvars: usize, ts: &Terms) -> DualForm {
    DualForm::from_terms(
        nvars,
        Field::Rational,
        ts.iter().map(|(e, c, d)| (Exponent::new(e.clone()), q(*c, *d))),
    )
}

fn ring(nvars: usize, ts: &Terms) -> RingElement {
    RingElement::from_terms(
        nvars,
        Field::Rational,
        ts.iter().map(|(e, c, d)| (Exponent::new(e.clone()), q(*c, *d))),
    )
}

fn run<S: Strategy>(cases: u32, s: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&s, test).map_err(|e| e.to_string())
}

fn ok<T>(r: apolar::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

/// `(f g) ∘ F = f ∘ (g ∘ F)`.
pub fn contraction_module_law(cases: u32) -> Result<(), String> {
    run(
        cases,
        (terms(3, 3, 3), terms(3, 3, 3), terms(3, 7, 5)),
        |(f, g, form)| {
            let (f, g, form) = (ring(3, &f), ring(3, &g), dual(3, &form));
            let lhs = ok(contract(&ok(f.ring_multiply(&g))?, &form))?;
            let rhs = ok(contract(&f, &ok(contract(&g, &form))?))?;
            prop_assert_eq!(lhs, rhs);
            Ok(())
        },
    )
}

pub fn dp_multiply_commutative_associative(cases: u32) -> Result<(), String> {
    run(cases, (terms(3, 4, 3), terms(3, 4, 3), terms(3, 4, 3)), |(a, b, c)| {
        let (a, b, c) = (dual(3, &a), dual(3, &b), dual(3, &c));
        prop_assert_eq!(ok(a.dp_multiply(&b))?, ok(b.dp_multiply(&a))?);
        let left = ok(ok(a.dp_multiply(&b))?.dp_multiply(&c))?;
        let right = ok(a.dp_multiply(&ok(b.dp_multiply(&c))?))?;
        prop_assert_eq!(left, right);
        Ok(())
    })
}

/// `x_v ∘ shift_up_v(F) = F`.
pub fn shift_up_contract_inverse(cases: u32) -> Result<(), String> {
    run(cases, (terms(4, 6, 6), 0usize..4), |(form, v)| {
        let form = dual(4, &form);
        let x = RingElement::var(4, Field::Rational, v);
        prop_assert_eq!(ok(contract(&x, &form.shift_up(v)))?, form);
        Ok(())
    })
}

/// `H(d) = H(j - d)` for the Gorenstein quotient of any nonzero form.
pub fn hilbert_symmetry(cases: u32) -> Result<(), String> {
    let forms = (2usize..=3, 1u32..=6).prop_flat_map(|(n, j)| (Just(n), homogeneous(n, j, 5)));
    run(cases, forms, |(n, ts)| {
        let form = dual(n, &ts);
        prop_assume!(!form.is_zero());
        let h = ok(hilbert_function(&form))?;
        let rev: Vec<usize> = h.iter().rev().copied().collect();
        prop_assert_eq!(h, rev);
        Ok(())
    })
}

pub fn parse_render_round_trip(cases: u32) -> Result<(), String> {
    let vars = VariableSet::new(&["W", "X", "Y", "Z"]).unwrap();
    run(cases, terms(4, 12, 8), |ts| {
        let form = dual(4, &ts);
        prop_assume!(!form.is_zero());
        let text = form.render(&vars);
        let back =
            parse_form(&text, &vars, Field::Rational).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(&back, &form);
        prop_assert_eq!(back.render(&vars), text);
        Ok(())
    })
}

type Property = fn(u32) -> Result<(), String>;

pub const ALL: [(&str, Property); 5] = [
    ("contraction module-action law", contraction_module_law),
    (
        "dp_multiply commutative and associative",
        dp_multiply_commutative_associative,
    ),
    ("shift_up then contract is the identity", shift_up_contract_inverse),
    ("Hilbert function symmetry", hilbert_symmetry),
    ("parse/render round trip", parse_render_round_trip),
];
