//! Strategies and per-case checks shared by the property suites and the
//! acceptance report.

#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use cmc4_core::elim::{resultant, resultant_prs};
use cmc4_core::{load_fixtures, parse, render, FixtureSet, Monomial, Poly, VarTable, Weight};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixtures() -> FixtureSet {
    load_fixtures(&fixtures_dir()).expect("fixtures load")
}

pub fn small_table() -> Arc<VarTable> {
    VarTable::new([("x", 1), ("y", 1), ("z", 2)]).unwrap()
}

pub fn bivariate() -> Arc<VarTable> {
    VarTable::new([("x", 1), ("y", 1)]).unwrap()
}

pub fn poly_in(vars: Arc<VarTable>, max_exp: u16, max_terms: usize) -> impl Strategy<Value = Poly> {
    let n = vars.len();
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, n), -20i64..=20),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        Poly::from_terms(
            &vars,
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::from_exps(&e), BigInt::from(c))),
        )
    })
}

pub fn point(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((-9i64..=9, 1i64..=5), n).prop_map(|v| {
        v.into_iter()
            .map(|(a, b)| BigRational::new(a.into(), b.into()))
            .collect()
    })
}

/// Random polynomials over a handful of registry symbols.
pub fn registry_poly() -> impl Strategy<Value = Poly> {
    let keep = ["c", "lam", "lam3", "y1", "w2", "mu4", "a", "T2"];
    prop::collection::vec(
        (prop::collection::vec(0u16..=4, keep.len()), -50i64..=50),
        0..=6,
    )
    .prop_map(move |terms| {
        let r = VarTable::registry();
        let terms = terms.into_iter().map(|(e, c)| {
            let mut m = Monomial::one(r.len());
            for (name, k) in keep.iter().zip(e) {
                m = m.with_exp(r.var(name), k);
            }
            (m, BigInt::from(c))
        });
        Poly::from_terms(&r, terms)
    })
}

pub fn ring_case(a: &Poly, b: &Poly, c: &Poly, pt: &[BigRational]) -> Result<(), TestCaseError> {
    let zero = Poly::zero(a.vars());
    let one = Poly::one(a.vars());
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(a + &zero, a.clone());
    prop_assert_eq!(a * &one, a.clone());
    prop_assert!((a - a).is_zero());
    prop_assert_eq!(&(-a) + a, zero);
    // Evaluation is a ring homomorphism.
    prop_assert_eq!((a * b).eval(pt), a.eval(pt) * b.eval(pt));
    prop_assert_eq!((a + b).eval(pt), a.eval(pt) + b.eval(pt));
    Ok(())
}

pub fn round_trip_case(p: &Poly) -> Result<(), TestCaseError> {
    let text = render(p);
    let back =
        parse(&text, &VarTable::registry()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&back, p, "text {}", text);
    Ok(())
}

pub fn backends_case(p: &Poly, q: &Poly) -> Result<(), TestCaseError> {
    let x = p.vars().var("x");
    prop_assume!(p.degree_in(x) > 0 && q.degree_in(x) > 0);
    let r1 = resultant(p, q, x).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let r2 = resultant_prs(p, q, x).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(r1 == r2 || r1 == -&r2, "bareiss {} vs prs {}", r1, r2);
    Ok(())
}

/// The resultant commutes with specializing `y` whenever neither leading
/// coefficient in `x` vanishes there.
pub fn specialization_case(p: &Poly, q: &Poly, a: i64) -> Result<(), TestCaseError> {
    let vars = p.vars();
    let (x, y) = (vars.var("x"), vars.var("y"));
    let (dp, dq) = (p.degree_in(x), q.degree_in(x));
    prop_assume!(dp > 0 && dq > 0);
    let a = BigInt::from(a);
    prop_assume!(!p.coeff_in(x, dp).specialize(y, &a).is_zero());
    prop_assume!(!q.coeff_in(x, dq).specialize(y, &a).is_zero());
    let fail = |e: cmc4_core::ElimError| TestCaseError::fail(e.to_string());
    let full = resultant(p, q, x).map_err(fail)?.specialize(y, &a);
    let spec = resultant(&p.specialize(y, &a), &q.specialize(y, &a), x).map_err(fail)?;
    prop_assert_eq!(full, spec);
    Ok(())
}

/// Number of fixtures, or the id of the first inhomogeneous one.
pub fn fixture_homogeneity() -> Result<usize, String> {
    let fx = fixtures();
    let mut n = 0;
    for f in fx.iter() {
        match f.poly.weight() {
            Ok(Weight::Homogeneous(_)) => n += 1,
            _ => return Err(f.id.clone()),
        }
    }
    Ok(n)
}
