//! Independent checks of computed quantities: weights from a hand-kept
//! weight map, resultants from a rational Sylvester determinant, and the
//! symmetric-function identities from direct numeric evaluation.

use std::collections::HashMap;
use std::path::PathBuf;

use cmc4_core::elim::resultant_prs;
use cmc4_core::replay::{run_lemma34, FixtureMatch};
use cmc4_core::{load_fixtures, DerivationTable, FixtureSet, Poly, VarTable};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn fixtures() -> FixtureSet {
    load_fixtures(&PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")).unwrap()
}

fn weight_map() -> HashMap<&'static str, i64> {
    let mut m = HashMap::new();
    m.insert("c", 2);
    for (k, n) in ["lam", "lam1", "lam2", "lam3", "lam4", "lam5"]
        .iter()
        .enumerate()
    {
        m.insert(*n, k as i64 + 1);
    }
    for (k, n) in ["T", "T1", "T2", "T3", "T4"].iter().enumerate() {
        m.insert(*n, k as i64 + 1);
    }
    for (n, w) in [
        ("kap", 0),
        ("tau", 1),
        ("y1", 1),
        ("y2", 2),
        ("y3", 3),
        ("a", -1),
        ("Da", 0),
        ("u", 0),
    ] {
        m.insert(n, w);
    }
    for n in ["w2", "w3", "w4", "mu2", "mu3", "mu4"] {
        m.insert(n, 1);
    }
    m
}

/// Set of term weights, computed from symbol names alone.
fn term_weights(p: &Poly) -> Vec<i64> {
    let map = weight_map();
    let vars = p.vars();
    let mut ws: Vec<i64> = p
        .terms()
        .iter()
        .map(|(m, _)| {
            vars.ids()
                .map(|v| m.exp(v) as i64 * map[vars.name(v)])
                .sum()
        })
        .collect();
    ws.sort();
    ws.dedup();
    ws
}

fn single_weight(p: &Poly) -> i64 {
    let ws = term_weights(p);
    assert_eq!(ws.len(), 1, "not homogeneous: {ws:?}");
    ws[0]
}

/// Determinant of the Sylvester matrix of two univariate coefficient lists
/// (lowest degree first), by rational Gaussian elimination.
fn sylvester_det(p: &[BigRational], q: &[BigRational]) -> BigRational {
    let (m, n) = (p.len() - 1, q.len() - 1);
    let size = m + n;
    let mut a = vec![vec![BigRational::zero(); size]; size];
    for i in 0..n {
        for (j, c) in p.iter().rev().enumerate() {
            a[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in q.iter().rev().enumerate() {
            a[n + i][i + j] = c.clone();
        }
    }
    let mut det = BigRational::one();
    for col in 0..size {
        let Some(piv) = (col..size).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col].clone();
        for r in col + 1..size {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            for k in col..size {
                let t = &f * &a[col][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

/// Coefficients in `v` after fixing every other symbol through `point`.
fn univariate(p: &Poly, v: &str, point: &[(&str, i64)]) -> Vec<BigRational> {
    let vars = p.vars();
    let mut q = p.clone();
    for (name, val) in point {
        q = q.specialize(vars.var(name), &BigInt::from(*val));
    }
    q.coefficients_in(vars.var(v))
        .iter()
        .map(|c| BigRational::from_integer(c.constant_value().expect("fully specialized")))
        .collect()
}

#[test]
fn weight_shifts_match_rule_weights() {
    let r = VarTable::registry();
    let map = weight_map();
    for (table, expected) in [
        (DerivationTable::section3(), 1),
        (DerivationTable::case_a(), 1),
        (DerivationTable::case_b(), 4),
    ] {
        for v in r.ids() {
            let Some(rule) = table.rule(v) else { continue };
            if rule.num().is_zero() {
                continue;
            }
            let shift = single_weight(rule.num()) - single_weight(rule.den()) - map[r.name(v)];
            assert_eq!(shift, expected, "rule for {}", r.name(v));
        }
        assert_eq!(cmc4_core::diffalg::weight_shift(&table).unwrap(), expected);
    }
}

#[test]
fn printed_weights_from_symbol_weights() {
    let fx = fixtures();
    assert_eq!(single_weight(fx.poly("3.36").unwrap()), 4);
    assert_eq!(single_weight(fx.poly("4.47").unwrap()), 9);
    for id in ["4.36.P0", "4.36.P8", "4.36.P16"] {
        assert_eq!(single_weight(fx.poly(id).unwrap()), 10, "{id}");
    }
    for id in ["4.37.Q0", "4.37.Q12", "4.37.Q26"] {
        assert_eq!(single_weight(fx.poly(id).unwrap()), 12, "{id}");
    }
    for f in fx.iter() {
        assert_eq!(
            f.poly.weight().unwrap().value(),
            Some(single_weight(&f.poly)),
            "{}",
            f.id
        );
    }
}

/// `deg_v(q) wt(p) + deg_v(p) wt(q) - wt(v) deg_v(p) deg_v(q)`.
fn resultant_weight(p: &Poly, q: &Poly, v: &str) -> i64 {
    let id = p.vars().var(v);
    let (dp, dq) = (p.degree_in(id) as i64, q.degree_in(id) as i64);
    dq * single_weight(p) + dp * single_weight(q) - weight_map()[v] * dp * dq
}

#[test]
fn case_a_resultant_weight_and_degree() {
    let fx = fixtures();
    let r = VarTable::registry();
    let (kap, u) = (r.var("kap"), r.var("u"));
    let p = fx.poly("4.36").unwrap().deflate(kap, 2, u).unwrap();
    let q = fx.poly("4.37").unwrap().deflate(kap, 2, u).unwrap();
    assert_eq!((p.degree_in(u), q.degree_in(u)), (8, 13));
    let formula = resultant_weight(&p, &q, "u");
    assert_eq!(formula, 226);
    let res = resultant_prs(&p, &q, u).unwrap();
    assert!(!res.is_zero());
    assert_eq!(single_weight(&res), formula);
    // Setting c = 1 keeps the top y1 power of a homogeneous polynomial.
    let y1 = r.var("y1");
    let at_one = res.specialize(r.var("c"), &BigInt::one());
    assert_eq!(at_one.degree_in(y1), 214);
}

#[test]
fn kappa_resultant_is_square_of_u_resultant_pointwise() {
    let fx = fixtures();
    let (p, q) = (fx.poly("4.36").unwrap(), fx.poly("4.37").unwrap());
    let r = VarTable::registry();
    let (kap, u) = (r.var("kap"), r.var("u"));
    let (pu, qu) = (p.deflate(kap, 2, u).unwrap(), q.deflate(kap, 2, u).unwrap());
    for (c, y1) in [(1, 2), (-1, 3), (2, -5), (3, 7)] {
        let point = [("c", c), ("y1", y1)];
        let rk = sylvester_det(&univariate(p, "kap", &point), &univariate(q, "kap", &point));
        let ru = sylvester_det(&univariate(&pu, "u", &point), &univariate(&qu, "u", &point));
        assert!(!ru.is_zero());
        assert!(
            rk == &ru * &ru || rk == -(&ru * &ru),
            "at c = {c}, y1 = {y1}"
        );
    }
}

#[test]
fn case_b_resultant_weight_and_degree() {
    let fx = fixtures();
    let r = VarTable::registry();
    let (p, q) = (fx.poly("4.56").unwrap(), fx.poly("4.57").unwrap());
    let y3 = r.var("y3");
    assert_eq!((p.degree_in(y3), q.degree_in(y3)), (6, 9));
    assert_eq!((single_weight(p), single_weight(q)), (18, 29));
    let formula = resultant_weight(p, q, "y3");
    assert_eq!(formula, 174);
    let res = resultant_prs(p, q, y3).unwrap();
    assert_eq!(single_weight(&res), formula);
    let at_one = res.specialize(r.var("c"), &BigInt::one());
    assert_eq!(at_one.degree_in(r.var("y1")), 118);
    // Pointwise agreement with the rational determinant.
    for (c, y1) in [(1, 1), (2, -3)] {
        let point = [("c", c), ("y1", y1)];
        let det = sylvester_det(&univariate(p, "y3", &point), &univariate(q, "y3", &point));
        let val = univariate(&res, "y3", &point)[0].clone();
        assert!(det == val || det == -val.clone());
    }
}

#[test]
fn case_ii_content_is_a_square() {
    let (a, b) = (BigInt::from(1776889), BigInt::from(827421));
    let g = a.gcd(&b);
    assert_eq!(g, BigInt::from(961));
    assert_eq!(g, BigInt::from(31).pow(2));
    assert_eq!((&a / &g, &b / &g), (BigInt::from(1849), BigInt::from(861)));
    let report = run_lemma34(&fixtures());
    let step = report.step("3.ii.eliminated").unwrap();
    assert_eq!(
        step.fixture_match,
        FixtureMatch::UpToScalar {
            num: 1.into(),
            den: 961.into()
        }
    );
    assert_eq!(
        report.step("3.ii.substituted").unwrap().fixture_match,
        FixtureMatch::Exact
    );
}

/// Power sums of the given values.
fn power_sums(xs: &[i128]) -> Vec<i128> {
    (1..=5).map(|k| xs.iter().map(|x| x.pow(k)).sum()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn newton_identities_numerically(x in -30i128..=30, y in -30i128..=30, z in -30i128..=30, w in -30i128..=30) {
        let f = power_sums(&[x, y, z]);
        let (f1, f2, f3, f4, f5) = (f[0], f[1], f[2], f[3], f[4]);
        prop_assert_eq!(f1.pow(4) - 6 * f1.pow(2) * f2 + 3 * f2.pow(2) + 8 * f1 * f3 - 6 * f4, 0);
        prop_assert_eq!(f1.pow(5) - 5 * f1.pow(3) * f2 + 5 * f1.pow(2) * f3 + 5 * f2 * f3 - 6 * f5, 0);
        let g = power_sums(&[x, y, z, w]);
        let (g1, g2, g3, g4) = (g[0], g[1], g[2], g[3]);
        prop_assert_eq!(g1.pow(4) - 6 * g1.pow(2) * g2 + 3 * g2.pow(2) + 8 * g1 * g3 - 6 * g4, 24 * x * y * z * w);
    }
}

#[test]
fn engine_newton_forms_agree_with_numeric_evaluation() {
    let vars = VarTable::new([("x", 1), ("y", 1), ("z", 1), ("w", 1)]).unwrap();
    let f: Vec<Poly> = (1..=5u32)
        .map(|k| {
            ["x", "y", "z", "w"]
                .iter()
                .fold(Poly::zero(&vars), |acc, n| {
                    &acc + &Poly::sym(&vars, n).pow(k)
                })
        })
        .collect();
    let control = cmc4_core::replay::newton4(&f);
    let expected = ["x", "y", "z", "w"]
        .iter()
        .fold(Poly::one(&vars), |acc, n| &acc * &Poly::sym(&vars, n));
    assert_eq!(control, expected.scale(&BigInt::from(24)));
    assert!(control.leading_coeff().unwrap().is_positive());
}
