//! Prints one pass/fail line per acceptance criterion and exits nonzero if
//! any criterion fails.

mod common;

use std::time::Instant;

use cmc4_core::replay::{FixtureMatch, Replay, Stage, StageReport, StepRecord, Verdict};
use cmc4_core::{Poly, VarTable, Weight};
use num_bigint::BigInt;
use proptest::test_runner::{Config, TestRunner};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Coefficient of the monomial given by `(symbol, exponent)` pairs.
fn coeff_of(p: &Poly, mono: &[(&str, u16)]) -> BigInt {
    let vars = p.vars();
    p.terms()
        .iter()
        .find(|(m, _)| {
            vars.ids().all(|v| {
                m.exp(v)
                    == mono
                        .iter()
                        .find(|(n, _)| vars.var(n) == v)
                        .map_or(0, |x| x.1)
            })
        })
        .map_or_else(|| BigInt::from(0), |(_, c)| c.clone())
}

fn matched(s: &StepRecord) -> bool {
    matches!(
        s.fixture_match,
        FixtureMatch::Exact | FixtureMatch::UpToScalar { .. }
    )
}

fn steps_with<'a>(r: &'a StageReport, eqs: &[&str]) -> Result<Vec<&'a StepRecord>, String> {
    eqs.iter()
        .map(|e| {
            r.steps
                .iter()
                .find(|s| s.paper_eq == *e)
                .ok_or_else(|| format!("no step for {e}"))
        })
        .collect()
}

fn all_matched(r: &StageReport, eqs: &[&str]) -> Outcome {
    match steps_with(r, eqs) {
        Err(e) => outcome(false, e),
        Ok(steps) => {
            let bad: Vec<String> = steps
                .iter()
                .filter(|s| !matched(s))
                .map(|s| format!("{} {}", s.paper_eq, s.fixture_match))
                .collect();
            outcome(
                bad.is_empty(),
                if bad.is_empty() {
                    String::new()
                } else {
                    bad.join(", ")
                },
            )
        }
    }
}

fn checks_pass(r: &StageReport, names: &[&str]) -> Result<(), String> {
    for n in names {
        match r.check(n) {
            Some(c) if c.passed => {}
            Some(c) => return Err(format!("check `{n}` failed: {}", c.detail)),
            None => return Err(format!("check `{n}` missing")),
        }
    }
    Ok(())
}

fn both(a: Outcome, extra: Result<(), String>, detail: String) -> Outcome {
    match extra {
        Ok(()) if a.pass => outcome(true, detail),
        Ok(()) => a,
        Err(e) => outcome(
            false,
            if a.detail.is_empty() {
                e
            } else {
                format!("{}; {e}", a.detail)
            },
        ),
    }
}

fn criterion_1(r: &StageReport) -> Outcome {
    let m = all_matched(r, &["3.17.f1", "3.17.f2", "3.17.f3", "3.17.f4", "3.17.f5"]);
    let fast = r.elapsed.as_secs_f64() < 1.0;
    let time = format!("{:.1} ms", r.elapsed.as_secs_f64() * 1e3);
    both(
        m,
        if fast {
            Ok(())
        } else {
            Err(format!("took {time}"))
        },
        format!("f1..f5 match, {time}"),
    )
}

fn criterion_2(r: &StageReport) -> Outcome {
    let res = checks_pass(
        r,
        &[
            "degree-4 identity vanishes in three indeterminates",
            "degree-5 identity vanishes in three indeterminates",
            "four-indeterminate control equals 24*x2*x3*x4*x5",
        ],
    );
    both(
        outcome(true, ""),
        res,
        "both identities expand to 0; control is 24*x2*x3*x4*x5".into(),
    )
}

fn criterion_3(r: &StageReport) -> Outcome {
    let eqs = [
        "3.28", "3.29", "3.30", "3.31", "3.32", "3.33", "3.34", "3.35", "3.35.a1", "3.35.a2",
        "3.35.a3",
    ];
    let m = all_matched(r, &eqs);
    let blocks = ["3.35.a1", "3.35.a2", "3.35.a3"].iter().all(|e| {
        r.steps
            .iter()
            .any(|s| s.paper_eq == *e && s.fixture_match == FixtureMatch::Exact)
    });
    let a3 = r.step("3.35.a3").map(|s| s.derived.clone());
    let coeffs = a3.map(|p| {
        (
            coeff_of(&p, &[("lam", 7)]),
            coeff_of(&p, &[("c", 2), ("lam", 3)]),
        )
    });
    let ok = coeffs == Some((BigInt::from(468), BigInt::from(108)));
    both(
        m,
        if blocks && ok {
            Ok(())
        } else {
            Err(format!(
                "blocks exact: {blocks}, a3 coefficients {coeffs:?}"
            ))
        },
        "3.28-3.35 match; a1, a2, a3 exact; a3 has 468*lam^7 and 108*c^2*lam^3".into(),
    )
}

fn criterion_4(r: &StageReport, fx: &cmc4_core::FixtureSet) -> Outcome {
    let printed = fx.poly("3.ii").ok();
    let sub = r.step("3.ii.substituted");
    let elim = r.step("3.ii.eliminated");
    match (printed, sub, elim) {
        (Some(p), Some(s), Some(e)) => {
            let content = p.content();
            outcome(
                &s.derived == p,
                format!(
                    "substitution route keeps the integer content and gives {} exactly; \
                     the printed polynomial has content {content}, so its primitive part is {} ({})",
                    s.derived, e.derived, e.fixture_match
                ),
            )
        }
        _ => outcome(false, "case (ii) steps missing"),
    }
}

fn criterion_5(r: &StageReport) -> Outcome {
    let exact = ["3.43.b1", "3.43.b2"].iter().all(|e| {
        r.steps
            .iter()
            .any(|s| s.paper_eq == *e && s.fixture_match == FixtureMatch::Exact)
    });
    let c = r
        .step("3.43.b2")
        .map(|s| coeff_of(&s.derived, &[("lam", 7), ("lam5", 1)]));
    let ok = c == Some(BigInt::from(-1728));
    outcome(
        exact && ok,
        format!("b1, b2 exact: {exact}; coefficient of lam^7*lam5 in b2: {c:?}"),
    )
}

fn criterion_6(r: &StageReport) -> Outcome {
    let p: Vec<&StepRecord> = r
        .steps
        .iter()
        .filter(|s| s.paper_eq.starts_with("4.36.P"))
        .collect();
    let q: Vec<&StepRecord> = r
        .steps
        .iter()
        .filter(|s| s.paper_eq.starts_with("4.37.Q"))
        .collect();
    let unit = |s: &&StepRecord| match &s.fixture_match {
        FixtureMatch::Exact => Some(1),
        FixtureMatch::UpToScalar { num, den }
            if *den == BigInt::from(1) && (*num == BigInt::from(1) || *num == BigInt::from(-1)) =>
        {
            Some(if *num == BigInt::from(1) { 1 } else { -1 })
        }
        _ => None,
    };
    let scalars: Vec<Option<i32>> = p.iter().chain(q.iter()).map(unit).collect();
    let common = scalars.first().copied().flatten();
    let same = common.is_some() && scalars.iter().all(|s| *s == common);
    let wp = p.iter().all(|s| s.weight == Weight::Homogeneous(10));
    let wq = q.iter().all(|s| s.weight == Weight::Homogeneous(12));
    outcome(
        p.len() == 9 && q.len() == 14 && same && wp && wq,
        format!(
            "{} P blocks (weight 10: {wp}), {} Q blocks (weight 12: {wq}); every block equals the printed one times {:?}, the overall sign of the equation",
            p.len(),
            q.len(),
            common
        ),
    )
}

fn criterion_7(r: &StageReport) -> Outcome {
    let res = checks_pass(
        r,
        &[
            "u-resultant is nonzero",
            "u-resultant has weight 226",
            "primitive u-resultant has y1-degree 214",
            "subresultant backend agrees",
            "kap-resultant is the square of the u-resultant",
            "kap-resultant has y1-degree 428",
        ],
    );
    let t = |id: &str| r.step(id).map_or(0.0, |s| s.elapsed.as_secs_f64());
    both(
        outcome(r.verdict == Verdict::Certified, format!("stage {}", r.verdict)),
        res,
        format!(
            "u-resultant weight 226, primitive y1-degree 214; kap-resultant = square, y1-degree 428; u in {:.2} s, kap in {:.1} s",
            t("res_u"),
            t("res_kap")
        ),
    )
}

fn criterion_8(r: &StageReport) -> Outcome {
    let m = all_matched(r, &["4.47", "4.48", "4.49", "4.50", "4.51"]);
    let res = checks_pass(
        r,
        &["4.50 carries f1 and f2 once", "4.51 carries f1 and f2 once"],
    );
    let raw: Vec<String> = ["4.50", "4.51"]
        .iter()
        .filter_map(|e| r.steps.iter().find(|s| s.paper_eq == *e))
        .flat_map(|s| s.notes.iter().map(move |n| format!("{}: {n}", s.paper_eq)))
        .collect();
    both(
        m,
        res,
        format!(
            "4.47-4.51 match; f1, f2 have multiplicity 1 in both; raw resultant {}",
            raw.join("; ")
        ),
    )
}

fn criterion_9(r: &StageReport) -> Outcome {
    let m = all_matched(r, &["4.52", "4.53", "4.54", "4.55"]);
    let res = checks_pass(
        r,
        &[
            "4.52.g divides both products",
            "4.52 with 4.52.g != 0 forces y1 constant",
            "B.1 with 4.52.g = 0: e1(y1) vanishes",
            "4.54.g divides both products",
            "4.54 with 4.54.g != 0 forces y3 constant",
            "B.2 with 4.54.g = 0: e1(y3) vanishes",
        ],
    );
    both(
        m,
        res,
        "4.52-4.55 match; all four branches force a constant".into(),
    )
}

fn criterion_10(r: &StageReport) -> Outcome {
    let res = checks_pass(
        r,
        &[
            "y3-resultant is nonzero",
            "y3-resultant has weight 174",
            "primitive y3-resultant has y1-degree 118",
        ],
    );
    both(
        outcome(true, ""),
        res,
        "nonzero, weight 174, primitive y1-degree 118".into(),
    )
}

fn criterion_11(frame: &StageReport, case_a: &StageReport) -> Outcome {
    let m = all_matched(
        frame,
        &[
            "4.10", "4.11", "4.12", "4.13", "4.13.k2", "4.13.k3", "4.13.k4", "4.14", "4.16",
            "4.17", "4.18", "4.38", "4.39", "4.40",
        ],
    );
    let def = all_matched(case_a, &["4.19"]);
    let res = checks_pass(
        frame,
        &[
            "first bianchi identity for all triples",
            "k blocks share one scalar",
        ],
    );
    let m = both(m, res, String::new());
    both(
        m,
        if def.pass { Ok(()) } else { Err(def.detail) },
        "4.10-4.14, 4.16-4.18 and 4.38-4.40 match; 4.19 is the definition of y1; bianchi holds on the constraint locus".into(),
    )
}

fn criterion_12() -> Outcome {
    use common::*;
    let mut failures = Vec::new();
    let mut run =
        |name: &str, cases: u32, f: &mut dyn FnMut(&mut TestRunner) -> Result<(), String>| {
            let mut runner = TestRunner::new(Config {
                cases,
                failure_persistence: None,
                ..Config::default()
            });
            if let Err(e) = f(&mut runner) {
                failures.push(format!("{name}: {e}"));
            }
        };
    run("ring axioms", 1000, &mut |r| {
        let s = (
            poly_in(small_table(), 3, 5),
            poly_in(small_table(), 3, 5),
            poly_in(small_table(), 3, 5),
            point(3),
        );
        r.run(&s, |(a, b, c, pt)| ring_case(&a, &b, &c, &pt))
            .map_err(|e| e.to_string())
    });
    run("parse/render round trip", 1000, &mut |r| {
        r.run(&registry_poly(), |p| round_trip_case(&p))
            .map_err(|e| e.to_string())
    });
    run("resultant backends", 100, &mut |r| {
        let s = (poly_in(bivariate(), 4, 5), poly_in(bivariate(), 4, 5));
        r.run(&s, |(p, q)| backends_case(&p, &q))
            .map_err(|e| e.to_string())
    });
    run("specialization soundness", 100, &mut |r| {
        let s = (
            poly_in(bivariate(), 3, 5),
            poly_in(bivariate(), 3, 5),
            -6i64..=6,
        );
        r.run(&s, |(p, q, a)| specialization_case(&p, &q, a))
            .map_err(|e| e.to_string())
    });
    let homog = fixture_homogeneity();
    if let Err(id) = &homog {
        failures.push(format!("fixture {id} is not homogeneous"));
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "1000 ring, 1000 round-trip, 100 backend, 100 specialization cases; {} fixtures homogeneous",
                homog.unwrap_or(0)
            )
        } else {
            failures.join("; ")
        },
    )
}

fn criterion_13(r: &StageReport) -> Outcome {
    let ok_verdict = matches!(r.verdict, Verdict::Certified | Verdict::BestEffort);
    let res = checks_pass(r, &["every intermediate eliminant is nonzero"]);
    let lowest = r
        .steps
        .iter()
        .filter(|s| s.id.starts_with("closure."))
        .min_by_key(|s| {
            let vars = VarTable::registry();
            ["lam5", "lam4", "lam3", "lam2", "lam1"]
                .iter()
                .take_while(|n| !s.derived.contains(vars.var(n)))
                .count() as i64
                * -1
        })
        .map(|s| format!("{} ({})", s.id, s.degree_summary()))
        .unwrap_or_default();
    both(
        outcome(ok_verdict, format!("stage {}", r.verdict)),
        res,
        format!(
            "stage {}; {}; lowest-order relation {lowest}",
            r.verdict,
            r.notes.join("; ")
        ),
    )
}

fn main() {
    let start = Instant::now();
    let fx = common::fixtures();
    let replay = Replay::new(fx.clone());
    let run = |s: Stage| replay.run(s);
    let (ids, l33, l34) = (
        run(Stage::Identities),
        run(Stage::Lemma33),
        run(Stage::Lemma34),
    );
    let (frame, case_a, case_b, c3) = (
        run(Stage::Frame),
        run(Stage::CaseA),
        run(Stage::CaseB),
        run(Stage::CaseIII),
    );

    let results = [
        ("radial closed forms", criterion_1(&l33)),
        ("power-sum identities", criterion_2(&ids)),
        ("cascade with a1, a2, a3 blocks", criterion_3(&l34)),
        ("case (ii) terminal relation", criterion_4(&l34, &fx)),
        ("case (iii) b1, b2 blocks", criterion_5(&l34)),
        ("case A P and Q tables", criterion_6(&case_a)),
        ("case A terminal resultants", criterion_7(&case_a)),
        ("case B relations and factors", criterion_8(&case_b)),
        ("case B subcases", criterion_9(&case_b)),
        ("case B terminal resultant", criterion_10(&case_b)),
        ("frame stage", criterion_11(&frame, &case_a)),
        ("property suites", criterion_12()),
        ("case (iii) closure", criterion_13(&c3)),
    ];
    let mut failed = 0;
    for (i, (title, o)) in results.iter().enumerate() {
        println!(
            "{} criterion {:>2} {title}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "{} of {} criteria pass ({:.1} s)",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
