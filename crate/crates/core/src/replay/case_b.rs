//! Vanishing cross coefficients: `w3, w4` are determined by `w2`.

use num_bigint::BigInt;

use super::case_a::{gauss_scalar_relations, to_y};
use super::{rp, Stage, StageBuilder, StageReport};
use crate::diffalg::{derive, derive_frac, DerivationTable, Regime};
use crate::elim::{eliminate, remove_factor, resultant_traced, strip_factors_compressed};
use crate::exprio::FixtureSet;
use crate::poly::{FracPoly, Poly, VarTable, Weight};

type StageResult<T> = Result<T, Box<dyn std::error::Error + Send + Sync>>;

fn f(s: &str) -> FracPoly {
    rp(s).into()
}

/// Replaces even powers of `w2` through `w2^2 = red`.
fn reduce_w2(p: &Poly, red: &FracPoly) -> StageResult<FracPoly> {
    let w2 = VarTable::registry().var("w2");
    let mut out = FracPoly::zero(p.vars());
    for (k, co) in p.coefficients_in(w2).iter().enumerate() {
        if co.is_zero() {
            continue;
        }
        let odd = if k % 2 == 1 { rp("w2") } else { rp("1") };
        out = &out + &(&red.pow((k / 2) as u32) * &FracPoly::from(co * &odd));
    }
    Ok(out)
}

/// `e1` on `w2` and the curvatures once `w3, w4` are eliminated.
fn mu_route() -> StageResult<DerivationTable> {
    let r = VarTable::registry();
    let lam1 = FracPoly::over_integer(rp("-(mu2 + mu3 + mu4)"), 3)?;
    let w = [
        f("w2"),
        FracPoly::new(rp("-(mu2*mu3 + c)"), rp("w2"))?,
        FracPoly::new(rp("-(mu2*mu4 + c)"), rp("w2"))?,
    ];
    let mut t = DerivationTable::new(Regime::CaseB, &r).with_rule("c", FracPoly::zero(&r));
    t = t.with_rule("w2", &f("w2^2 + c") + &(&lam1 * &f("mu2")));
    for (i, m) in ["mu2", "mu3", "mu4"].iter().enumerate() {
        t = t.with_rule(m, &(&f(m) - &lam1) * &w[i]);
    }
    Ok(t)
}

pub(crate) fn run_case_b(fixtures: &FixtureSet) -> StageReport {
    let mut b = StageBuilder::new(Stage::CaseB, fixtures);
    if let Err(e) = case_b_steps(&mut b) {
        b.abort("case B", e);
    }
    b.finish(false)
}

fn case_b_steps(b: &mut StageBuilder<'_>) -> StageResult<()> {
    let r = VarTable::registry();
    let builtin = DerivationTable::case_b();
    let declared = builtin.declared().to_vec();
    let (y1, y2, y3) = (r.var("y1"), r.var("y2"), r.var("y3"));
    let zero = BigInt::from(0);

    // Scalar Gauss relations at a = 0.
    let rels: Vec<Poly> = gauss_scalar_relations()?
        .iter()
        .map(|p| p.specialize(r.var("a"), &zero))
        .collect();
    for (p, eq) in rels.iter().zip(["4.39", "4.40", "4.38"]) {
        b.step(&format!("gauss.a0.{eq}"), eq, p, "residual", &[], vec![]);
    }
    let (r39, r40, r38) = (&rels[0], &rels[1], &rels[2]);
    b.step("w3.solved", "4.41", r38, "linear solve", &[], vec![]);
    b.step("w4.solved", "4.42", r39, "linear solve", &[], vec![]);
    let w3 = FracPoly::new(-r38.coeff_in(r.var("w3"), 0), r38.coeff_in(r.var("w3"), 1))?;
    let w4 = FracPoly::new(-r39.coeff_in(r.var("w4"), 0), r39.coeff_in(r.var("w4"), 1))?;
    let sub = r40
        .substitute(r.var("w3"), &w3)?
        .substitute(r.var("w4"), &w4)?;
    let r443 = sub.num().primitive_part()?;
    b.step("w2.squared", "4.43", &r443, "substitute", &[], vec![]);
    let w2v = r.var("w2");
    let red = FracPoly::new(-r443.coeff_in(w2v, 0), r443.coeff_in(w2v, 2))?;
    b.check(
        "4.43 is quadratic and even in w2",
        r443.degree_in(w2v) == 2 && r443.coeff_in(w2v, 1).is_zero(),
        String::new(),
    );

    // Radial derivatives of y1, y2, y3 with the prefactor -3 w2 (mu3 mu4 + c).
    let table = mu_route()?;
    let pre = f("-3*w2*(mu3*mu4 + c)");
    let mut n_rules = Vec::new();
    for (k, e) in [
        "mu2 + mu3 + mu4",
        "mu2*mu3 + mu2*mu4 + mu3*mu4",
        "mu2*mu3*mu4",
    ]
    .iter()
    .enumerate()
    {
        b.tick();
        let d = &derive(&rp(e), &table)? * &pre;
        let d = d.cancel(&rp("w2"));
        let reduced = reduce_w2(d.num(), &red)?;
        let reduced = FracPoly::new(reduced.num().clone(), reduced.den() * d.den())?;
        let poly = reduced
            .try_into_poly()
            .ok_or("prefactor does not clear denominators")?;
        b.check(
            &format!("e1(y{}) is free of w2", k + 1),
            !poly.contains(w2v),
            String::new(),
        );
        let ny = to_y(&poly)?;
        b.step(
            &format!("N(y{})", k + 1),
            &format!("4.{}", 44 + k),
            &ny,
            "symmetric reduction",
            &[],
            vec![],
        );
        n_rules.push(ny);
    }
    let agree = [y1, y2, y3]
        .iter()
        .zip(&n_rules)
        .all(|(v, n)| builtin.rule(*v) == Some(&FracPoly::from(n.clone())));
    b.check(
        "derived rules agree with the built-in table",
        agree,
        String::new(),
    );
    let mut ytable = DerivationTable::new(Regime::CaseB, &r).with_rule("c", FracPoly::zero(&r));
    for (v, n) in [y1, y2, y3].iter().zip(&n_rules) {
        ytable.set_rule(*v, n.clone().into());
    }

    // The biharmonic equation along e1.
    b.tick();
    let lam1 = FracPoly::over_integer(rp("-(mu2 + mu3 + mu4)"), 3)?;
    let sum_w = &(&f("w2") + &w3) + &w4;
    let d1 = derive_frac(&lam1, &table)?;
    let d2 = derive_frac(&d1, &table)?;
    let h = lam1.scale(&BigInt::from(-1)) * FracPoly::over_integer(rp("1"), 2)?;
    let s = lam1.pow(2) + f("mu2^2 + mu3^2 + mu4^2");
    let big_r = f("12*c") + h.pow(2).scale(&BigInt::from(16)) - s;
    let e = -d2 + &d1 * &sum_w + &lam1 * &(f("8*c") + lam1.pow(2).scale(&BigInt::from(4)) - big_r);
    let e = e.cancel(&rp("w2"));
    let reduced = reduce_w2(e.num(), &red)?;
    b.check(
        "biharmonic equation is free of w2 after reduction",
        !reduced.num().contains(w2v),
        String::new(),
    );
    let (num, _) = strip_factors_compressed(reduced.num(), &declared)?;
    let r447 = to_y(&num.primitive_part()?)?;
    b.step(
        "biharmonic",
        "4.47",
        &r447,
        "symmetric reduction",
        &declared,
        vec![],
    );

    b.tick();
    let r448 = derive(&r447, &ytable)?.num().primitive_part()?;
    b.step("e1(4.47)", "4.48", &r448, "derive", &declared, vec![]);
    b.tick();
    let r449 = derive(&r448, &ytable)?.num().primitive_part()?;
    b.step("e1(4.48)", "4.49", &r449, "derive", &declared, vec![]);

    let f1 = rp("c*y1 - 3*y3");
    let f2 = rp("c^3 - c*y1*y3 - 2*y3^2");
    b.step("f1", "4.50.f1", &f1, "given", &[], vec![]);
    b.step("f2", "4.50.f2", &f2, "given", &[], vec![]);
    let mut cofactors = Vec::new();
    for (other, eq, cof) in [(&r448, "4.50", "4.56"), (&r449, "4.51", "4.57")] {
        b.tick();
        let e = eliminate(&r447, other, y2, &declared)?;
        // Only the zero set matters: repeated factors are kept once.
        let mut p = e.eliminated.clone();
        let mut mults = Vec::new();
        for g in [&f1, &f2] {
            let (q, k) = remove_factor(&p, g)?;
            mults.push(k);
            p = if k > 0 { &q * g } else { q };
        }
        b.step(
            &format!(
                "res_y2(4.47, {})",
                if eq == "4.50" { "4.48" } else { "4.49" }
            ),
            eq,
            &p,
            &e.method.to_string(),
            &declared,
            e.removed_factors.clone(),
        );
        b.note(format!(
            "multiplicities of f1, f2 in the resultant: {}, {}",
            mults[0], mults[1]
        ));
        let mut cof_poly = p.clone();
        for g in [&f1, &f2] {
            cof_poly = remove_factor(&cof_poly, g)?.0;
        }
        b.step(
            &format!("{eq}.cofactor"),
            cof,
            &cof_poly,
            "remove factor",
            &declared,
            vec![],
        );
        if let Some(fx) = b.fixture(eq).cloned() {
            let k1 = remove_factor(&fx, &f1)?.1;
            let k2 = remove_factor(&fx, &f2)?.1;
            b.check(
                &format!("{eq} carries f1 and f2 once"),
                k1 == 1 && k2 == 1,
                format!("{k1}, {k2}"),
            );
        }
        cofactors.push(cof_poly);
    }

    subcase_b1(b, &r447, &r448, &n_rules, &declared)?;
    subcase_b2(b, &r447, &r448, &n_rules, &declared)?;

    // B.3: both f1 and f2 nonzero.
    b.tick();
    let (res, method) = resultant_traced(&cofactors[0], &cofactors[1], y3)?;
    b.step(
        "res_y3(4.56, 4.57)",
        "",
        &res,
        &method.to_string(),
        &[],
        vec![],
    );
    b.check("y3-resultant is nonzero", !res.is_zero(), String::new());
    let w = res.weight()?;
    b.check(
        "y3-resultant has weight 174",
        w == Weight::Homogeneous(174),
        format!("{w}"),
    );
    let (stripped, removed) = strip_factors_compressed(&res, &[rp("c")])?;
    let prim = stripped.primitive_part()?;
    b.step("res_y3.primitive", "", &prim, "strip c", &[], removed);
    b.check(
        "primitive y3-resultant has y1-degree 118",
        prim.degree_in(y1) == 118,
        format!("{}", prim.degree_in(y1)),
    );
    let only = prim.used_vars().iter().all(|&v| v == y1 || v == r.var("c"));
    b.check("y3-resultant involves only y1 and c", only, String::new());
    Ok(())
}

/// True when `p` is a nonzero polynomial in `c` and `var` that involves
/// `var`, which then has to be constant.
fn constant_forcing(p: &Poly, var: &str) -> bool {
    let r = VarTable::registry();
    let v = r.var(var);
    !p.is_zero() && p.contains(v) && p.used_vars().iter().all(|&u| u == v || u == r.var("c"))
}

/// `f1 = 0`: `y3 = c y1 / 3`.
fn subcase_b1(
    b: &mut StageBuilder<'_>,
    r447: &Poly,
    r448: &Poly,
    n: &[Poly],
    declared: &[Poly],
) -> StageResult<()> {
    let r = VarTable::registry();
    let (y2, y3) = (r.var("y2"), r.var("y3"));
    let y3v = FracPoly::over_integer(rp("c*y1"), 3)?;
    branch_products(
        b,
        r447,
        r448,
        y3,
        &y3v,
        ("4.52", "4.53", "4.52.g"),
        declared,
        "y1",
        y2,
    )?;
    // g = 0: y2 = -(9c + 4 y1^2)/9, and e1(y1) must vanish there.
    let y2v = FracPoly::over_integer(rp("-(9*c + 4*y1^2)"), 9)?;
    let ey1 = n[0].substitute(y3, &y3v)?.num().substitute(y2, &y2v)?;
    b.step("B.1.ii e1(y1)", "", ey1.num(), "substitute", &[], vec![]);
    b.check(
        "B.1 with 4.52.g = 0: e1(y1) vanishes",
        ey1.is_zero(),
        String::new(),
    );
    Ok(())
}

/// `f2 = 0`: `y1 = (c^3 - 2 y3^2) / (c y3)`.
fn subcase_b2(
    b: &mut StageBuilder<'_>,
    r447: &Poly,
    r448: &Poly,
    n: &[Poly],
    declared: &[Poly],
) -> StageResult<()> {
    let r = VarTable::registry();
    let (y1, y2) = (r.var("y1"), r.var("y2"));
    let y1v = FracPoly::new(rp("c^3 - 2*y3^2"), rp("c*y3"))?;
    branch_products(
        b,
        r447,
        r448,
        y1,
        &y1v,
        ("4.54", "4.55", "4.54.g"),
        declared,
        "y3",
        y2,
    )?;
    let y2v = FracPoly::new(rp("y3^2 - 2*c^3"), rp("c^2"))?;
    let ey3 = n[2].substitute(y1, &y1v)?.num().substitute(y2, &y2v)?;
    b.step("B.2.ii e1(y3)", "", ey3.num(), "substitute", &[], vec![]);
    b.check(
        "B.2 with 4.54.g = 0: e1(y3) vanishes",
        ey3.is_zero(),
        String::new(),
    );
    Ok(())
}

/// Substitutes the branch value into the biharmonic relation and its
/// derivative, checks the printed products, and eliminates `y2` between the cofactors of the common factor.
#[allow(clippy::too_many_arguments)]
fn branch_products(
    b: &mut StageBuilder<'_>,
    r447: &Poly,
    r448: &Poly,
    var: crate::poly::VarId,
    value: &FracPoly,
    ids: (&str, &str, &str),
    declared: &[Poly],
    survivor: &str,
    y2: crate::poly::VarId,
) -> StageResult<()> {
    let (e1, e2, g_id) = ids;
    let declared_ext: Vec<Poly> = declared.iter().cloned().chain([rp("y3")]).collect();
    b.tick();
    let p = r447.substitute(var, value)?.num().clone();
    let (p, removed) = strip_factors_compressed(&p, &declared_ext)?;
    let p = p.primitive_part()?;
    b.step(
        &format!("4.47 on {e1}"),
        e1,
        &p,
        "substitute",
        &declared_ext,
        removed,
    );
    b.tick();
    let q = r448.substitute(var, value)?.num().clone();
    let (q, removed) = strip_factors_compressed(&q, &declared_ext)?;
    let q = q.primitive_part()?;
    b.step(
        &format!("4.48 on {e1}"),
        e2,
        &q,
        "substitute",
        &declared_ext,
        removed,
    );
    let g = b.fixture(g_id).cloned().ok_or("missing common factor")?;
    let (gp, kp) = remove_factor(&p, &g)?;
    let (gq, kq) = remove_factor(&q, &g)?;
    b.check(
        &format!("{g_id} divides both products"),
        kp >= 1 && kq >= 1,
        format!("{kp}, {kq}"),
    );
    b.tick();
    let res = eliminate(&gp, &gq, y2, &declared_ext)?;
    b.step(
        &format!("{e1}.i res_y2"),
        "",
        &res.eliminated,
        &res.method.to_string(),
        &declared_ext,
        res.removed_factors.clone(),
    );
    b.check(
        &format!("{e1} with {g_id} != 0 forces {survivor} constant"),
        constant_forcing(&res.eliminated, survivor),
        format!("{}", res.eliminated),
    );
    Ok(())
}
