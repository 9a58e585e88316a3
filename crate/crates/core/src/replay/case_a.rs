//! Nonvanishing cross coefficients: `w_i = kap mu_i + tau`.

use num_bigint::BigInt;
use num_traits::Signed;

use super::{rp, Stage, StageBuilder, StageReport};
use crate::diffalg::{derive_frac, derive_on_locus, DerivationTable, Regime};
use crate::elim::{
    eliminate, resultant_prs, resultant_traced, solve_linear, strip_factors_compressed,
};
use crate::exprio::FixtureSet;
use crate::frame::{CrossCoefficients, FrameModel};
use crate::poly::symmetric::{elementary, to_elementary};
use crate::poly::{FracPoly, Poly, PolyError, VarId, VarTable, Weight};

type StageResult<T> = Result<T, Box<dyn std::error::Error + Send + Sync>>;

fn reg() -> std::sync::Arc<VarTable> {
    VarTable::registry()
}

fn f(s: &str) -> FracPoly {
    rp(s).into()
}

fn mus() -> [VarId; 3] {
    let r = reg();
    [r.var("mu2"), r.var("mu3"), r.var("mu4")]
}

fn ys() -> [VarId; 3] {
    let r = reg();
    [r.var("y1"), r.var("y2"), r.var("y3")]
}

/// Rewrites a polynomial symmetric in `mu2, mu3, mu4` through `y1, y2, y3`.
pub(crate) fn to_y(p: &Poly) -> Result<Poly, PolyError> {
    to_elementary(p, &mus(), &ys())
}

/// `den * x - num`.
fn relation(x: &str, value: &FracPoly) -> Poly {
    &(value.den() * &rp(x)) - value.num()
}

/// `e1(kap)` and `e1(tau)` from `e1(w) = w^2 + lam1 mu + c` and
/// `e1(mu) = (mu - lam1) w` applied to `w = kap mu + tau`, where `mu` is any
/// of the three curvatures and `lam1 = -y1/3`.
fn kappa_tau_rules(b: &mut StageBuilder<'_>) -> StageResult<(FracPoly, FracPoly)> {
    let r = reg();
    let (k_sym, t_sym) = ("Ek", "Et");
    let vars = r.extended([(k_sym, 1), (t_sym, 2)])?;
    let p = |s: &str| -> FracPoly { crate::exprio::parse(s, &vars).expect("valid").into() };
    let lam1 = FracPoly::over_integer(crate::exprio::parse("-y1", &vars)?, 3)?;
    let (mu, kap, tau, c) = (p("mu2"), p("kap"), p("tau"), p("c"));
    let w = &(&kap * &mu) + &tau;
    let e1_mu = &(&mu - &lam1) * &w;
    let e1_w_rule = &(&(&w * &w) + &(&lam1 * &mu)) + &c;
    let e1_w_chain = &(&(&p(k_sym) * &mu) + &(&kap * &e1_mu)) + &p(t_sym);
    let res = (&e1_w_chain - &e1_w_rule).num().clone();
    let muv = vars.var("mu2");
    let quad = res.coeff_in(muv, 2);
    b.check(
        "mu^2 terms cancel in the rule for e1(w)",
        quad.is_zero(),
        format!("{quad}"),
    );
    let ek = solve_linear(&res.coeff_in(muv, 1), vars.var(k_sym), &[])?;
    let et = solve_linear(&res.coeff_in(muv, 0), vars.var(t_sym), &[])?;
    let back = |x: &FracPoly| -> StageResult<FracPoly> {
        Ok(FracPoly::new(x.num().to_table(&r)?, x.den().to_table(&r)?)?)
    };
    let (ek, et) = (back(&ek.value)?, back(&et.value)?);
    b.step(
        "e1(kap)",
        "4.24",
        ek.num(),
        "coefficient match",
        &[],
        vec![],
    );
    b.step(
        "e1(tau)",
        "4.25",
        et.num(),
        "coefficient match",
        &[],
        vec![],
    );
    Ok((ek, et))
}

/// The derivation `e1` on `mu_i, kap, tau` with `w_i = kap mu_i + tau`.
fn mu_route(ek: &FracPoly, et: &FracPoly) -> StageResult<DerivationTable> {
    let r = reg();
    let sum: FracPoly = rp("mu2 + mu3 + mu4").into();
    let y1 = r.var("y1");
    let mut t = DerivationTable::new(Regime::CaseA, &r).with_rule("c", FracPoly::zero(&r));
    t = t
        .with_rule("kap", ek.substitute(y1, &sum)?)
        .with_rule("tau", et.substitute(y1, &sum)?);
    for m in ["mu2", "mu3", "mu4"] {
        let rule =
            FracPoly::over_integer(rp(&format!("(3*{m} + mu2 + mu3 + mu4)*(kap*{m} + tau)")), 3)?;
        t = t.with_rule(m, rule);
    }
    Ok(t)
}

/// `e1` of a symmetric polynomial, rewritten through `y1, y2, y3`.
fn derive_sym(p: &Poly, table: &DerivationTable) -> StageResult<FracPoly> {
    let d = derive_frac(&p.clone().into(), table)?;
    Ok(FracPoly::new(to_y(d.num())?, to_y(d.den())?)?)
}

/// The three scalar relations `R(e_i, e_j) e_i` with `e_j(a) = 0`, each
/// normalized so that `c` has coefficient 1.
pub(crate) fn gauss_scalar_relations() -> StageResult<Vec<Poly>> {
    let model = FrameModel::new(CrossCoefficients::Parametrized)?;
    let r = reg();
    let mut out = Vec::new();
    for (i, j, k) in [(2, 4, 2), (3, 4, 3), (2, 3, 2)] {
        let res = model.gauss_residual(i, j, k)?;
        let mut found = None;
        for comp in &res.0 {
            let mut n = comp.num().clone();
            for d in ["D2a", "D3a", "D4a"] {
                n = n.specialize(model.var(d), &BigInt::from(0));
            }
            if n.is_zero() || n.contains(model.var("Da")) {
                continue;
            }
            let (s, _) = strip_factors_compressed(&n, model.declared())?;
            let s = s.to_table(&r)?.primitive_part()?;
            let cc = s
                .coeff_in(r.var("c"), 1)
                .constant_value()
                .unwrap_or_default();
            let s = if cc.is_negative() { -s } else { s };
            found = Some(s);
        }
        out.push(found.ok_or("no scalar relation")?);
    }
    Ok(out)
}

pub(crate) fn run_case_a(fixtures: &FixtureSet, kappa_resultant: bool) -> StageReport {
    let mut b = StageBuilder::new(Stage::CaseA, fixtures);
    if let Err(e) = case_a_steps(&mut b, kappa_resultant) {
        b.abort("case A", e);
    }
    b.finish(false)
}

fn case_a_steps(b: &mut StageBuilder<'_>, kappa_resultant: bool) -> StageResult<()> {
    let r = reg();
    let declared: Vec<Poly> = DerivationTable::case_a().declared().to_vec();
    let kap = r.var("kap");
    let tau = r.var("tau");

    // The symmetric functions of the three curvatures.
    let es = elementary(&rp("1"), &mus());
    for (k, e) in es.iter().enumerate() {
        let rel = &rp(&format!("y{}", k + 1)) - e;
        b.step(
            &format!("y{}", k + 1),
            &format!("4.{}", 19 + k),
            &rel,
            "definition",
            &[],
            vec![],
        );
    }

    b.tick();
    let (ek, et) = kappa_tau_rules(b)?;
    let mu_table = mu_route(&ek, &et)?;

    // Sum of the three scalar Gauss relations under w_i = kap mu_i + tau.
    b.tick();
    let rels = gauss_scalar_relations()?;
    let mut sum = Poly::zero(&r);
    for p in &rels {
        sum = &sum + p;
    }
    for (i, m) in ["mu2", "mu3", "mu4"].iter().enumerate() {
        sum = sum.substitute_poly(
            r.var(&format!("w{}", i + 2)),
            &rp(&format!("kap*{m} + tau")),
        )?;
    }
    b.check(
        "a^2 terms cancel in the sum",
        !sum.contains(r.var("a")),
        String::new(),
    );
    let r426 = to_y(&sum)?;
    b.step(
        "gauss.sum",
        "4.26",
        &r426,
        "symmetric reduction",
        &declared,
        vec![],
    );
    let y2_sol = solve_linear(&r426, r.var("y2"), &declared)?;
    b.check(
        "y2 coefficient is nonvanishing",
        y2_sol.denominator_declared,
        format!("{}", y2_sol.value.den()),
    );
    b.step(
        "y2.solved",
        "4.27",
        &relation("y2", &y2_sol.value),
        "linear solve",
        &declared,
        vec![],
    );

    // Radial derivatives of the symmetric functions.
    b.tick();
    let mut y_rules = Vec::new();
    for (k, e) in es.iter().enumerate() {
        y_rules.push(derive_sym(e, &mu_table)?);
        if k == 0 {
            b.step(
                "e1(y1)",
                "4.28",
                y_rules[0].num(),
                "symmetric reduction",
                &[],
                vec![],
            );
        }
    }
    let builtin = DerivationTable::case_a();
    let mut agree = builtin.rule(kap) == Some(&ek) && builtin.rule(tau) == Some(&et);
    for (k, y) in ys().iter().enumerate() {
        agree &= builtin.rule(*y) == Some(&y_rules[k]);
    }
    b.check(
        "derived rules agree with the built-in table",
        agree,
        String::new(),
    );
    let mut table = DerivationTable::new(Regime::CaseA, &r).with_rule("c", FracPoly::zero(&r));
    table.set_rule(kap, ek.clone());
    table.set_rule(tau, et.clone());
    for (k, y) in ys().iter().enumerate() {
        table.set_rule(*y, y_rules[k].clone());
    }

    // e1(y1^2 - 2 y2) two ways.
    b.tick();
    let y2v = r.var("y2");
    let sq = &f("y1^2") - &y2_sol.value.scale(&BigInt::from(2));
    let lhs = derive_frac(&sq, &table)?.substitute(y2v, &y2_sol.value)?;
    b.step(
        "e1(y1^2 - 2*y2)",
        "4.29",
        lhs.num(),
        "derive",
        &declared,
        vec![],
    );
    let sq_mu = derive_sym(&rp("mu2^2 + mu3^2 + mu4^2"), &mu_table)?;
    b.step(
        "e1(mu2^2 + mu3^2 + mu4^2)",
        "4.30",
        sq_mu.num(),
        "symmetric reduction",
        &[],
        vec![],
    );
    let rhs = sq_mu.substitute(y2v, &y2_sol.value)?;
    let (r431, _) = strip_factors_compressed((&lhs - &rhs).num(), &declared)?;
    let r431 = r431.primitive_part()?;
    b.step("y3.relation", "4.31", &r431, "equate", &declared, vec![]);
    let y3_sol = solve_linear(&r431, r.var("y3"), &declared)?;
    b.check(
        "y3 coefficient is nonvanishing",
        y3_sol.denominator_declared,
        format!("{}", y3_sol.value.den()),
    );
    b.step(
        "y3.solved",
        "4.32",
        &relation("y3", &y3_sol.value),
        "linear solve",
        &declared,
        vec![],
    );
    let locus_agree = builtin.locus().iter().all(|(v, val)| {
        (*v == y2v && *val == y2_sol.value) || (*v == r.var("y3") && *val == y3_sol.value)
    });
    b.check(
        "derived locus agrees with the built-in table",
        locus_agree,
        String::new(),
    );
    let table = table
        .with_locus("y2", y2_sol.value.clone())
        .with_locus("y3", y3_sol.value.clone());
    let table = declared
        .iter()
        .fold(table, |t, d| t.with_declared(d.clone()));

    // The biharmonic equation along e1.
    b.tick();
    let r433 = biharmonic(&mu_table, &r)?;
    b.step(
        "biharmonic",
        "4.33",
        &r433,
        "symmetric reduction",
        &declared,
        vec![],
    );

    b.tick();
    let r434 = derive_on_locus(&r433, &table)?;
    b.step(
        "e1(4.33)",
        "4.34",
        &r434,
        "derive on locus",
        &declared,
        vec![],
    );
    b.tick();
    let r435 = derive_on_locus(&r434, &table)?;
    b.step(
        "e1(4.34)",
        "4.35",
        &r435,
        "derive on locus",
        &declared,
        vec![],
    );

    // The relation itself on the locus, then tau eliminated pairwise.
    let mut a = FracPoly::from(r433.clone());
    for (v, val) in table.locus() {
        a = a.num().substitute(*v, val)?;
    }
    let (a, _) = strip_factors_compressed(a.num(), &declared)?;
    let a = a.primitive_part()?;
    b.tick();
    let e436 = eliminate(&a, &r434, tau, &declared)?;
    b.step(
        "res_tau(4.33, 4.34)",
        "4.36",
        &e436.eliminated,
        &e436.method.to_string(),
        &declared,
        e436.removed_factors.clone(),
    );
    blocks(b, &e436.eliminated, "4.36", "P", 16, 10);
    b.tick();
    let e437 = eliminate(&a, &r435, tau, &declared)?;
    b.step(
        "res_tau(4.33, 4.35)",
        "4.37",
        &e437.eliminated,
        &e437.method.to_string(),
        &declared,
        e437.removed_factors.clone(),
    );
    blocks(b, &e437.eliminated, "4.37", "Q", 26, 12);

    // Both are even in kap: eliminate u = kap^2.
    let (p36, p37) = (&e436.eliminated, &e437.eliminated);
    let even = p36.exponent_gcd(kap) % 2 == 0 && p37.exponent_gcd(kap) % 2 == 0;
    b.check("4.36 and 4.37 are even in kap", even, String::new());
    let u = r.var("u");
    let (d36, d37) = (p36.deflate(kap, 2, u)?, p37.deflate(kap, 2, u)?);
    b.tick();
    let (res_u, method) = resultant_traced(&d36, &d37, u)?;
    let weight = res_u.weight()?;
    b.step("res_u", "", &res_u, &method.to_string(), &[], vec![]);
    b.check("u-resultant is nonzero", !res_u.is_zero(), String::new());
    b.check(
        "u-resultant has weight 226",
        weight == Weight::Homogeneous(226),
        format!("{weight}"),
    );
    let c_only = [rp("c")];
    let (stripped, removed) = strip_factors_compressed(&res_u, &c_only)?;
    let prim = stripped.primitive_part()?;
    let y1 = r.var("y1");
    b.step("res_u.primitive", "", &prim, "strip c", &[], removed);
    b.check(
        "primitive u-resultant has y1-degree 214",
        prim.degree_in(y1) == 214,
        format!("{}", prim.degree_in(y1)),
    );

    b.tick();
    let res_prs = resultant_prs(&d36, &d37, u)?;
    let same = res_prs == res_u || res_prs == -&res_u;
    b.check("subresultant backend agrees", same, String::new());

    if kappa_resultant {
        b.tick();
        let (res_k, method) = resultant_traced(p36, p37, kap)?;
        b.step("res_kap", "", &res_k, &method.to_string(), &[], vec![]);
        let sq = res_u.pow(2);
        b.check(
            "kap-resultant is the square of the u-resultant",
            res_k == sq || res_k == -&sq,
            String::new(),
        );
        let (sk, _) = strip_factors_compressed(&res_k, &c_only)?;
        let dk = sk.degree_in(y1);
        b.check(
            "kap-resultant has y1-degree 428",
            dk == 428,
            format!("{dk}"),
        );
    }
    Ok(())
}

/// `-e1(e1(lam1)) + e1(lam1) sum(w) + lam1 (8c + 4 lam1^2 - R)` with
/// `R = 12c + 16 H^2 - S`, `lam1 = -2H` and `S = lam1^2 + sum(mu^2)`.
fn biharmonic(mu_table: &DerivationTable, r: &std::sync::Arc<VarTable>) -> StageResult<Poly> {
    let lam1 = FracPoly::over_integer(rp("-(mu2 + mu3 + mu4)"), 3)?;
    let h = lam1.scale(&BigInt::from(-1)) * FracPoly::over_integer(Poly::one(r), 2)?;
    let s = lam1.pow(2) + f("mu2^2 + mu3^2 + mu4^2");
    let big_r = f("12*c") + h.pow(2).scale(&BigInt::from(16)) - s;
    let sum_w = f("kap*(mu2 + mu3 + mu4) + 3*tau");
    let d1 = derive_frac(&lam1, mu_table)?;
    let d2 = derive_frac(&d1, mu_table)?;
    let e = -d2 + &d1 * &sum_w + &lam1 * &(f("8*c") + lam1.pow(2).scale(&BigInt::from(4)) - big_r);
    Ok(to_y(e.num())?.primitive_part()?)
}

/// Checks the coefficients of even powers of `kap` against the printed
/// blocks `<prefix>0, <prefix>2, ...` and their weight.
fn blocks(b: &mut StageBuilder<'_>, p: &Poly, eq: &str, prefix: &str, top: u32, weight: i64) {
    let kap = reg().var("kap");
    let mut ratios = Vec::new();
    let mut weights_ok = true;
    for m in (0..=top).step_by(2) {
        let blk = p.coeff_in(kap, m);
        let id = format!("{eq}.{prefix}{m}");
        weights_ok &= blk.weight().ok() == Some(Weight::Homogeneous(weight));
        let fm = b.step(&id, &id, &blk, "coefficient", &[], vec![]);
        ratios.push(fm);
    }
    b.check(
        &format!("{eq} has no odd powers of kap"),
        (1..=top).step_by(2).all(|m| p.coeff_in(kap, m).is_zero()),
        String::new(),
    );
    b.check(
        &format!("{eq} has kap-degree {top}"),
        p.degree_in(kap) == top,
        format!("{}", p.degree_in(kap)),
    );
    b.check(
        &format!("every {prefix} block has weight {weight}"),
        weights_ok,
        String::new(),
    );
    let same = ratios.windows(2).all(|w| w[0] == w[1]);
    b.check(
        &format!("{prefix} blocks share one scalar"),
        same,
        ratios
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(", "),
    );
}
