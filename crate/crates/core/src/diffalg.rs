//! The derivation `e1` acting on polynomial rings.
//!
//! A [`DerivationTable`] assigns to each symbol the value of `e1` on it, as a
//! rational function. Extending by the Leibniz rule gives `e1` on any
//! polynomial. Each regime also lists the factors known not to vanish on the
//! open set under study and, optionally, substitutions that put a derived
//! relation back on the locus cut out by earlier equations.

use std::sync::Arc;

use thiserror::Error;

use crate::elim::strip_factors;
use crate::exprio::parse;
use crate::poly::{FracPoly, Poly, PolyError, VarId, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffError {
    #[error("no derivation rule for `{0}`")]
    MissingRule(String),
    #[error("derivation rules shift the weight inconsistently ({0} vs {1})")]
    InconsistentShift(i64, i64),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Which set of rules is in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Derivatives of the principal curvature `lam` and the trace `T`.
    Section3,
    /// Connection forms proportional to the curvatures, in `kap`, `tau` and
    /// the elementary symmetric `y`s.
    CaseA,
    /// Flat normal connection branch, in the elementary symmetric `y`s with
    /// the common prefactor dropped.
    CaseB,
    /// Raw frame symbols `mu`, `w`, `a`.
    Frame,
}

#[derive(Debug, Clone)]
pub struct DerivationTable {
    regime: Regime,
    vars: Arc<VarTable>,
    rules: Vec<Option<FracPoly>>,
    declared: Vec<Poly>,
    locus: Vec<(VarId, FracPoly)>,
}

fn rp(s: &str) -> Poly {
    parse(s, &VarTable::registry()).expect("built-in rule parses")
}

fn rf(num: &str, den: &str) -> FracPoly {
    FracPoly::new(rp(num), rp(den)).expect("nonzero denominator")
}

impl DerivationTable {
    pub fn new(regime: Regime, vars: &Arc<VarTable>) -> Self {
        DerivationTable {
            regime,
            vars: vars.clone(),
            rules: vec![None; vars.len()],
            declared: Vec::new(),
            locus: Vec::new(),
        }
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn set_rule(&mut self, v: VarId, value: FracPoly) {
        self.rules[v.index()] = Some(value);
    }

    pub fn with_rule(mut self, name: &str, value: FracPoly) -> Self {
        let v = self.vars.var(name);
        self.set_rule(v, value);
        self
    }

    pub fn rule(&self, v: VarId) -> Option<&FracPoly> {
        self.rules[v.index()].as_ref()
    }

    pub fn declare(&mut self, f: Poly) {
        if !f.is_constant() && !self.declared.contains(&f) {
            self.declared.push(f);
        }
    }

    pub fn with_declared(mut self, f: Poly) -> Self {
        self.declare(f);
        self
    }

    /// Nonconstant factors assumed nonzero. Nonzero integers are always
    /// treated as units and never listed.
    pub fn declared(&self) -> &[Poly] {
        &self.declared
    }

    pub fn with_locus(mut self, name: &str, value: FracPoly) -> Self {
        let v = self.vars.var(name);
        self.locus.push((v, value));
        self
    }

    pub fn locus(&self) -> &[(VarId, FracPoly)] {
        &self.locus
    }

    /// `lam -> lam1 -> ... -> lam5` and `T -> T1 -> ... -> T4`.
    pub fn section3() -> Self {
        let vars = VarTable::registry();
        let mut t =
            DerivationTable::new(Regime::Section3, &vars).with_rule("c", FracPoly::zero(&vars));
        for (from, to) in [
            ("lam", "lam1"),
            ("lam1", "lam2"),
            ("lam2", "lam3"),
            ("lam3", "lam4"),
            ("lam4", "lam5"),
        ] {
            t = t.with_rule(from, rp(to).into());
        }
        for (from, to) in [("T", "T1"), ("T1", "T2"), ("T2", "T3"), ("T3", "T4")] {
            t = t.with_rule(from, rp(to).into());
        }
        t.with_declared(rp("lam")).with_declared(rp("lam1"))
    }

    /// Rules on `kap`, `tau` and `y1..y3`. Relations are put back on the
    /// locus by eliminating `y2` and `y3` through their solved forms.
    pub fn case_a() -> Self {
        let vars = VarTable::registry();
        DerivationTable::new(Regime::CaseA, &vars)
            .with_rule("c", FracPoly::zero(&vars))
            .with_rule("kap", rf("-(1 + kap^2)*y1 + 3*kap*tau", "3"))
            .with_rule("tau", rf("3*c - kap*tau*y1 + 3*tau^2", "3"))
            .with_rule("y1", rf("4*kap*y1^2 - 6*kap*y2 + 6*tau*y1", "3"))
            .with_rule(
                "y2",
                rf("5*kap*y1*y2 - 9*kap*y3 + 2*tau*y1^2 + 6*tau*y2", "3"),
            )
            .with_rule("y3", rf("6*kap*y1*y3 + tau*y1*y2 + 9*tau*y3", "3"))
            .with_locus("y2", rf("-(3*c + 2*kap*tau*y1 + 3*tau^2)", "1 + kap^2"))
            .with_locus(
                "y3",
                rf(
                    "-c*(1 + kap^2)*y1 + 6*c*kap*tau + (3*kap^2 - 1)*tau^2*y1 + 6*kap*tau^3",
                    "3*(1 + kap^2)^2",
                ),
            )
            .with_declared(rp("1 + kap^2"))
            .with_declared(rp("kap"))
            .with_declared(rp("y1"))
            .with_declared(rp("c"))
    }

    /// Rules on `y1..y3` with the common prefactor `-3*w2*(mu3*mu4 + c)`
    /// removed, so every rule is a polynomial.
    pub fn case_b() -> Self {
        let vars = VarTable::registry();
        DerivationTable::new(Regime::CaseB, &vars)
            .with_rule("c", FracPoly::zero(&vars))
            .with_rule("y1", rp("6*c^2*y1 + 5*c*y1*y2 - 9*c*y3 + 4*y1^2*y3 - 6*y2*y3").into())
            .with_rule(
                "y2",
                rp("2*c^2*y1^2 + 6*c^2*y2 + c*y1^2*y2 + 6*c*y2^2 - 3*c*y1*y3 + 5*y1*y2*y3 - 9*y3^2").into(),
            )
            .with_rule("y3", rp("c^2*y1*y2 + 9*c^2*y3 + 2*c*y1^2*y3 + 6*c*y2*y3 + 6*y1*y3^2").into())
            .with_declared(rp("c"))
            .with_declared(rp("y1"))
            .with_declared(rp("w2"))
            .with_declared(rp("mu3*mu4 + c"))
    }

    /// `e1` on the frame symbols: `e1(mu_i) = (mu_i - lam1) w_i`,
    /// `e1(w_i) = w_i^2 + lam1 mu_i + c`, `e1(a) = Da`, where
    /// `lam1 = -(mu2 + mu3 + mu4)/3`.
    pub fn frame() -> Self {
        let vars = VarTable::registry();
        let mut t = DerivationTable::new(Regime::Frame, &vars)
            .with_rule("c", FracPoly::zero(&vars))
            .with_rule("a", rp("Da").into());
        for i in 2..=4 {
            let mu = format!("mu{i}");
            let w = format!("w{i}");
            t = t
                .with_rule(&mu, rf(&format!("(3*{mu} + mu2 + mu3 + mu4)*{w}"), "3"))
                .with_rule(
                    &w,
                    rf(&format!("3*{w}^2 - (mu2 + mu3 + mu4)*{mu} + 3*c"), "3"),
                );
        }
        t.with_declared(rp("mu2 - mu3"))
            .with_declared(rp("mu2 - mu4"))
            .with_declared(rp("mu3 - mu4"))
    }
}

/// `e1(p)` by the Leibniz rule.
pub fn derive(p: &Poly, table: &DerivationTable) -> Result<FracPoly, DiffError> {
    let mut acc = FracPoly::zero(p.vars());
    for v in p.used_vars() {
        let rule = table
            .rule(v)
            .ok_or_else(|| DiffError::MissingRule(p.vars().name(v).into()))?;
        if rule.is_zero() {
            continue;
        }
        let dp: FracPoly = p.partial(v).into();
        acc = acc.checked_add(&dp.checked_mul(rule)?)?;
    }
    Ok(acc)
}

/// `e1` of a rational function by the quotient rule.
pub fn derive_frac(f: &FracPoly, table: &DerivationTable) -> Result<FracPoly, DiffError> {
    let dn = derive(f.num(), table)?;
    if f.den().is_constant() {
        let den: FracPoly = FracPoly::new(Poly::one(f.vars()), f.den().clone())?;
        return Ok(dn.checked_mul(&den)?);
    }
    let dd = derive(f.den(), table)?;
    let den: FracPoly = f.den().clone().into();
    let num: FracPoly = f.num().clone().into();
    let top = dn.checked_mul(&den)?.checked_sub(&num.checked_mul(&dd)?)?;
    Ok(top.checked_div(&den.pow(2))?)
}

/// The relation `e1(p) = 0` as a primitive polynomial: derive, apply the
/// locus substitutions, keep the numerator, drop declared nonvanishing
/// factors and integer content.
pub fn derive_on_locus(p: &Poly, table: &DerivationTable) -> Result<Poly, DiffError> {
    let mut q = derive(p, table)?;
    for (v, value) in table.locus() {
        q = q.num().substitute(*v, value)?;
    }
    let (stripped, _) = strip_factors(q.num(), table.declared());
    Ok(stripped.primitive_part()?)
}

/// Weight added by `e1`, read off the rules.
pub fn weight_shift(table: &DerivationTable) -> Result<i64, DiffError> {
    let vars = table.vars();
    let mut shift: Option<i64> = None;
    for v in vars.ids() {
        let Some(rule) = table.rule(v) else { continue };
        if rule.is_zero() {
            continue;
        }
        let wn = rule.num().weight()?.value();
        let wd = rule.den().weight()?.value();
        let (Some(wn), Some(wd)) = (wn, wd) else {
            return Err(DiffError::InconsistentShift(i64::MIN, i64::MAX));
        };
        let s = wn - wd - vars.weight(v);
        match shift {
            None => shift = Some(s),
            Some(prev) if prev != s => return Err(DiffError::InconsistentShift(prev, s)),
            _ => {}
        }
    }
    Ok(shift.unwrap_or(0))
}
