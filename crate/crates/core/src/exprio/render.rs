use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::poly::{Monomial, Poly, VarTable};

/// Text form accepted back by [`super::parse`]. Terms are written from the
/// smallest monomial upwards, so constants and low-degree terms lead.
pub fn render(p: &Poly) -> String {
    join_terms(p, |m, vars| plain_monomial(m, vars), "*")
}

/// LaTeX form with the geometric symbol names.
pub fn render_latex(p: &Poly) -> String {
    join_terms(p, |m, vars| latex_monomial(m, vars), "")
}

fn join_terms(p: &Poly, mono: impl Fn(&Monomial, &VarTable) -> String, coeff_sep: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let vars = p.vars();
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().rev().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a: BigInt = c.abs();
        if m.is_one() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono(m, vars));
        } else {
            out.push_str(&a.to_string());
            out.push_str(coeff_sep);
            out.push_str(&mono(m, vars));
        }
    }
    out
}

fn plain_monomial(m: &Monomial, vars: &VarTable) -> String {
    let mut parts = Vec::new();
    for v in vars.ids() {
        let e = m.exp(v);
        match e {
            0 => {}
            1 => parts.push(vars.name(v).to_string()),
            _ => parts.push(format!("{}^{}", vars.name(v), e)),
        }
    }
    parts.join("*")
}

fn latex_monomial(m: &Monomial, vars: &VarTable) -> String {
    let mut parts = Vec::new();
    for v in vars.ids() {
        let e = m.exp(v);
        if e == 0 {
            continue;
        }
        let base = latex_symbol(vars.name(v));
        if e == 1 {
            parts.push(base);
        } else if e < 10 {
            parts.push(format!("{base}^{e}"));
        } else {
            parts.push(format!("{base}^{{{e}}}"));
        }
    }
    parts.join(" ")
}

/// LaTeX spelling of a symbol name.
pub fn latex_symbol(name: &str) -> String {
    let primed = |base: &str, k: usize| format!("{base}{}", "'".repeat(k));
    if let Some(k) = name.strip_prefix("lam").and_then(|s| suffix_number(s)) {
        return primed("\\lambda", k);
    }
    if let Some(k) = name.strip_prefix('T').and_then(|s| suffix_number(s)) {
        return primed("T", k);
    }
    if let Some(i) = name.strip_prefix("mu").filter(|s| is_digits(s)) {
        return format!("\\lambda_{i}");
    }
    if let Some(i) = name.strip_prefix('w').filter(|s| is_digits(s)) {
        return format!("\\omega_{{{i}{i}}}^{{1}}");
    }
    match name {
        "kap" => return "\\kappa".into(),
        "tau" => return "\\tau".into(),
        "Da" => return "e_1(a)".into(),
        _ => {}
    }
    let split = name.find(|ch: char| ch.is_ascii_digit());
    match split {
        Some(i) if i > 0 && is_digits(&name[i..]) => {
            let (b, d) = name.split_at(i);
            if d.len() == 1 {
                format!("{b}_{d}")
            } else {
                format!("{b}_{{{d}}}")
            }
        }
        _ => name.to_string(),
    }
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

fn suffix_number(s: &str) -> Option<usize> {
    if s.is_empty() {
        Some(0)
    } else if is_digits(s) {
        s.parse().ok()
    } else {
        None
    }
}
