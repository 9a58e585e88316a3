//! Variable elimination.
//!
//! Two independent resultant backends are provided: the determinant of the
//! Sylvester matrix by Bareiss' fraction-free elimination, and the
//! subresultant remainder sequence. Both run over the subring generated by
//! the symbols that actually occur, which keeps monomials short.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::poly::{FracPoly, Poly, PolyError, VarId, VarTable, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElimError {
    #[error("`{0}` occurs in neither polynomial")]
    VariableAbsent(String),
    #[error("`{0}` does not occur linearly")]
    NotLinear(String),
    #[error("the resultant vanishes identically; the inputs share a factor in `{0}`")]
    Degenerate(String),
    #[error("cannot remove a constant factor")]
    ConstantFactor,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElimMethod {
    /// One input is linear in the variable; its solution was substituted.
    LinearSolve,
    SylvesterBareiss,
    SubresultantPrs,
    /// Only one input contains the variable; the other is returned.
    Trivial,
}

impl fmt::Display for ElimMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ElimMethod::LinearSolve => "linear-solve",
            ElimMethod::SylvesterBareiss => "sylvester-bareiss",
            ElimMethod::SubresultantPrs => "subresultant-prs",
            ElimMethod::Trivial => "trivial",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct ElimResult {
    /// Primitive, with declared factors removed.
    pub eliminated: Poly,
    pub method: ElimMethod,
    /// Declared factors divided out, with multiplicities.
    pub removed_factors: Vec<(Poly, u32)>,
    /// Signed integer content divided out last.
    pub content: BigInt,
    /// Exponent step used to deflate the variable before eliminating.
    pub deflation: u32,
    /// For linear solves: whether the pivot coefficient is a product of
    /// declared factors and integers.
    pub pivot_declared: Option<bool>,
}

impl ElimResult {
    pub fn weight(&self) -> Weight {
        self.eliminated.weight().unwrap_or(Weight::Inhomogeneous)
    }
}

#[derive(Debug, Clone)]
pub struct LinearSolution {
    pub value: FracPoly,
    /// False when the coefficient of the variable is not known to be
    /// nonzero; the solution is then only valid where it is.
    pub denominator_declared: bool,
}

/// Solves `eq = 0` for `v`, which must occur to the first power.
pub fn solve_linear(eq: &Poly, v: VarId, declared: &[Poly]) -> Result<LinearSolution, ElimError> {
    if eq.degree_in(v) != 1 {
        return Err(ElimError::NotLinear(eq.vars().name(v).into()));
    }
    let a = eq.coeff_in(v, 1);
    let b = eq.coeff_in(v, 0);
    let denominator_declared = is_declared_product(&a, declared);
    let value = FracPoly::new(-b, a)?;
    Ok(LinearSolution {
        value,
        denominator_declared,
    })
}

/// Divides out `f` as often as possible. Returns the cofactor and the
/// multiplicity.
pub fn remove_factor(p: &Poly, f: &Poly) -> Result<(Poly, u32), ElimError> {
    if f.is_constant() {
        return Err(ElimError::ConstantFactor);
    }
    let mut k = 0;
    let mut cur = p.clone();
    if cur.is_zero() {
        return Ok((cur, 0));
    }
    while let Ok(q) = cur.exact_div(f) {
        cur = q;
        k += 1;
    }
    Ok((cur, k))
}

/// Removes every listed factor; constants in the list are ignored.
pub fn strip_factors(p: &Poly, factors: &[Poly]) -> (Poly, Vec<(Poly, u32)>) {
    let mut cur = p.clone();
    let mut removed = Vec::new();
    for f in factors {
        if f.is_constant() || !f.used_vars().iter().all(|&v| cur.contains(v)) {
            continue;
        }
        let (q, k) = remove_factor(&cur, f).expect("nonconstant factor");
        if k > 0 {
            removed.push((f.clone(), k));
            cur = q;
        }
    }
    (cur, removed)
}

/// True when `p` is a nonzero integer times a product of declared factors.
pub fn is_declared_product(p: &Poly, declared: &[Poly]) -> bool {
    if p.is_zero() {
        return false;
    }
    strip_factors(p, declared).0.is_constant()
}

/// Restricts a family of polynomials to the symbols they use.
struct Compressed {
    local: Arc<VarTable>,
    to_local: Vec<Option<VarId>>,
    to_global: Vec<Option<VarId>>,
}

impl Compressed {
    fn new(polys: &[&Poly]) -> Compressed {
        let global = polys[0].vars().clone();
        let mut used: Vec<VarId> = polys.iter().flat_map(|p| p.used_vars()).collect();
        used.sort();
        used.dedup();
        let local = global.restricted(&used);
        let mut to_local = vec![None; global.len()];
        let mut to_global = vec![None; local.len()];
        for (j, &v) in used.iter().enumerate() {
            let lv = local.var(global.name(v));
            debug_assert_eq!(lv.index(), j);
            to_local[v.index()] = Some(lv);
            to_global[j] = Some(v);
        }
        Compressed {
            local,
            to_local,
            to_global,
        }
    }

    fn down(&self, p: &Poly) -> Result<Poly, PolyError> {
        p.remap(&self.local, &self.to_local)
    }

    fn up(&self, p: &Poly, global: &Arc<VarTable>) -> Result<Poly, PolyError> {
        p.remap(global, &self.to_global)
    }

    fn var(&self, v: VarId) -> VarId {
        self.to_local[v.index()].expect("variable is used")
    }
}

fn trim(mut c: Vec<Poly>) -> Vec<Poly> {
    while c.len() > 1 && c.last().is_some_and(|p| p.is_zero()) {
        c.pop();
    }
    c
}

fn deg(c: &[Poly]) -> usize {
    c.len() - 1
}

/// Sylvester determinant by fraction-free elimination. Returns `None` when
/// a pivot vanishes.
fn bareiss_sylvester(pc: &[Poly], qc: &[Poly]) -> Option<Poly> {
    let (m, n) = (deg(pc), deg(qc));
    let size = m + n;
    let vars = pc[0].vars().clone();
    let zero = Poly::zero(&vars);
    let mut mat: Vec<Vec<Poly>> = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (j, c) in pc.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        mat.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (j, c) in qc.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        mat.push(row);
    }
    let mut prev = Poly::one(&vars);
    for k in 0..size.saturating_sub(1) {
        if mat[k][k].is_zero() {
            return None;
        }
        let (head, tail) = mat.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = &pivot_row[k];
        tail.par_iter_mut().for_each(|row| {
            let factor = row[k].clone();
            for j in (k + 1)..size {
                let v = if factor.is_zero() {
                    if row[j].is_zero() {
                        continue;
                    }
                    &row[j] * pivot
                } else {
                    Poly::mul_sub_mul(&row[j], pivot, &factor, &pivot_row[j]).expect("same table")
                };
                row[j] = if prev.is_one() {
                    v
                } else {
                    v.exact_div(&prev).expect("Bareiss division is exact")
                };
            }
            row[k] = Poly::zero(pivot.vars());
        });
        prev = mat[k][k].clone();
    }
    Some(mat[size - 1][size - 1].clone())
}

fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let n = deg(b);
    let lb = &b[n];
    let mut r = a.to_vec();
    let mut e = deg(a) as i64 - n as i64 + 1;
    while r.len() > n && !(r.len() == 1 && r[0].is_zero()) {
        let dr = deg(&r);
        if dr < n {
            break;
        }
        let lr = r[dr].clone();
        let shift = dr - n;
        for x in r.iter_mut() {
            *x = &*x * lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[j + shift] = &r[j + shift] - &(&lr * bj);
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        r = trim(r);
        e -= 1;
        if r.len() == 1 && r[0].is_zero() {
            return r;
        }
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for x in r.iter_mut() {
            *x = &*x * &f;
        }
    }
    trim(r)
}

fn is_zero_coeffs(c: &[Poly]) -> bool {
    c.len() == 1 && c[0].is_zero()
}

/// Subresultant remainder sequence, returning the resultant with the
/// Sylvester sign convention.
fn prs_resultant(pc: &[Poly], qc: &[Poly]) -> Poly {
    let vars = pc[0].vars().clone();
    let (mut a, mut b) = (pc.to_vec(), qc.to_vec());
    let mut s = BigInt::one();
    if deg(&a) < deg(&b) {
        if (deg(&a) * deg(&b)) % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if deg(&b) == 0 {
        return b[0].pow(deg(&a) as u32).scale(&s);
    }
    let mut g = Poly::one(&vars);
    let mut h = Poly::one(&vars);
    loop {
        let (da, db) = (deg(&a), deg(&b));
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = prem(&a, &b);
        a = b;
        if is_zero_coeffs(&r) {
            return Poly::zero(&vars);
        }
        let divisor = &g * &h.pow(delta);
        b = r
            .iter()
            .map(|x| {
                x.exact_div(&divisor)
                    .expect("subresultant division is exact")
            })
            .collect();
        g = a[deg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
        if deg(&b) == 0 {
            break;
        }
    }
    let da = deg(&a) as u32;
    let top = b[0].pow(da);
    let h = if da == 0 {
        h
    } else {
        top.exact_div(&h.pow(da - 1))
            .expect("subresultant division is exact")
    };
    h.scale(&s)
}

fn prepare(p: &Poly, q: &Poly, v: VarId) -> Result<(Compressed, Vec<Poly>, Vec<Poly>), ElimError> {
    if !crate::poly::same_table(p.vars(), q.vars()) {
        return Err(PolyError::RegistryMismatch.into());
    }
    let comp = Compressed::new(&[p, q]);
    let lv = comp.var(v);
    let pc = comp.down(p)?.coefficients_in(lv);
    let qc = comp.down(q)?.coefficients_in(lv);
    Ok((comp, pc, qc))
}

fn special_resultant(pc: &[Poly], qc: &[Poly]) -> Option<Poly> {
    if is_zero_coeffs(pc) || is_zero_coeffs(qc) {
        return Some(Poly::zero(pc[0].vars()));
    }
    match (deg(pc), deg(qc)) {
        (0, n) => Some(pc[0].pow(n as u32)),
        (m, 0) => Some(qc[0].pow(m as u32)),
        _ => None,
    }
}

fn resultant_with(
    p: &Poly,
    q: &Poly,
    v: VarId,
    prefer_prs: bool,
) -> Result<(Poly, ElimMethod), ElimError> {
    if !p.contains(v) && !q.contains(v) {
        return Ok((Poly::one(p.vars()), ElimMethod::Trivial));
    }
    let (comp, pc, qc) = prepare(p, q, v)?;
    let (r, method) = if let Some(r) = special_resultant(&pc, &qc) {
        (r, ElimMethod::Trivial)
    } else if prefer_prs {
        (prs_resultant(&pc, &qc), ElimMethod::SubresultantPrs)
    } else {
        match bareiss_sylvester(&pc, &qc) {
            Some(r) => (r, ElimMethod::SylvesterBareiss),
            None => (prs_resultant(&pc, &qc), ElimMethod::SubresultantPrs),
        }
    };
    Ok((comp.up(&r, p.vars())?, method))
}

/// Resultant in `v` as the Sylvester determinant (Bareiss). Falls back to
/// the remainder sequence when a pivot vanishes.
pub fn resultant(p: &Poly, q: &Poly, v: VarId) -> Result<Poly, ElimError> {
    Ok(resultant_with(p, q, v, false)?.0)
}

/// Resultant in `v` by the subresultant remainder sequence.
pub fn resultant_prs(p: &Poly, q: &Poly, v: VarId) -> Result<Poly, ElimError> {
    Ok(resultant_with(p, q, v, true)?.0)
}

/// Which backend [`resultant`] ended up using.
pub fn resultant_traced(p: &Poly, q: &Poly, v: VarId) -> Result<(Poly, ElimMethod), ElimError> {
    resultant_with(p, q, v, false)
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    a.gcd(&b)
}

/// Eliminates `v` from `p = q = 0`.
///
/// Exponents of `v` are first deflated by their common gcd. If either
/// input is then linear in `v`, its solution is substituted into the other
/// with the denominator cleared; otherwise the resultant is taken. Declared
/// factors and the integer content are removed from the result.
pub fn eliminate(p: &Poly, q: &Poly, v: VarId, declared: &[Poly]) -> Result<ElimResult, ElimError> {
    let name = p.vars().name(v).to_string();
    if !p.contains(v) && !q.contains(v) {
        return Err(ElimError::VariableAbsent(name));
    }
    let (raw, method, deflation, pivot_declared) = if !p.contains(v) || !q.contains(v) {
        let free = if p.contains(v) { q } else { p };
        (free.clone(), ElimMethod::Trivial, 1, None)
    } else {
        let step = gcd_u32(p.exponent_gcd(v), q.exponent_gcd(v)).max(1);
        let (p2, q2) = if step > 1 {
            (p.deflate(v, step, v)?, q.deflate(v, step, v)?)
        } else {
            (p.clone(), q.clone())
        };
        let (dp, dq) = (p2.degree_in(v), q2.degree_in(v));
        if dp == 1 || dq == 1 {
            let p_ok = dp == 1 && is_declared_product(&p2.coeff_in(v, 1), declared);
            let q_ok = dq == 1 && is_declared_product(&q2.coeff_in(v, 1), declared);
            let use_p = dp == 1 && (p_ok || !q_ok);
            let (lin, other, ok) = if use_p {
                (&p2, &q2, p_ok)
            } else {
                (&q2, &p2, q_ok)
            };
            (
                substitute_linear(lin, other, v)?,
                ElimMethod::LinearSolve,
                step,
                Some(ok),
            )
        } else {
            let (r, m) = resultant_with(&p2, &q2, v, false)?;
            (r, m, step, None)
        }
    };
    if raw.is_zero() {
        return Err(ElimError::Degenerate(name));
    }
    let (stripped, removed_factors) = strip_factors_compressed(&raw, declared)?;
    let (content, eliminated) = stripped.content_primitive()?;
    Ok(ElimResult {
        eliminated,
        method,
        removed_factors,
        content,
        deflation,
        pivot_declared,
    })
}

/// `a^k * other(-b/a)` for `lin = a*v + b` and `k = deg_v(other)`.
fn substitute_linear(lin: &Poly, other: &Poly, v: VarId) -> Result<Poly, ElimError> {
    let a = lin.coeff_in(v, 1);
    let b = -lin.coeff_in(v, 0);
    let coeffs = other.coefficients_in(v);
    let mut acc = Poly::zero(lin.vars());
    let mut apow = Poly::one(lin.vars());
    // Horner over (b, a): sum_j c_j b^j a^(k-j).
    for c in coeffs.iter().rev() {
        acc = &(&acc * &b) + &(c * &apow);
        apow = &apow * &a;
    }
    Ok(acc)
}

/// [`strip_factors`] carried out over the symbols of `p` only.
pub fn strip_factors_compressed(
    p: &Poly,
    factors: &[Poly],
) -> Result<(Poly, Vec<(Poly, u32)>), ElimError> {
    let comp = Compressed::new(&[p]);
    let used = p.used_vars();
    let local_factors: Vec<(usize, Poly)> = factors
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.is_constant() && f.used_vars().iter().all(|v| used.contains(v)))
        .map(|(i, f)| Ok((i, comp.down(f)?)))
        .collect::<Result<_, PolyError>>()?;
    let mut cur = comp.down(p)?;
    let mut removed = Vec::new();
    for (i, f) in local_factors {
        let (q, k) = remove_factor(&cur, &f)?;
        if k > 0 {
            removed.push((factors[i].clone(), k));
            cur = q;
        }
    }
    Ok((comp.up(&cur, p.vars())?, removed))
}

/// Degree data used in reports.
pub fn degree_summary(p: &Poly) -> String {
    if p.is_zero() {
        return "zero".into();
    }
    let vars = p.vars();
    let parts: Vec<String> = p
        .used_vars()
        .iter()
        .map(|&v| format!("{}:{}", vars.name(v), p.degree_in(v)))
        .collect();
    let w = match p.weight() {
        Ok(Weight::Homogeneous(w)) => format!("weight {w}"),
        _ => "inhomogeneous".into(),
    };
    format!("{} terms, {w}, degrees [{}]", p.len(), parts.join(" "))
}

/// Exact cofactor `p / q` when the division is exact.
pub fn exact_ratio(p: &Poly, q: &Poly) -> Option<Poly> {
    let comp = Compressed::new(&[p, q]);
    let (pl, ql) = (comp.down(p).ok()?, comp.down(q).ok()?);
    let r = pl.exact_div(&ql).ok()?;
    comp.up(&r, p.vars()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprio::parse;

    fn reg() -> Arc<VarTable> {
        VarTable::registry()
    }

    fn p(s: &str) -> Poly {
        parse(s, &reg()).unwrap()
    }

    #[test]
    fn quadratic_and_linear() {
        let x = reg().var("tau");
        let r = resultant(&p("tau^2 - c"), &p("tau - lam"), x).unwrap();
        assert_eq!(r, p("lam^2 - c"));
        let r2 = resultant_prs(&p("tau^2 - c"), &p("tau - lam"), x).unwrap();
        assert_eq!(r2, r);
    }

    #[test]
    fn sylvester_sign_convention() {
        // Res(x - a, x - b) = a - b ... with p first: det [[1,-a],[1,-b]] = a - b.
        let x = reg().var("tau");
        let r = resultant(&p("tau - lam"), &p("tau - c"), x).unwrap();
        assert_eq!(r, p("lam - c"));
        let r = resultant_prs(&p("tau - lam"), &p("tau - c"), x).unwrap();
        assert_eq!(r, p("lam - c"));
    }

    #[test]
    fn common_root_gives_zero() {
        let x = reg().var("tau");
        let f = p("(tau - lam)*(tau + c)");
        let g = p("(tau - lam)*(tau^2 + 1)");
        assert!(resultant(&f, &g, x).unwrap().is_zero());
        assert!(resultant_prs(&f, &g, x).unwrap().is_zero());
        assert!(matches!(
            eliminate(&f, &g, x, &[]),
            Err(ElimError::Degenerate(_))
        ));
    }

    #[test]
    fn remove_factor_counts() {
        let (q, k) = remove_factor(&p("lam^3*c + lam^2"), &p("lam")).unwrap();
        assert_eq!((q, k), (p("lam*c + 1"), 2));
        assert_eq!(
            remove_factor(&p("lam"), &p("3")),
            Err(ElimError::ConstantFactor)
        );
    }

    #[test]
    fn linear_solution_flags_denominator() {
        let s = solve_linear(&p("lam*T - 3*lam1"), reg().var("T"), &[p("lam")]).unwrap();
        assert!(s.denominator_declared);
        assert_eq!(s.value.num(), &p("3*lam1"));
        let s = solve_linear(&p("(lam + c)*T - 3"), reg().var("T"), &[p("lam")]).unwrap();
        assert!(!s.denominator_declared);
    }

    #[test]
    fn deflation_and_stripping() {
        let k = reg().var("kap");
        let f = p("kap^4 + c*kap^2 + y1");
        let g = p("kap^2 - c");
        let out = eliminate(&f, &g, k, &[p("c")]).unwrap();
        assert_eq!(out.deflation, 2);
        assert_eq!(out.method, ElimMethod::LinearSolve);
        assert_eq!(out.eliminated, p("2*c^2 + y1"));
    }

    #[test]
    fn absent_variable() {
        let e = eliminate(&p("c"), &p("lam"), reg().var("tau"), &[]).unwrap_err();
        assert_eq!(e, ElimError::VariableAbsent("tau".into()));
    }
}
