//! Sparse multivariate polynomials over the integers.
//!
//! A [`Poly`] keeps its terms sorted by decreasing graded-lex order over the
//! symbol order of its [`VarTable`], with no zero coefficients. Every
//! polynomial carries a shared handle to its table, and binary operations
//! refuse operands built over different tables.

mod frac;
mod monomial;
pub mod symmetric;
mod vars;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use thiserror::Error;

pub use frac::FracPoly;
pub use monomial::Monomial;
pub use symmetric::{elementary, to_elementary};
pub use vars::{VarId, VarTable, REGISTRY};

pub(crate) use vars::same_table;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operands were built over different symbol tables")]
    RegistryMismatch,
    #[error("division is not exact")]
    NotDivisible,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("unknown symbol `{0}`")]
    UnknownVariable(String),
    #[error("symbol `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("exponents of `{var}` are not all multiples of {step}")]
    NotDeflatable { var: String, step: u32 },
    #[error("target symbol `{0}` already occurs")]
    TargetOccupied(String),
    #[error("polynomial is not symmetric in the given symbols")]
    NotSymmetric,
}

/// Weighted degree of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Homogeneous(i64),
    Inhomogeneous,
}

impl Weight {
    pub fn value(self) -> Option<i64> {
        match self {
            Weight::Homogeneous(w) => Some(w),
            Weight::Inhomogeneous => None,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Homogeneous(w) => write!(f, "{w}"),
            Weight::Inhomogeneous => write!(f, "inhomogeneous"),
        }
    }
}

pub type Term = (Monomial, BigInt);

#[derive(Clone)]
pub struct Poly {
    vars: Arc<VarTable>,
    terms: Vec<Term>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", crate::exprio::render(self))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::exprio::render(self))
    }
}

fn accumulate(map: &mut FxHashMap<Monomial, BigInt>, m: Monomial, c: BigInt) {
    match map.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

fn finish(map: FxHashMap<Monomial, BigInt>) -> Vec<Term> {
    let mut terms: Vec<Term> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    terms
}

impl Poly {
    pub fn zero(vars: &Arc<VarTable>) -> Poly {
        Poly {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(vars: &Arc<VarTable>) -> Poly {
        Poly::constant(vars, 1)
    }

    pub fn constant(vars: &Arc<VarTable>, c: impl Into<BigInt>) -> Poly {
        let c = c.into();
        if c.is_zero() {
            return Poly::zero(vars);
        }
        Poly {
            vars: vars.clone(),
            terms: vec![(Monomial::one(vars.len()), c)],
        }
    }

    pub fn var(vars: &Arc<VarTable>, v: VarId) -> Poly {
        Poly {
            vars: vars.clone(),
            terms: vec![(Monomial::var(vars.len(), v, 1), BigInt::one())],
        }
    }

    /// Single symbol by name; panics if the table lacks it.
    pub fn sym(vars: &Arc<VarTable>, name: &str) -> Poly {
        Poly::var(vars, vars.var(name))
    }

    pub fn term(vars: &Arc<VarTable>, m: Monomial, c: impl Into<BigInt>) -> Poly {
        Poly::from_terms(vars, [(m, c.into())])
    }

    /// Builds a polynomial from arbitrary terms, merging repeats.
    pub fn from_terms(vars: &Arc<VarTable>, terms: impl IntoIterator<Item = Term>) -> Poly {
        let mut map = FxHashMap::default();
        for (m, c) in terms {
            debug_assert_eq!(m.exps().len(), vars.len());
            accumulate(&mut map, m, c);
        }
        Poly {
            vars: vars.clone(),
            terms: finish(map),
        }
    }

    /// Terms already sorted strictly decreasing with nonzero coefficients.
    pub(crate) fn from_sorted(vars: &Arc<VarTable>, terms: Vec<Term>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Poly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.0.degree())
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms
            .iter()
            .map(|t| t.0.exp(v) as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.terms.iter().any(|t| t.0.exp(v) > 0)
    }

    /// Symbols that actually occur, in table order.
    pub fn used_vars(&self) -> Vec<VarId> {
        self.vars.ids().filter(|&v| self.contains(v)).collect()
    }

    fn check(&self, other: &Poly) -> Result<(), PolyError> {
        if same_table(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(PolyError::RegistryMismatch)
        }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Poly {
            vars: self.vars.clone(),
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.vars));
        }
        if other.terms.len() == 1 {
            return Ok(self.mul_term(&other.terms[0].0, &other.terms[0].1));
        }
        if self.terms.len() == 1 {
            return Ok(other.mul_term(&self.terms[0].0, &self.terms[0].1));
        }
        let mut map = FxHashMap::default();
        map.reserve((self.terms.len() * other.terms.len() / 2).min(1 << 16));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                accumulate(&mut map, ma.mul(mb), ca * cb);
            }
        }
        Ok(Poly {
            vars: self.vars.clone(),
            terms: finish(map),
        })
    }

    /// `a*b - c*d` in one accumulation pass.
    pub fn mul_sub_mul(a: &Poly, b: &Poly, c: &Poly, d: &Poly) -> Result<Poly, PolyError> {
        a.check(b)?;
        a.check(c)?;
        a.check(d)?;
        let mut map = FxHashMap::default();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                accumulate(&mut map, ma.mul(mb), ca * cb);
            }
        }
        for (mc, cc) in &c.terms {
            for (md, cd) in &d.terms {
                accumulate(&mut map, mc.mul(md), -(cc * cd));
            }
        }
        Ok(Poly {
            vars: a.vars.clone(),
            terms: finish(map),
        })
    }

    /// Multiplication by a single term keeps the order, so no sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(mm, cc)| (mm.mul(m), cc * c))
            .collect();
        Poly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        self.mul_term(&Monomial::one(self.vars.len()), c)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / d`, failing with `NotDivisible` otherwise.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly, PolyError> {
        self.check(d)?;
        if d.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.is_zero() {
            return Ok(Poly::zero(&self.vars));
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let q = m.div(dm).ok_or(PolyError::NotDivisible)?;
                let (qc, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return Err(PolyError::NotDivisible);
                }
                terms.push((q, qc));
            }
            return Ok(Poly {
                vars: self.vars.clone(),
                terms,
            });
        }
        if self.total_degree() < d.total_degree() {
            return Err(PolyError::NotDivisible);
        }
        let (lm, lc) = &d.terms[0];
        let mut rem: BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(lm).ok_or(PolyError::NotDivisible)?;
            let (qc, r) = c.div_rem(lc);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            for (dm, dc) in &d.terms[1..] {
                let key = dm.mul(&qm);
                let delta = dc * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quotient.push((qm, qc));
        }
        Ok(Poly {
            vars: self.vars.clone(),
            terms: quotient,
        })
    }

    /// Exact division by an integer.
    pub fn div_integer(&self, n: &BigInt) -> Result<Poly, PolyError> {
        if n.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(n);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            terms.push((m.clone(), q));
        }
        Ok(Poly {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn partial(&self, v: VarId) -> Poly {
        let terms: Vec<Term> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(v) > 0)
            .map(|(m, c)| {
                let e = m.exp(v);
                (m.with_exp(v, e - 1), c * BigInt::from(e))
            })
            .collect();
        Poly::from_sorted(&self.vars, terms)
    }

    /// Coefficient of `v^k`, a polynomial free of `v`.
    pub fn coeff_in(&self, v: VarId, k: u32) -> Poly {
        let terms: Vec<Term> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(v) as u32 == k)
            .map(|(m, c)| (m.with_exp(v, 0), c.clone()))
            .collect();
        Poly::from_sorted(&self.vars, terms)
    }

    /// Dense coefficient list in `v`, index equal to the power.
    pub fn coefficients_in(&self, v: VarId) -> Vec<Poly> {
        let n = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<Term>> = vec![Vec::new(); n + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            buckets[e].push((m.with_exp(v, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|b| Poly::from_terms(&self.vars, b))
            .collect()
    }

    /// Inverse of [`Poly::coefficients_in`].
    pub fn from_coefficients(vars: &Arc<VarTable>, v: VarId, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (k, p) in coeffs.iter().enumerate() {
            let e = u16::try_from(k).expect("exponent overflow");
            for (m, c) in &p.terms {
                debug_assert_eq!(m.exp(v), 0);
                terms.push((m.with_exp(v, e), c.clone()));
            }
        }
        Poly::from_terms(vars, terms)
    }

    /// Replaces `v` by the polynomial `value`.
    pub fn substitute_poly(&self, v: VarId, value: &Poly) -> Result<Poly, PolyError> {
        self.check(value)?;
        let coeffs = self.coefficients_in(v);
        let mut acc = Poly::zero(&self.vars);
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        Ok(acc)
    }

    /// Replaces `v` by a rational function. The result is normalized.
    pub fn substitute(&self, v: VarId, value: &FracPoly) -> Result<FracPoly, PolyError> {
        self.check(value.num())?;
        let coeffs = self.coefficients_in(v);
        let m = coeffs.len() - 1;
        // sum_k c_k n^k d^(m-k) over d^m, by Horner on (n, d).
        let (n, d) = (value.num(), value.den());
        let mut acc = Poly::zero(&self.vars);
        let mut dpow = Poly::one(&self.vars);
        for c in coeffs.iter().rev() {
            acc = &(&acc * n) + &(c * &dpow);
            dpow = &dpow * d;
        }
        let den = if m == 0 {
            Poly::one(&self.vars)
        } else {
            d.pow(m as u32)
        };
        FracPoly::new(acc, den)
    }

    /// Replaces `v` by an integer value.
    pub fn specialize(&self, v: VarId, value: &BigInt) -> Poly {
        self.substitute_poly(v, &Poly::constant(&self.vars, value.clone()))
            .expect("same table")
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Splits off the integer content, signed so that the primitive part has
    /// a positive leading coefficient.
    pub fn content_primitive(&self) -> Result<(BigInt, Poly), PolyError> {
        let lc = self.leading_coeff().ok_or(PolyError::ZeroPolynomial)?;
        let mut g = self.content();
        if lc.is_negative() {
            g = -g;
        }
        let prim = if g.is_one() {
            self.clone()
        } else {
            self.div_integer(&g)?
        };
        Ok((g, prim))
    }

    pub fn primitive_part(&self) -> Result<Poly, PolyError> {
        Ok(self.content_primitive()?.1)
    }

    pub fn weight(&self) -> Result<Weight, PolyError> {
        let w = self.vars.weights();
        let mut it = self.terms.iter().map(|(m, _)| m.weight(w));
        let first = it.next().ok_or(PolyError::ZeroPolynomial)?;
        if it.all(|x| x == first) {
            Ok(Weight::Homogeneous(first))
        } else {
            Ok(Weight::Inhomogeneous)
        }
    }

    /// Distinct weighted degrees of the terms, ascending.
    pub fn weights_present(&self) -> Vec<i64> {
        let w = self.vars.weights();
        let mut ws: Vec<i64> = self.terms.iter().map(|(m, _)| m.weight(w)).collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    }

    /// Maps `v^(step*k)` to `target^k`. The target may equal `v`; otherwise
    /// it must not occur.
    pub fn deflate(&self, v: VarId, step: u32, target: VarId) -> Result<Poly, PolyError> {
        if step == 0 {
            return Err(PolyError::NotDeflatable {
                var: self.vars.name(v).into(),
                step,
            });
        }
        if target != v && self.contains(target) {
            return Err(PolyError::TargetOccupied(self.vars.name(target).into()));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exp(v) as u32;
            if e % step != 0 {
                return Err(PolyError::NotDeflatable {
                    var: self.vars.name(v).into(),
                    step,
                });
            }
            let m2 = m.with_exp(v, 0).with_exp(target, (e / step) as u16);
            terms.push((m2, c.clone()));
        }
        Ok(Poly::from_terms(&self.vars, terms))
    }

    /// Inverse of [`Poly::deflate`].
    pub fn inflate(&self, v: VarId, step: u32, source: VarId) -> Result<Poly, PolyError> {
        if source != v && self.contains(v) {
            return Err(PolyError::TargetOccupied(self.vars.name(v).into()));
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m.exp(source) as u32 * step;
            let e = u16::try_from(e).expect("exponent overflow");
            (m.with_exp(source, 0).with_exp(v, e), c.clone())
        });
        Ok(Poly::from_terms(&self.vars, terms.collect::<Vec<_>>()))
    }

    /// gcd of the exponents of `v`; zero when `v` is absent.
    pub fn exponent_gcd(&self, v: VarId) -> u32 {
        self.terms
            .iter()
            .fold(0u32, |g, (m, _)| g.gcd(&(m.exp(v) as u32)))
    }

    /// Moves the polynomial to another table. `map[i]` gives the image of
    /// symbol `i`; symbols that occur must have an image.
    pub fn remap(&self, target: &Arc<VarTable>, map: &[Option<VarId>]) -> Result<Poly, PolyError> {
        let n = target.len();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut out = vec![0u16; n];
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = map[i]
                    .ok_or_else(|| PolyError::UnknownVariable(self.vars.name(VarId(i)).into()))?;
                out[j.0] += e;
            }
            terms.push((Monomial::from_exps(&out), c.clone()));
        }
        Ok(Poly::from_terms(target, terms))
    }

    /// Moves the polynomial to a table with the same symbol names.
    pub fn to_table(&self, target: &Arc<VarTable>) -> Result<Poly, PolyError> {
        if same_table(&self.vars, target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<VarId>> = self
            .vars
            .ids()
            .map(|v| target.id(self.vars.name(v)).ok())
            .collect();
        self.remap(target, &map)
    }

    /// Value at a rational point indexed by symbol.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// gcd of all term monomials.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.vars.len()),
            Some((m, _)) => it.fold(m.clone(), |g, (m2, _)| g.gcd(m2)),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            /// Panics when the operands use different tables.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("operands share a symbol table")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self)
                    .$checked(&rhs)
                    .expect("operands share a symbol table")
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self)
                    .$checked(rhs)
                    .expect("operands share a symbol table")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Poly {
            vars: self.vars.clone(),
            terms,
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for t in &mut self.terms {
            t.1 = -std::mem::take(&mut t.1);
        }
        self
    }
}
