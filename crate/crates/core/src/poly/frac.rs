use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::{Poly, PolyError, VarId, VarTable};

/// Quotient `num / den` of integer polynomials.
///
/// Only the integer content shared by numerator and denominator is
/// cancelled automatically, and the denominator is kept with a positive
/// leading coefficient. Polynomial common factors are cancelled on request
/// with [`FracPoly::cancel`].
#[derive(Clone, PartialEq, Eq)]
pub struct FracPoly {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for FracPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Display for FracPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl From<Poly> for FracPoly {
    fn from(p: Poly) -> Self {
        let den = Poly::one(p.vars());
        FracPoly { num: p, den }
    }
}

impl FracPoly {
    pub fn new(num: Poly, den: Poly) -> Result<FracPoly, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if !super::same_table(num.vars(), den.vars()) {
            return Err(PolyError::RegistryMismatch);
        }
        let mut f = FracPoly { num, den };
        f.normalize();
        Ok(f)
    }

    pub fn zero(vars: &Arc<VarTable>) -> FracPoly {
        Poly::zero(vars).into()
    }

    /// `num / n` for an integer `n`.
    pub fn over_integer(num: Poly, n: impl Into<BigInt>) -> Result<FracPoly, PolyError> {
        let den = Poly::constant(num.vars(), n.into());
        FracPoly::new(num, den)
    }

    fn normalize(&mut self) {
        let vars = self.num.vars().clone();
        if self.num.is_zero() {
            self.den = Poly::one(&vars);
            return;
        }
        let g = self.num.content().gcd(&self.den.content());
        let mut g = g;
        if self.den.leading_coeff().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        if !g.is_one() {
            self.num = self.num.div_integer(&g).expect("gcd divides");
            self.den = self.den.div_integer(&g).expect("gcd divides");
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value when the denominator is a unit.
    pub fn as_poly(&self) -> Option<Poly> {
        match self.den.constant_value() {
            Some(d) if d.is_one() => Some(self.num.clone()),
            Some(d) if (-&d).is_one() => Some(-&self.num),
            _ => None,
        }
    }

    /// The polynomial value when the denominator divides the numerator.
    pub fn try_into_poly(&self) -> Option<Poly> {
        self.num.exact_div(&self.den).ok()
    }

    pub fn checked_add(&self, other: &FracPoly) -> Result<FracPoly, PolyError> {
        if self.den == other.den {
            return FracPoly::new(self.num.checked_add(&other.num)?, self.den.clone());
        }
        if let Ok(k) = self.den.exact_div(&other.den) {
            return FracPoly::new(self.num.checked_add(&(&other.num * &k))?, self.den.clone());
        }
        if let Ok(k) = other.den.exact_div(&self.den) {
            return FracPoly::new((&self.num * &k).checked_add(&other.num)?, other.den.clone());
        }
        let num = Poly::mul_sub_mul(&self.num, &other.den, &-&other.num, &self.den)?;
        FracPoly::new(num, self.den.checked_mul(&other.den)?)
    }

    pub fn checked_sub(&self, other: &FracPoly) -> Result<FracPoly, PolyError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &FracPoly) -> Result<FracPoly, PolyError> {
        FracPoly::new(
            self.num.checked_mul(&other.num)?,
            self.den.checked_mul(&other.den)?,
        )
    }

    pub fn checked_div(&self, other: &FracPoly) -> Result<FracPoly, PolyError> {
        if other.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        FracPoly::new(
            self.num.checked_mul(&other.den)?,
            self.den.checked_mul(&other.num)?,
        )
    }

    pub fn scale(&self, c: &BigInt) -> FracPoly {
        FracPoly::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn pow(&self, k: u32) -> FracPoly {
        FracPoly::new(self.num.pow(k), self.den.pow(k)).expect("nonzero denominator")
    }

    /// Removes every common power of `f` from numerator and denominator.
    pub fn cancel(&self, f: &Poly) -> FracPoly {
        let (mut n, mut d) = (self.num.clone(), self.den.clone());
        if f.is_constant() || n.is_zero() {
            return self.clone();
        }
        loop {
            let (Ok(n2), Ok(d2)) = (n.exact_div(f), d.exact_div(f)) else {
                break;
            };
            n = n2;
            d = d2;
        }
        FracPoly::new(n, d).expect("nonzero denominator")
    }

    /// Cancels the full common polynomial part when the denominator divides
    /// the numerator, else returns `self`.
    pub fn simplify(&self) -> FracPoly {
        match self.try_into_poly() {
            Some(p) => p.into(),
            None => self.clone(),
        }
    }

    pub fn substitute(&self, v: VarId, value: &FracPoly) -> Result<FracPoly, PolyError> {
        let n = self.num.substitute(v, value)?;
        let d = self.den.substitute(v, value)?;
        n.checked_div(&d)
    }

    pub fn partial(&self, v: VarId) -> FracPoly {
        let dn = self.num.partial(v);
        let dd = self.den.partial(v);
        if dd.is_zero() {
            return FracPoly::new(dn, self.den.clone()).expect("nonzero denominator");
        }
        let num = Poly::mul_sub_mul(&dn, &self.den, &self.num, &dd).expect("same table");
        FracPoly::new(num, self.den.pow(2)).expect("nonzero denominator")
    }

    /// Integer-content free numerator, the form used as a zero-locus equation.
    pub fn numerator_primitive(&self) -> Result<Poly, PolyError> {
        self.num.primitive_part()
    }
}

macro_rules! fbinop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FracPoly> for &FracPoly {
            type Output = FracPoly;
            fn $method(self, rhs: &FracPoly) -> FracPoly {
                self.$checked(rhs).expect("operands share a symbol table")
            }
        }
        impl $tr<FracPoly> for FracPoly {
            type Output = FracPoly;
            fn $method(self, rhs: FracPoly) -> FracPoly {
                (&self)
                    .$checked(&rhs)
                    .expect("operands share a symbol table")
            }
        }
    };
}

fbinop!(Add, add, checked_add);
fbinop!(Sub, sub, checked_sub);
fbinop!(Mul, mul, checked_mul);

impl Neg for &FracPoly {
    type Output = FracPoly;
    fn neg(self) -> FracPoly {
        FracPoly {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for FracPoly {
    type Output = FracPoly;
    fn neg(self) -> FracPoly {
        FracPoly {
            num: -self.num,
            den: self.den,
        }
    }
}

impl FracPoly {
    pub fn is_integer_den(&self) -> bool {
        self.den.is_constant()
    }

    pub fn zero_like(&self) -> FracPoly {
        FracPoly::zero(self.vars())
    }

    pub fn one(vars: &Arc<VarTable>) -> FracPoly {
        Poly::one(vars).into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprio::parse;

    fn p(s: &str) -> Poly {
        parse(s, &VarTable::registry()).unwrap()
    }

    #[test]
    fn integer_content_cancels() {
        let f = FracPoly::new(p("6*lam"), p("-4")).unwrap();
        assert_eq!(f.num(), &p("-3*lam"));
        assert_eq!(f.den(), &p("2"));
    }

    #[test]
    fn sums_share_denominators() {
        let a = FracPoly::new(p("lam"), p("3")).unwrap();
        let b = FracPoly::new(p("c"), p("6")).unwrap();
        let s = &a + &b;
        assert_eq!(s.num(), &p("2*lam + c"));
        assert_eq!(s.den(), &p("6"));
    }

    #[test]
    fn cancel_common_power() {
        let f = FracPoly::new(p("lam^3*c"), p("2*lam^2"))
            .unwrap()
            .cancel(&p("lam"));
        assert_eq!(f.num(), &p("lam*c"));
        assert_eq!(f.den(), &p("2"));
    }

    #[test]
    fn quotient_rule() {
        let r = VarTable::registry();
        let f = FracPoly::new(p("lam1"), p("lam")).unwrap();
        let d = f.partial(r.var("lam"));
        assert_eq!(d.num(), &p("-lam1"));
        assert_eq!(d.den(), &p("lam^2"));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            FracPoly::new(p("lam"), p("0")),
            Err(PolyError::ZeroPolynomial)
        );
    }
}
