//! Levi-Civita connection of the principal frame `e1..e4`.
//!
//! `e1` is the direction of the mean curvature gradient, so every scalar of
//! the model is killed by `e2, e3, e4` except the function `a` that
//! parametrizes the cross coefficients. Its derivatives along `e2, e3, e4`
//! are carried as the unknowns `D2a, D3a, D4a`, which the Gauss equations
//! then determine.
//!
//! Connection coefficients are `w[i][j][k] = <nabla_{e_i} e_j, e_k>`:
//! `nabla_{e1} e_j = 0`, `nabla_{e_i} e1 = -w_i e_i`, `nabla_{e_i} e_i =
//! w_i e1`, and for distinct `i, j, k >= 2` the cross terms are `w[i][j][k]
//! e_k`, antisymmetric in `(j, k)`.

use std::ops::{Add, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::diffalg::{derive_frac, DerivationTable, DiffError, Regime};
use crate::elim::is_declared_product;
use crate::exprio::parse;
use crate::poly::{FracPoly, Poly, PolyError, VarId, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("`{0}` does not occur in any component")]
    UnknownAbsent(String),
    #[error("`{0}` does not occur linearly")]
    NotLinear(String),
    #[error("components give different values for `{0}`")]
    Inconsistent(String),
    #[error(transparent)]
    Diff(#[from] DiffError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A tangent vector `sum_k v[k] e_{k+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorExpr(pub [FracPoly; 4]);

impl VectorExpr {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        VectorExpr(std::array::from_fn(|_| FracPoly::zero(vars)))
    }

    /// The frame vector `e_i`, `i` in `1..=4`.
    pub fn basis(vars: &Arc<VarTable>, i: usize) -> Self {
        let mut v = VectorExpr::zero(vars);
        v.0[i - 1] = FracPoly::one(vars);
        v
    }

    /// Component along `e_i`, `i` in `1..=4`.
    pub fn component(&self, i: usize) -> &FracPoly {
        &self.0[i - 1]
    }

    pub fn scale(&self, f: &FracPoly) -> Self {
        VectorExpr(std::array::from_fn(|k| &self.0[k] * f))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

impl Add for &VectorExpr {
    type Output = VectorExpr;
    fn add(self, rhs: &VectorExpr) -> VectorExpr {
        VectorExpr(std::array::from_fn(|k| &self.0[k] + &rhs.0[k]))
    }
}

impl Sub for &VectorExpr {
    type Output = VectorExpr;
    fn sub(self, rhs: &VectorExpr) -> VectorExpr {
        VectorExpr(std::array::from_fn(|k| &self.0[k] - &rhs.0[k]))
    }
}

/// How the cross coefficients `w[i][j][k]` are represented.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossCoefficients {
    /// Through the function `a`: `w[2][3][4] = a (mu2 - mu3)(mu2 - mu4)`
    /// and its cyclic images.
    Parametrized,
    /// As free symbols `o234, o342, o423`.
    Generic,
}

#[derive(Debug, Clone)]
pub struct FrameModel {
    vars: Arc<VarTable>,
    /// `directions[i]` is the action of `e_{i+1}` on scalars.
    directions: [DerivationTable; 4],
    omega: Vec<Vec<Vec<FracPoly>>>,
    lambda: [FracPoly; 4],
    declared: Vec<Poly>,
}

impl FrameModel {
    pub fn new(cross: CrossCoefficients) -> Result<Self, FrameError> {
        let reg = VarTable::registry();
        let mut extra = vec![("D2a", 0), ("D3a", 0), ("D4a", 0)];
        if cross == CrossCoefficients::Generic {
            extra.extend([("o234", 1), ("o342", 1), ("o423", 1)]);
        }
        let vars = reg.extended(extra)?;
        let p = |s: &str| parse(s, &vars).expect("built-in expression parses");
        let f = |s: &str| -> FracPoly { p(s).into() };

        // e1 on the extended table: the frame rules plus nothing for the new
        // symbols, which never need an e1 derivative.
        let base = DerivationTable::frame();
        let mut e1 = DerivationTable::new(Regime::Frame, &vars);
        for v in reg.ids() {
            if let Some(rule) = base.rule(v) {
                let num = rule.num().to_table(&vars)?;
                let den = rule.den().to_table(&vars)?;
                e1.set_rule(vars.var(reg.name(v)), FracPoly::new(num, den)?);
            }
        }
        let mut directions = vec![e1];
        for j in 2..=4 {
            let mut t = DerivationTable::new(Regime::Frame, &vars);
            for name in ["c", "mu2", "mu3", "mu4", "w2", "w3", "w4"] {
                t.set_rule(vars.var(name), FracPoly::zero(&vars));
            }
            t.set_rule(vars.var("a"), f(&format!("D{j}a")));
            if cross == CrossCoefficients::Generic {
                for name in ["o234", "o342", "o423"] {
                    t.set_rule(vars.var(name), FracPoly::zero(&vars));
                }
            }
            directions.push(t);
        }
        let directions: [DerivationTable; 4] = directions.try_into().expect("four directions");

        let zero = FracPoly::zero(&vars);
        let mut omega = vec![vec![vec![zero.clone(); 4]; 4]; 4];
        for i in 1..4 {
            let w = f(&format!("w{}", i + 1));
            omega[i][0][i] = -&w;
            omega[i][i][0] = w;
        }
        let (a234, a342, a423) = match cross {
            CrossCoefficients::Parametrized => (
                f("a*(mu2 - mu3)*(mu2 - mu4)"),
                f("a*(mu3 - mu4)*(mu3 - mu2)"),
                f("a*(mu4 - mu2)*(mu4 - mu3)"),
            ),
            CrossCoefficients::Generic => (f("o234"), f("o342"), f("o423")),
        };
        let set = |om: &mut Vec<Vec<Vec<FracPoly>>>, i: usize, j: usize, k: usize, v: &FracPoly| {
            om[i - 1][j - 1][k - 1] = v.clone();
            om[i - 1][k - 1][j - 1] = -v;
        };
        set(&mut omega, 2, 3, 4, &a234);
        set(&mut omega, 3, 4, 2, &a342);
        set(&mut omega, 4, 2, 3, &a423);

        let lambda = [
            FracPoly::over_integer(p("-(mu2 + mu3 + mu4)"), 3)?,
            f("mu2"),
            f("mu3"),
            f("mu4"),
        ];
        let declared = vec![p("mu2 - mu3"), p("mu2 - mu4"), p("mu3 - mu4")];
        Ok(FrameModel {
            vars,
            directions,
            omega,
            lambda,
            declared,
        })
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn declared(&self) -> &[Poly] {
        &self.declared
    }

    pub fn var(&self, name: &str) -> VarId {
        self.vars.var(name)
    }

    /// Parses an expression over the model's table.
    pub fn expr(&self, s: &str) -> Result<Poly, crate::exprio::ParseError> {
        parse(s, &self.vars)
    }

    /// Principal curvature of `e_i`.
    pub fn lambda(&self, i: usize) -> &FracPoly {
        &self.lambda[i - 1]
    }

    pub fn omega(&self, i: usize, j: usize, k: usize) -> &FracPoly {
        &self.omega[i - 1][j - 1][k - 1]
    }

    /// `e_i(f)` for a scalar `f`.
    pub fn apply(&self, i: usize, f: &FracPoly) -> Result<FracPoly, FrameError> {
        Ok(derive_frac(f, &self.directions[i - 1])?)
    }

    /// `nabla_{e_i} V`.
    pub fn covariant_derivative(&self, i: usize, v: &VectorExpr) -> Result<VectorExpr, FrameError> {
        let mut out = VectorExpr::zero(&self.vars);
        for m in 0..4 {
            let vm = &v.0[m];
            if vm.is_zero() {
                continue;
            }
            let d = self.apply(i, vm)?;
            out.0[m] = &out.0[m] + &d;
            for k in 0..4 {
                let w = &self.omega[i - 1][m][k];
                if !w.is_zero() {
                    out.0[k] = &out.0[k] + &(vm * w);
                }
            }
        }
        Ok(out)
    }

    /// `nabla_X V` for a vector field `X`.
    pub fn covariant_along(
        &self,
        x: &VectorExpr,
        v: &VectorExpr,
    ) -> Result<VectorExpr, FrameError> {
        let mut out = VectorExpr::zero(&self.vars);
        for m in 0..4 {
            if x.0[m].is_zero() {
                continue;
            }
            let d = self.covariant_derivative(m + 1, v)?;
            out = &out + &d.scale(&x.0[m]);
        }
        Ok(out)
    }

    /// `[e_i, e_j]` from the torsion-free condition.
    pub fn bracket(&self, i: usize, j: usize) -> Result<VectorExpr, FrameError> {
        let ei = VectorExpr::basis(&self.vars, i);
        let ej = VectorExpr::basis(&self.vars, j);
        Ok(&self.covariant_derivative(i, &ej)? - &self.covariant_derivative(j, &ei)?)
    }

    /// `R(e_i, e_j) e_k`.
    pub fn curvature(&self, i: usize, j: usize, k: usize) -> Result<VectorExpr, FrameError> {
        let ek = VectorExpr::basis(&self.vars, k);
        let dj = self.covariant_derivative(j, &ek)?;
        let di = self.covariant_derivative(i, &ek)?;
        let first = self.covariant_derivative(i, &dj)?;
        let second = self.covariant_derivative(j, &di)?;
        let br = self.bracket(i, j)?;
        let third = self.covariant_along(&br, &ek)?;
        Ok(&(&first - &second) - &third)
    }

    /// `R(e_i, e_j) e_k` minus the Gauss right-hand side
    /// `c(<e_j,e_k> e_i - <e_i,e_k> e_j) + <A e_j,e_k> A e_i - <A e_i,e_k> A e_j`.
    pub fn gauss_residual(&self, i: usize, j: usize, k: usize) -> Result<VectorExpr, FrameError> {
        let mut r = self.curvature(i, j, k)?;
        let c: FracPoly = Poly::sym(&self.vars, "c").into();
        if j == k {
            let coef = &c + &(self.lambda(j) * self.lambda(i));
            r.0[i - 1] = &r.0[i - 1] - &coef;
        }
        if i == k {
            let coef = &c + &(self.lambda(i) * self.lambda(j));
            r.0[j - 1] = &r.0[j - 1] + &coef;
        }
        Ok(r)
    }

    /// `(nabla_{e_i} A) e_j - (nabla_{e_j} A) e_i`.
    pub fn codazzi_residual(&self, i: usize, j: usize) -> Result<VectorExpr, FrameError> {
        Ok(&self.nabla_shape(i, j)? - &self.nabla_shape(j, i)?)
    }

    fn nabla_shape(&self, i: usize, j: usize) -> Result<VectorExpr, FrameError> {
        // nabla_{e_i}(A e_j) - A(nabla_{e_i} e_j)
        let aej = VectorExpr::basis(&self.vars, j).scale(self.lambda(j));
        let first = self.covariant_derivative(i, &aej)?;
        let ej = VectorExpr::basis(&self.vars, j);
        let nab = self.covariant_derivative(i, &ej)?;
        let second = VectorExpr(std::array::from_fn(|k| &nab.0[k] * &self.lambda[k]));
        Ok(&first - &second)
    }

    /// Cyclic sum `R(e_i,e_j)e_k + R(e_j,e_k)e_i + R(e_k,e_i)e_j`.
    pub fn bianchi(&self, i: usize, j: usize, k: usize) -> Result<VectorExpr, FrameError> {
        let a = self.curvature(i, j, k)?;
        let b = self.curvature(j, k, i)?;
        let c = self.curvature(k, i, j)?;
        Ok(&(&a + &b) + &c)
    }

    /// Solves the components of `residual` that involve `unknown` (each must
    /// be linear in it) and checks that they agree.
    pub fn solve_unknown(
        &self,
        residual: &VectorExpr,
        unknown: VarId,
    ) -> Result<FracPoly, FrameError> {
        let name = self.vars.name(unknown).to_string();
        let mut value: Option<FracPoly> = None;
        for comp in &residual.0 {
            let n = comp.num();
            if !n.contains(unknown) {
                continue;
            }
            if n.degree_in(unknown) != 1 {
                return Err(FrameError::NotLinear(name));
            }
            let v = FracPoly::new(-n.coeff_in(unknown, 0), n.coeff_in(unknown, 1))?;
            match &value {
                None => value = Some(v),
                Some(prev) => {
                    if !(prev - &v).is_zero() {
                        return Err(FrameError::Inconsistent(name));
                    }
                }
            }
        }
        value.ok_or(FrameError::UnknownAbsent(name))
    }

    /// Numerators of the components, with declared differences removed.
    pub fn relations(&self, residual: &VectorExpr) -> Vec<Poly> {
        residual
            .0
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| crate::elim::strip_factors(c.num(), &self.declared).0)
            .collect()
    }

    /// Whether `p` is a product of the declared curvature differences.
    pub fn is_declared(&self, p: &Poly) -> bool {
        is_declared_product(p, &self.declared)
    }
}
