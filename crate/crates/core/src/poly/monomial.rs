use smallvec::SmallVec;

use super::VarId;

pub(crate) type Exps = SmallVec<[u16; 8]>;

/// Dense exponent vector. The derived ordering compares total degree
/// first and then exponents from the first symbol on, which is the
/// graded-lex order over the table order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u32,
    exps: Exps,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            deg: 0,
            exps: smallvec::smallvec![0; nvars],
        }
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Monomial {
            deg: exps.iter().map(|&e| e as u32).sum(),
            exps: Exps::from_slice(exps),
        }
    }

    pub fn var(nvars: usize, v: VarId, e: u16) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[v.0] = e;
        m.deg = e as u32;
        m
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exp(&self, v: VarId) -> u16 {
        self.exps[v.0]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            deg: self.deg + other.deg,
            exps,
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let exps = self
            .exps
            .iter()
            .map(|&a| u16::try_from(a as u32 * k).expect("exponent overflow"))
            .collect();
        Monomial {
            deg: self.deg * k,
            exps,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a - b)
            .collect();
        Some(Monomial {
            deg: self.deg - other.deg,
            exps,
        })
    }

    pub fn with_exp(&self, v: VarId, e: u16) -> Monomial {
        let mut m = self.clone();
        m.deg = m.deg - m.exps[v.0] as u32 + e as u32;
        m.exps[v.0] = e;
        m
    }

    pub fn weight(&self, weights: &[i64]) -> i64 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.min(b))
            .collect();
        Monomial::from_exps(&exps)
    }
}
