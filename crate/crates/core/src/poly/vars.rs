use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock};

use super::PolyError;

/// Index of a symbol inside a [`VarTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub(crate) usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Ordered symbol table. Position fixes the monomial order, and each
/// symbol carries an integer weight used for homogeneity checks.
#[derive(Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    weights: Vec<i64>,
    index: HashMap<String, usize>,
}

/// Symbols of the geometric computation with their weights.
pub const REGISTRY: &[(&str, i64)] = &[
    ("c", 2),
    ("lam", 1),
    ("lam1", 2),
    ("lam2", 3),
    ("lam3", 4),
    ("lam4", 5),
    ("lam5", 6),
    ("T", 1),
    ("T1", 2),
    ("T2", 3),
    ("T3", 4),
    ("T4", 5),
    ("kap", 0),
    ("tau", 1),
    ("y1", 1),
    ("y2", 2),
    ("y3", 3),
    ("a", -1),
    ("w2", 1),
    ("w3", 1),
    ("w4", 1),
    ("mu2", 1),
    ("mu3", 1),
    ("mu4", 1),
    ("Da", 0),
    ("u", 0),
];

static REGISTRY_TABLE: LazyLock<Arc<VarTable>> = LazyLock::new(|| {
    VarTable::new(REGISTRY.iter().copied()).expect("registry symbols are distinct")
});

impl VarTable {
    pub fn new<I, S>(entries: I) -> Result<Arc<Self>, PolyError>
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut weights = Vec::new();
        let mut index = HashMap::new();
        for (name, w) in entries {
            let name = name.into();
            if index.insert(name.clone(), names.len()).is_some() {
                return Err(PolyError::DuplicateVariable(name));
            }
            names.push(name);
            weights.push(w);
        }
        Ok(Arc::new(VarTable {
            names,
            weights,
            index,
        }))
    }

    /// The shared table holding every symbol the replay uses.
    pub fn registry() -> Arc<VarTable> {
        REGISTRY_TABLE.clone()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn id(&self, name: &str) -> Result<VarId, PolyError> {
        self.index
            .get(name)
            .map(|&i| VarId(i))
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// Like [`VarTable::id`] but panics; for symbols known to exist.
    pub fn var(&self, name: &str) -> VarId {
        self.id(name)
            .unwrap_or_else(|_| panic!("symbol `{name}` is not in the table"))
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.names[v.0]
    }

    pub fn weight(&self, v: VarId) -> i64 {
        self.weights[v.0]
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn ids(&self) -> impl Iterator<Item = VarId> {
        (0..self.names.len()).map(VarId)
    }

    /// A table with the same symbols followed by `extra`.
    pub fn extended<I, S>(&self, extra: I) -> Result<Arc<VarTable>, PolyError>
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        let base = self.names.iter().cloned().zip(self.weights.iter().copied());
        let extra = extra.into_iter().map(|(n, w)| (n.into(), w));
        VarTable::new(base.chain(extra))
    }

    /// Table restricted to `keep`, in the original order.
    pub fn restricted(&self, keep: &[VarId]) -> Arc<VarTable> {
        let mut keep = keep.to_vec();
        keep.sort();
        keep.dedup();
        VarTable::new(
            keep.iter()
                .map(|v| (self.names[v.0].clone(), self.weights[v.0])),
        )
        .expect("subset of a valid table")
    }
}

impl fmt::Display for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (n, w)) in self.names.iter().zip(&self.weights).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}:{w}")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_order_and_weights() {
        let t = VarTable::registry();
        assert_eq!(t.len(), REGISTRY.len());
        assert_eq!(t.weight(t.var("c")), 2);
        assert_eq!(t.weight(t.var("a")), -1);
        assert!(t.var("c") < t.var("lam"));
        assert!(t.id("nope").is_err());
    }

    #[test]
    fn duplicate_names_rejected() {
        let err = VarTable::new([("x", 1), ("x", 2)]).unwrap_err();
        assert!(matches!(err, PolyError::DuplicateVariable(n) if n == "x"));
    }
}
