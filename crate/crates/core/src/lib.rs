//! Exact polynomial engine that replays an elimination argument for
//! biharmonic hypersurfaces with four principal curvatures.
//!
//! The crate is layered: [`poly`] provides integer polynomials and rational
//! functions over a shared symbol table, [`exprio`] reads and writes them,
//! [`diffalg`] applies the frame derivation, [`elim`] removes variables,
//! [`frame`] models the connection of the principal frame, and [`replay`]
//! strings these together into certified stages.

pub mod diffalg;
pub mod elim;
pub mod exprio;
pub mod frame;
pub mod poly;
pub mod replay;

pub use diffalg::{DerivationTable, DiffError, Regime};
pub use elim::{ElimError, ElimMethod, ElimResult};
pub use exprio::{
    load_fixtures, parse, render, render_latex, FixtureError, FixtureSet, ParseError,
};
pub use poly::{FracPoly, Monomial, Poly, PolyError, VarId, VarTable, Weight};
pub use replay::{FixtureMatch, Stage, StageReport, StepRecord, Verdict};
