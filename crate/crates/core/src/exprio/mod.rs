//! Text and LaTeX input/output for polynomials, plus the fixture loader.

mod fixtures;
mod parse;
mod render;

pub use fixtures::{load_fixtures, load_fixtures_with, Fixture, FixtureError, FixtureSet};
pub use parse::{parse, parse_at, ParseError};
pub use render::{latex_symbol, render, render_latex};
