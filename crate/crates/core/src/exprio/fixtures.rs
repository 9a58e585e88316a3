use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use indexmap::IndexMap;
use thiserror::Error;

use super::parse::{parse_at, ParseError};
use crate::poly::{Poly, VarTable};

/// One transcribed polynomial.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub id: String,
    pub poly: Poly,
    pub note: Option<String>,
    pub file: PathBuf,
    pub line: usize,
}

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("fixtures directory not found: {0}")]
    MissingDirectory(PathBuf),
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}:{}:{}: {source}", file.display(), source.position().0, source.position().1)]
    Parse { file: PathBuf, source: ParseError },
    #[error("{}:{line}: expected `id: expression`", file.display())]
    Malformed { file: PathBuf, line: usize },
    #[error("duplicate fixture id `{id}` ({}:{first_line} and {}:{second_line})", first_file.display(), second_file.display())]
    DuplicateId {
        id: String,
        first_file: PathBuf,
        first_line: usize,
        second_file: PathBuf,
        second_line: usize,
    },
    #[error("no fixture with id `{0}`")]
    Missing(String),
}

/// Fixtures keyed by id, in file order.
#[derive(Debug, Clone, Default)]
pub struct FixtureSet {
    entries: IndexMap<String, Fixture>,
}

impl FixtureSet {
    pub fn get(&self, id: &str) -> Option<&Fixture> {
        self.entries.get(id)
    }

    pub fn poly(&self, id: &str) -> Result<&Poly, FixtureError> {
        self.entries
            .get(id)
            .map(|f| &f.poly)
            .ok_or_else(|| FixtureError::Missing(id.into()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Fixture> {
        self.entries.values()
    }

    fn insert(&mut self, fx: Fixture) -> Result<(), FixtureError> {
        if let Some(prev) = self.entries.get(&fx.id) {
            return Err(FixtureError::DuplicateId {
                id: fx.id.clone(),
                first_file: prev.file.clone(),
                first_line: prev.line,
                second_file: fx.file,
                second_line: fx.line,
            });
        }
        self.entries.insert(fx.id.clone(), fx);
        Ok(())
    }

    /// Parses one fixture document. Lines have the form `id: expression`,
    /// optionally followed by `# note`; blank lines and lines starting with
    /// `#` are skipped.
    pub fn add_source(
        &mut self,
        text: &str,
        file: &Path,
        vars: &Arc<VarTable>,
    ) -> Result<(), FixtureError> {
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let Some(colon) = raw.find(':') else {
                return Err(FixtureError::Malformed {
                    file: file.into(),
                    line,
                });
            };
            let id = raw[..colon].trim();
            if id.is_empty() || id.contains(char::is_whitespace) {
                return Err(FixtureError::Malformed {
                    file: file.into(),
                    line,
                });
            }
            let body = &raw[colon + 1..];
            let (expr, note) = match body.find('#') {
                Some(h) => (&body[..h], Some(body[h + 1..].trim().to_string())),
                None => (body, None),
            };
            let column = colon + 2;
            let poly =
                parse_at(expr, vars, line, column).map_err(|source| FixtureError::Parse {
                    file: file.into(),
                    source,
                })?;
            self.insert(Fixture {
                id: id.into(),
                poly,
                note,
                file: file.into(),
                line,
            })?;
        }
        Ok(())
    }
}

/// Loads every `*.fix` file in `dir` (sorted by name) over the registry.
pub fn load_fixtures(dir: &Path) -> Result<FixtureSet, FixtureError> {
    load_fixtures_with(dir, &VarTable::registry())
}

pub fn load_fixtures_with(dir: &Path, vars: &Arc<VarTable>) -> Result<FixtureSet, FixtureError> {
    if !dir.is_dir() {
        return Err(FixtureError::MissingDirectory(dir.into()));
    }
    fn io(path: &Path) -> impl FnOnce(std::io::Error) -> FixtureError + '_ {
        move |source| FixtureError::Io {
            path: path.into(),
            source,
        }
    }
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io(dir))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "fix"))
        .collect();
    files.sort();
    let mut set = FixtureSet::default();
    for f in files {
        let text = fs::read_to_string(&f).map_err(io(&f))?;
        set.add_source(&text, &f, vars)?;
    }
    Ok(set)
}
