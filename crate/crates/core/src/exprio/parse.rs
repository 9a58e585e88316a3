use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::{Poly, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: unknown symbol `{name}`")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, column, .. }
            | ParseError::UnknownVariable { line, column, .. } => (*line, *column),
        }
    }

    fn shifted(self, line0: usize, col0: usize) -> ParseError {
        let fix = |line: usize, column: usize| {
            if line == 1 {
                (line0, column + col0)
            } else {
                (line + line0 - 1, column)
            }
        };
        match self {
            ParseError::Syntax {
                line,
                column,
                message,
            } => {
                let (line, column) = fix(line, column);
                ParseError::Syntax {
                    line,
                    column,
                    message,
                }
            }
            ParseError::UnknownVariable { name, line, column } => {
                let (line, column) = fix(line, column);
                ParseError::UnknownVariable { name, line, column }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let (l0, c0) = (line, col);
        if ch == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if ch.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let tok = if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Int(text.parse().expect("digits")),
                line: l0,
                column: c0,
            });
            continue;
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(text),
                line: l0,
                column: c0,
            });
            continue;
        } else {
            match ch {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(ParseError::Syntax {
                        line: l0,
                        column: c0,
                        message: format!("unexpected character `{ch}`"),
                    })
                }
            }
        };
        out.push(Token {
            tok,
            line: l0,
            column: c0,
        });
        i += 1;
        col += 1;
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    vars: &'a Arc<VarTable>,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, t: &Token, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let negate = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.primary()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match t.tok {
            Tok::Int(ref n) => {
                let k: u32 = n
                    .try_into()
                    .map_err(|_| self.error(&t, "exponent too large"))?;
                Ok(base.pow(k))
            }
            _ => Err(self.error(&t, "expected an integer exponent")),
        }
    }

    fn primary(&mut self) -> Result<Poly, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Int(n) => Ok(Poly::constant(self.vars, n)),
            Tok::Ident(ref name) => match self.vars.id(name) {
                Ok(v) => Ok(Poly::var(self.vars, v)),
                Err(_) => Err(ParseError::UnknownVariable {
                    name: name.clone(),
                    line: t.line,
                    column: t.column,
                }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(self.error(&close, "expected `)`"));
                }
                Ok(inner)
            }
            Tok::End => Err(self.error(&t, "unexpected end of input")),
            _ => Err(self.error(&t, "expected a number, symbol or `(`")),
        }
    }
}

/// Parses an integer polynomial expression over `vars`.
///
/// Grammar: `expr := ['-'] term (('+'|'-') term)*`, `term := factor ('*'
/// factor)*`, `factor := primary ['^' integer]`, `primary := integer |
/// identifier | '(' expr ')'`.
pub fn parse(text: &str, vars: &Arc<VarTable>) -> Result<Poly, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, vars };
    let out = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(p.error(&t, "unexpected token after expression"));
    }
    Ok(out)
}

/// Like [`parse`] with positions reported relative to `line` and `column`
/// of an enclosing document (both 1-based).
pub fn parse_at(
    text: &str,
    vars: &Arc<VarTable>,
    line: usize,
    column: usize,
) -> Result<Poly, ParseError> {
    parse(text, vars).map_err(|e| e.shifted(line, column - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg() -> Arc<VarTable> {
        VarTable::registry()
    }

    #[test]
    fn precedence_and_power() {
        let a = parse("2*c^3 + 7", &reg()).unwrap();
        let c = parse("c", &reg()).unwrap();
        assert_eq!(a, c.pow(3).scale(&2.into()) + Poly::constant(&reg(), 7));
        let b = parse("-(lam + c)^2", &reg()).unwrap();
        assert_eq!(b, parse("-lam^2 - 2*lam*c - c^2", &reg()).unwrap());
    }

    #[test]
    fn double_star_is_rejected() {
        let err = parse("lam ** 2", &reg()).unwrap_err();
        assert_eq!(err.position(), (1, 6));
        assert!(matches!(err, ParseError::Syntax { .. }));
    }

    #[test]
    fn unknown_symbol() {
        let err = parse("lam + zeta", &reg()).unwrap_err();
        assert_eq!(
            err,
            ParseError::UnknownVariable {
                name: "zeta".into(),
                line: 1,
                column: 7
            }
        );
    }

    #[test]
    fn trailing_garbage() {
        assert!(parse("lam )", &reg()).is_err());
        assert!(parse("", &reg()).is_err());
        assert!(parse("lam^x", &reg()).is_err());
    }

    #[test]
    fn shifted_positions() {
        let err = parse_at("lam + zeta", &reg(), 12, 9).unwrap_err();
        assert_eq!(err.position(), (12, 15));
    }
}
