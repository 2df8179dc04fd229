//! Text grammar for sets, elements and families.
//!
//! ```text
//! set      := atom ('|' atom)*
//! atom     := '{' [nat (',' nat)*] '}' | '[' nat ')' | nat '+' nat '*' 'w'
//! element  := '0' | '(' int ',' int ';' set ')'
//! product  := element ('*' element)*
//! family   := ('family' | 'closure') '{' set (';' set)* [';'] '}' | 'singletons'
//! ```
//!
//! Whitespace is allowed between tokens. Parsed sets are canonical, so
//! printing and re-parsing is the identity.

use std::fmt;

use thiserror::Error;

use crate::family::{Family, FamilyError};
use crate::omega_sets::EpSet;
use crate::semigroup::{Element, SemigroupCtx};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {line}:{col}: expected {expected}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyExpr {
    /// Members given verbatim; must already be ω-closed.
    Literal(Vec<EpSet>),
    /// Generators of the smallest ω-closed family containing them.
    Closure(Vec<EpSet>),
    /// All singletons of ω together with `∅`.
    Singletons,
}

impl FamilyExpr {
    pub fn build(&self, cap: usize) -> Result<SemigroupCtx, FamilyError> {
        Ok(match self {
            FamilyExpr::Literal(sets) => SemigroupCtx::new(Family::new(sets.iter().cloned())?),
            FamilyExpr::Closure(sets) => {
                SemigroupCtx::new(Family::close_capped(sets.iter().cloned(), cap)?)
            }
            FamilyExpr::Singletons => SemigroupCtx::singletons(),
        })
    }
}

impl fmt::Display for FamilyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |sets: &[EpSet]| {
            sets.iter()
                .map(EpSet::to_string)
                .collect::<Vec<_>>()
                .join("; ")
        };
        match self {
            FamilyExpr::Literal(s) => write!(f, "family{{{}}}", list(s)),
            FamilyExpr::Closure(s) => write!(f, "closure{{{}}}", list(s)),
            FamilyExpr::Singletons => f.write_str("singletons"),
        }
    }
}

/// Hand-written recursive-descent cursor over the input.
#[derive(Debug, Clone)]
pub struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn error(&self, expected: impl Into<String>) -> SyntaxError {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        SyntaxError {
            line,
            col,
            expected: expected.into(),
        }
    }

    pub fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("`{c}`")))
        }
    }

    pub fn expect_end(&mut self) -> Result<(), SyntaxError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    /// A run of ASCII letters, digits, `-` and `_` starting with a letter.
    pub fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        if !rest.starts_with(|c: char| c.is_ascii_alphabetic()) {
            return None;
        }
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '-' || c == '_'))
            .unwrap_or(rest.len());
        self.pos += len;
        Some(&rest[..len])
    }

    /// Consumes `word` if it is the next identifier.
    pub fn keyword(&mut self, word: &str) -> bool {
        let save = self.pos;
        match self.ident() {
            Some(w) if w == word => true,
            _ => {
                self.pos = save;
                false
            }
        }
    }

    pub fn nat(&mut self) -> Result<u64, SyntaxError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("natural number"));
        }
        let value = rest[..len]
            .parse()
            .map_err(|_| self.error("natural number in range"))?;
        self.pos += len;
        Ok(value)
    }

    pub fn int(&mut self) -> Result<i64, SyntaxError> {
        let negative = self.eat('-');
        let start = self.pos;
        let n = self.nat()?;
        let value = if negative {
            0i64.checked_sub_unsigned(n)
        } else {
            i64::try_from(n).ok()
        };
        value.ok_or_else(|| {
            self.pos = start;
            self.error("integer in range")
        })
    }

    fn atom(&mut self) -> Result<EpSet, SyntaxError> {
        match self.peek() {
            Some('{') => {
                self.pos += 1;
                let mut items = Vec::new();
                if !self.eat('}') {
                    loop {
                        items.push(self.nat()?);
                        if self.eat('}') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                Ok(EpSet::finite(items))
            }
            Some('[') => {
                self.pos += 1;
                let k = self.nat()?;
                self.expect(')')?;
                Ok(EpSet::ray(k))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.nat()?;
                self.expect('+')?;
                let step_at = self.pos;
                let step = self.nat()?;
                self.expect('*')?;
                if !self.keyword("w") {
                    return Err(self.error("`w`"));
                }
                EpSet::progression(start, step).map_err(|_| {
                    self.pos = step_at;
                    self.error("positive step")
                })
            }
            _ => Err(self.error("set (`{...}`, `[k)` or `a+p*w`)")),
        }
    }

    pub fn set(&mut self) -> Result<EpSet, SyntaxError> {
        let mut acc = self.atom()?;
        while self.eat('|') {
            acc = acc.union(&self.atom()?);
        }
        Ok(acc)
    }

    pub fn element(&mut self) -> Result<Element, SyntaxError> {
        match self.peek() {
            Some('0') => {
                self.pos += 1;
                Ok(Element::Zero)
            }
            Some('(') => {
                self.pos += 1;
                let i = self.int()?;
                self.expect(',')?;
                let j = self.int()?;
                self.expect(';')?;
                let set = self.set()?;
                self.expect(')')?;
                Ok(Element::triple(i, j, set))
            }
            _ => Err(self.error("element (`0` or `(i,j;set)`)")),
        }
    }

    pub fn product(&mut self) -> Result<Vec<Element>, SyntaxError> {
        let mut factors = vec![self.element()?];
        while self.eat('*') {
            factors.push(self.element()?);
        }
        Ok(factors)
    }

    pub fn family(&mut self) -> Result<FamilyExpr, SyntaxError> {
        let save = self.pos;
        let kind = self.ident();
        let closure = match kind {
            Some("family") => false,
            Some("closure") => true,
            Some("singletons") => return Ok(FamilyExpr::Singletons),
            _ => {
                self.pos = save;
                return Err(self.error("`family{...}`, `closure{...}` or `singletons`"));
            }
        };
        self.expect('{')?;
        let mut sets = vec![self.set()?];
        while self.eat(';') {
            if self.peek() == Some('}') {
                break;
            }
            sets.push(self.set()?);
        }
        self.expect('}')?;
        Ok(if closure {
            FamilyExpr::Closure(sets)
        } else {
            FamilyExpr::Literal(sets)
        })
    }
}

fn whole<'a, T>(
    src: &'a str,
    f: impl FnOnce(&mut Cursor<'a>) -> Result<T, SyntaxError>,
) -> Result<T, SyntaxError> {
    let mut c = Cursor::new(src);
    let value = f(&mut c)?;
    c.expect_end()?;
    Ok(value)
}

pub fn parse_set(src: &str) -> Result<EpSet, SyntaxError> {
    whole(src, Cursor::set)
}

pub fn parse_element(src: &str) -> Result<Element, SyntaxError> {
    whole(src, Cursor::element)
}

pub fn parse_product(src: &str) -> Result<Vec<Element>, SyntaxError> {
    whole(src, Cursor::product)
}

pub fn parse_family(src: &str) -> Result<FamilyExpr, SyntaxError> {
    whole(src, Cursor::family)
}

impl std::str::FromStr for EpSet {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_set(s)
    }
}

impl std::str::FromStr for Element {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_element(s)
    }
}
