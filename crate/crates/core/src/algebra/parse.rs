//! Parser for the element expression grammar used by the CLI and by
//! spec files:
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := coeff | [coeff '*'] factor ('*' factor)*
//! coeff  := int | int '/' int
//! factor := ident ['^' nat]
//! ident  := letter (letter | digit | '_')*
//! ```
//!
//! Whitespace is insignificant. Identifiers resolve to generators of
//! the target algebra or to named scalar parameters (such as `k`);
//! anything else is an error, with a line and column. Over `F_p`
//! coefficients reduce mod `p` and a denominator divisible by `p` is an
//! error. Parsed monomials are normalized to canonical generator
//! order, accumulating Koszul signs.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

struct Lexer {
    tokens: Vec<(Tok, usize)>, // token and byte offset
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for (i, c) in text.char_indices() {
        if i >= offset {
            break;
        }
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

fn err_at(text: &str, offset: usize, message: impl Into<String>) -> Error {
    let (line, col) = line_col(text, offset);
    Error::Parse {
        line,
        col,
        message: message.into(),
    }
}

impl Lexer {
    fn tokenize(text: &str) -> Result<Self> {
        let bytes = text.as_bytes();
        let mut tokens = Vec::new();
        let mut i = 0usize;
        while i < bytes.len() {
            let c = bytes[i] as char;
            match c {
                ' ' | '\t' | '\r' | '\n' => i += 1,
                '+' => {
                    tokens.push((Tok::Plus, i));
                    i += 1;
                }
                '-' => {
                    tokens.push((Tok::Minus, i));
                    i += 1;
                }
                '*' => {
                    tokens.push((Tok::Star, i));
                    i += 1;
                }
                '/' => {
                    tokens.push((Tok::Slash, i));
                    i += 1;
                }
                '^' => {
                    tokens.push((Tok::Caret, i));
                    i += 1;
                }
                '0'..='9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n: i64 = text[start..i]
                        .parse()
                        .map_err(|_| err_at(text, start, "integer literal too large"))?;
                    tokens.push((Tok::Int(n), start));
                }
                c if c.is_ascii_alphabetic() => {
                    let start = i;
                    while i < bytes.len()
                        && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                    {
                        i += 1;
                    }
                    tokens.push((Tok::Ident(text[start..i].to_string()), start));
                }
                other => return Err(err_at(text, i, format!("unexpected character `{other}`"))),
            }
        }
        Ok(Lexer { tokens })
    }
}

struct Parser<'a, F: Field> {
    text: &'a str,
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    algebra: &'a Arc<Algebra<F>>,
    params: &'a BTreeMap<String, F::Elem>,
}

impl<'a, F: Field> Parser<'a, F> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, o)| *o)
            .unwrap_or(self.text.len())
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: Tok) -> bool {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        err_at(self.text, self.offset(), message)
    }

    fn parse_expr(&mut self) -> Result<Element<F>> {
        let mut negate = self.eat(Tok::Minus);
        let mut acc = Element::zero(self.algebra);
        loop {
            let term = self.parse_term()?;
            acc = if negate { acc.sub(&term)? } else { acc.add(&term)? };
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    negate = false;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    negate = true;
                }
                None => break,
                _ => return Err(self.error("expected `+`, `-` or end of expression")),
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Element<F>> {
        let mut acc = match self.peek() {
            Some(Tok::Int(_)) => {
                let c = self.parse_coeff()?;
                let elt = Element::scalar(self.algebra, c);
                if !self.eat(Tok::Star) {
                    return Ok(elt); // bare-coefficient term
                }
                elt
            }
            _ => Element::one(self.algebra),
        };
        acc = acc.mul(&self.parse_factor()?)?;
        while self.eat(Tok::Star) {
            acc = acc.mul(&self.parse_factor()?)?;
        }
        Ok(acc)
    }

    fn parse_coeff(&mut self) -> Result<F::Elem> {
        let num = match self.bump() {
            Some(Tok::Int(n)) => n,
            _ => return Err(self.error("expected an integer")),
        };
        if self.eat(Tok::Slash) {
            let at = self.offset();
            let den = match self.bump() {
                Some(Tok::Int(n)) => n,
                _ => return Err(self.error("expected a denominator")),
            };
            self.algebra
                .field()
                .from_ratio(num, den)
                .map_err(|e| err_at(self.text, at, e.to_string()))
        } else {
            Ok(self.algebra.field().from_int(num))
        }
    }

    fn parse_factor(&mut self) -> Result<Element<F>> {
        let at = self.offset();
        let name = match self.bump() {
            Some(Tok::Ident(s)) => s,
            _ => return Err(err_at(self.text, at, "expected an identifier")),
        };
        let base = if let Some(value) = self.params.get(&name) {
            Element::scalar(self.algebra, value.clone())
        } else if let Some(g) = self.algebra.generator_index(&name) {
            Element::generator(self.algebra, g)
        } else {
            return Err(err_at(self.text, at, format!("unknown identifier `{name}`")));
        };
        if self.eat(Tok::Caret) {
            let at = self.offset();
            match self.bump() {
                Some(Tok::Int(e)) if e >= 0 => base
                    .pow(e as u32)
                    .map_err(|e| err_at(self.text, at, e.to_string())),
                _ => Err(err_at(self.text, at, "expected an exponent")),
            }
        } else {
            Ok(base)
        }
    }
}

/// Parses an expression into an element of `algebra`. `params` binds
/// identifiers (such as the run parameter `k`) to scalar values.
pub fn parse_element<F: Field>(
    algebra: &Arc<Algebra<F>>,
    text: &str,
    params: &BTreeMap<String, F::Elem>,
) -> Result<Element<F>> {
    let lexer = Lexer::tokenize(text)?;
    if lexer.tokens.is_empty() {
        return Err(err_at(text, 0, "empty expression"));
    }
    let mut parser = Parser {
        text,
        tokens: lexer.tokens,
        pos: 0,
        algebra,
        params,
    };
    let out = parser.parse_expr()?;
    debug_assert_eq!(parser.pos, parser.tokens.len());
    Ok(out)
}
