//! Expression syntax for skew polynomials and rational functions.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' ['-'] integer]
//! atom   := 'T' | '{' element '}' | '(' expr ')'
//! ```
//!
//! Element literals between braces use the field's own notation (`g^2+1`,
//! `[0,1,2]`, `1/2-3i+k`, …) and are resolved while parsing, so a bad
//! literal fails early with its byte offset. Negative exponents produce
//! inverses, hence lowering targets skew rational functions. The `Display`
//! output of [`SkewPolynomial`] parses back to the same polynomial.

use thiserror::Error;

use crate::poly::SkewPolynomial;
use crate::rational::{RationalError, SkewRationalFunction};
use crate::scalar::{FieldRef, Scalar, ScalarError};

/// Byte range of a node in the source string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug)]
pub enum Ast {
    /// The indeterminate `T`.
    Var(Span),
    /// A resolved element literal.
    Elem(Scalar, Span),
    Neg(Box<Ast>, Span),
    Add(Box<Ast>, Box<Ast>, Span),
    Sub(Box<Ast>, Box<Ast>, Span),
    Mul(Box<Ast>, Box<Ast>, Span),
    Pow(Box<Ast>, i64, Span),
}

impl Ast {
    pub fn span(&self) -> Span {
        match self {
            Ast::Var(s) | Ast::Elem(_, s) => *s,
            Ast::Neg(_, s)
            | Ast::Add(_, _, s)
            | Ast::Sub(_, _, s)
            | Ast::Mul(_, _, s)
            | Ast::Pow(_, _, s) => *s,
        }
    }
}

// Structural equality, ignoring spans.
impl PartialEq for Ast {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Ast::Var(_), Ast::Var(_)) => true,
            (Ast::Elem(a, _), Ast::Elem(b, _)) => a == b,
            (Ast::Neg(a, _), Ast::Neg(b, _)) => a == b,
            (Ast::Add(a, b, _), Ast::Add(c, d, _))
            | (Ast::Sub(a, b, _), Ast::Sub(c, d, _))
            | (Ast::Mul(a, b, _), Ast::Mul(c, d, _)) => a == c && b == d,
            (Ast::Pow(a, i, _), Ast::Pow(b, j, _)) => i == j && a == b,
            _ => false,
        }
    }
}

impl Eq for Ast {}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("unexpected character {c:?} at byte {at}")]
    UnexpectedChar { c: char, at: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {what} at byte {at}")]
    Expected { what: &'static str, at: usize },
    #[error("unknown element literal {literal:?} at byte {at}: {source}")]
    UnknownLiteral {
        literal: String,
        at: usize,
        source: ScalarError,
    },
    #[error("exponent does not fit at byte {at}")]
    ExponentOverflow { at: usize },
    #[error("trailing input at byte {at}")]
    Trailing { at: usize },
}

/// Largest exponent magnitude the lowerer will expand.
pub const MAX_EXPONENT: i64 = 64;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum LowerError {
    #[error("exponent {0} exceeds the bound {MAX_EXPONENT}")]
    ExponentTooLarge(i64),
    #[error(transparent)]
    Rational(#[from] RationalError),
}

struct Cursor<'a> {
    field: &'a FieldRef,
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(ParseError::Expected { what, at: self.pos })
        }
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut node = if self.eat('-') {
            let t = self.term()?;
            Ast::Neg(
                Box::new(t),
                Span {
                    start,
                    end: self.pos,
                },
            )
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let rhs = self.term()?;
                    let span = Span {
                        start,
                        end: self.pos,
                    };
                    node = Ast::Add(Box::new(node), Box::new(rhs), span);
                }
                Some('-') => {
                    self.bump();
                    let rhs = self.term()?;
                    let span = Span {
                        start,
                        end: self.pos,
                    };
                    node = Ast::Sub(Box::new(node), Box::new(rhs), span);
                }
                _ => return Ok(node),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut node = self.factor()?;
        while self.peek() == Some('*') {
            self.bump();
            let rhs = self.factor()?;
            let span = Span {
                start,
                end: self.pos,
            };
            node = Ast::Mul(Box::new(node), Box::new(rhs), span);
        }
        Ok(node)
    }

    fn factor(&mut self) -> Result<Ast, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        let negative = self.eat('-');
        self.skip_ws();
        let digits_at = self.pos;
        let digits: String = self.src[self.pos..]
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .collect();
        if digits.is_empty() {
            return Err(ParseError::Expected {
                what: "an exponent",
                at: digits_at,
            });
        }
        self.pos += digits.len();
        let mag: i64 = digits
            .parse()
            .map_err(|_| ParseError::ExponentOverflow { at: digits_at })?;
        let exp = if negative { -mag } else { mag };
        Ok(Ast::Pow(
            Box::new(base),
            exp,
            Span {
                start,
                end: self.pos,
            },
        ))
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => Err(ParseError::UnexpectedEnd),
            Some('T') => {
                self.bump();
                Ok(Ast::Var(Span {
                    start,
                    end: self.pos,
                }))
            }
            Some('{') => {
                self.bump();
                let lit_start = self.pos;
                let Some(close) = self.src[self.pos..].find('}') else {
                    return Err(ParseError::Expected {
                        what: "a closing '}'",
                        at: self.pos,
                    });
                };
                let literal = &self.src[lit_start..lit_start + close];
                self.pos = lit_start + close + 1;
                let value = Scalar::parse(self.field, literal).map_err(|source| {
                    ParseError::UnknownLiteral {
                        literal: literal.to_string(),
                        at: lit_start,
                        source,
                    }
                })?;
                Ok(Ast::Elem(
                    value,
                    Span {
                        start,
                        end: self.pos,
                    },
                ))
            }
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                self.expect(')', "a closing ')'")?;
                Ok(inner)
            }
            Some(c) => Err(ParseError::UnexpectedChar { c, at: self.pos }),
        }
    }
}

/// Parse an expression over the given field, resolving element literals.
pub fn parse_expr(field: &FieldRef, input: &str) -> Result<Ast, ParseError> {
    let mut cur = Cursor {
        field,
        src: input,
        pos: 0,
    };
    let ast = cur.expr()?;
    cur.skip_ws();
    if cur.pos != input.len() {
        return Err(ParseError::Trailing { at: cur.pos });
    }
    Ok(ast)
}

/// Expand an AST into a skew rational function over `field`.
pub fn lower(field: &FieldRef, ast: &Ast) -> Result<SkewRationalFunction, LowerError> {
    match ast {
        Ast::Var(_) => Ok(SkewRationalFunction::from_polynomial(&SkewPolynomial::var(
            field,
        ))),
        Ast::Elem(c, _) => Ok(SkewRationalFunction::from_polynomial(
            &SkewPolynomial::constant(c.clone()),
        )),
        Ast::Neg(a, _) => Ok(-&lower(field, a)?),
        Ast::Add(a, b, _) => Ok(lower(field, a)?.checked_add(&lower(field, b)?)?),
        Ast::Sub(a, b, _) => Ok(lower(field, a)?.checked_sub(&lower(field, b)?)?),
        Ast::Mul(a, b, _) => Ok(lower(field, a)?.checked_mul(&lower(field, b)?)?),
        Ast::Pow(a, e, _) => {
            if e.unsigned_abs() > MAX_EXPONENT as u64 {
                return Err(LowerError::ExponentTooLarge(*e));
            }
            let base = lower(field, a)?;
            let mut acc = SkewRationalFunction::one(field);
            for _ in 0..e.unsigned_abs() {
                acc = acc.checked_mul(&base)?;
            }
            if *e < 0 {
                acc = acc.inv()?;
            }
            Ok(acc)
        }
    }
}
