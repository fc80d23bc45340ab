//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' nat)?
//! atom   := name | integer | integer '/' integer | '(' expr ')'
//! ```
//!
//! The parser is generic over an [`ExprAlgebra`], so the same grammar builds
//! commutative base polynomials and noncommutative extension elements.

use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec};
use crate::poly::{PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator `{name}` at position {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("divisor {divisor} is not invertible in {field} (position {pos})")]
    DivisorNotInvertible {
        divisor: BigInt,
        field: FieldSpec,
        pos: usize,
    },
}

/// Target of the parser.
pub trait ExprAlgebra {
    type Value: Clone;

    fn field(&self) -> FieldSpec;
    fn constant(&self, c: FieldElement) -> Self::Value;
    fn name(&self, name: &str, pos: usize) -> Result<Self::Value, ParseError>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;

    fn pow(&self, a: &Self::Value, e: u32) -> Self::Value {
        let mut acc = self.constant(self.field().one());
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                out.push((Tok::Int(s.parse().expect("digits")), start));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Name(bytes[start..i].iter().collect()), start));
                continue;
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, A: ExprAlgebra> {
    alg: &'a A,
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
    implicit_mul: bool,
}

impl<'a, A: ExprAlgebra> Parser<'a, A> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<A::Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = self.alg.add(&acc, &t);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = self.alg.add(&acc, &self.alg.neg(&t));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<A::Value, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = self.alg.mul(&acc, &f);
                }
                Some(Tok::Name(_) | Tok::Int(_) | Tok::LParen) if self.implicit_mul => {
                    let f = self.factor()?;
                    acc = self.alg.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<A::Value, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            let f = self.factor()?;
            return Ok(self.alg.neg(&f));
        }
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n.try_into().map_err(|_| ParseError::Syntax {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                    return Ok(self.alg.pow(&base, e));
                }
                _ => {
                    return Err(ParseError::Syntax {
                        pos,
                        msg: "expected a natural-number exponent".into(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<A::Value, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Name(name)) => self.alg.name(&name, pos),
            Some(Tok::Int(n)) => {
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let dpos = self.pos();
                    let Some(Tok::Int(d)) = self.bump() else {
                        return Err(ParseError::Syntax {
                            pos: dpos,
                            msg: "expected an integer denominator".into(),
                        });
                    };
                    let field = self.alg.field();
                    let c = field.from_ratio(&n, &d).map_err(|e| match e {
                        FieldError::DivisorNotInvertible(divisor, field) => {
                            ParseError::DivisorNotInvertible {
                                divisor,
                                field,
                                pos: dpos,
                            }
                        }
                        other => ParseError::Syntax {
                            pos: dpos,
                            msg: other.to_string(),
                        },
                    })?;
                    Ok(self.alg.constant(c))
                } else {
                    Ok(self.alg.constant(self.alg.field().from_bigint(&n)))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(ParseError::Syntax {
                        pos: self.toks.get(self.at - 1).map_or(self.end, |(_, p)| *p),
                        msg: "expected `)`".into(),
                    }),
                }
            }
            Some(_) => Err(ParseError::Syntax {
                pos,
                msg: "expected a generator, integer or `(`".into(),
            }),
            None => Err(ParseError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parses `text` into the target algebra. With `implicit_mul`, juxtaposed
/// factors (`y2 y1 x`) multiply.
pub fn parse_expr<A: ExprAlgebra>(
    alg: &A,
    text: &str,
    implicit_mul: bool,
) -> Result<A::Value, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        alg,
        toks,
        at: 0,
        end: text.chars().count(),
        implicit_mul,
    };
    let v = p.expr()?;
    if p.at < p.toks.len() {
        return p.error("unexpected trailing input");
    }
    Ok(v)
}

struct PolyAlgebra<'a>(&'a Arc<PolyRing>);

impl ExprAlgebra for PolyAlgebra<'_> {
    type Value = Polynomial;

    fn field(&self) -> FieldSpec {
        self.0.field()
    }
    fn constant(&self, c: FieldElement) -> Polynomial {
        Polynomial::constant(self.0, c)
    }
    fn name(&self, name: &str, pos: usize) -> Result<Polynomial, ParseError> {
        self.0
            .var_index(name)
            .map(|i| Polynomial::var(self.0, i))
            .ok_or_else(|| ParseError::UnknownGenerator {
                name: name.to_string(),
                pos,
            })
    }
    fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.add(b)
    }
    fn neg(&self, a: &Polynomial) -> Polynomial {
        a.neg()
    }
    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.mul(b)
    }
    fn pow(&self, a: &Polynomial, e: u32) -> Polynomial {
        a.pow(e)
    }
}

/// Parses a base-algebra polynomial.
pub fn parse_poly(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial, ParseError> {
    parse_expr(&PolyAlgebra(ring), text, false)
}

/// Parses a degree-0 expression as a field constant.
pub fn parse_scalar(text: &str, field: FieldSpec) -> Result<FieldElement, ParseError> {
    let ring = PolyRing::new(field, Vec::new());
    let p = parse_poly(text, &ring)?;
    Ok(p.as_constant().expect("no generators, so constant"))
}
