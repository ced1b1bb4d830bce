//! Parser for element expressions such as `1/2*(1 (x) 1 + g (x) g) - x1 (x) g*x1`.
//!
//! ```text
//! expr   := tterm (('+'|'-') tterm)*
//! tterm  := prod ('(x)' prod)*
//! prod   := unary (('*'|'/') unary)*
//! unary  := ['+'|'-'] unary | power
//! power  := atom ['^' int]
//! atom   := scalar | gen | '(' expr ')'
//! scalar := int | 'z' int
//! ```
//!
//! `(x)` is always the tensor sign. `z<M>` is ζ_M unless the algebra has a
//! generator of that name. Scalars tensor and add as multiples of `1`.

use super::{HopfData, Tensor};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::scalars::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Tensor,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if s[i..].starts_with("(x)") {
            out.push(Tok::Tensor);
            i += 3;
            continue;
        }
        if s[i..].starts_with('⊗') {
            out.push(Tok::Tensor);
            i += '⊗'.len_utf8();
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
            _ if c.is_ascii_digit() => {
                let st = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Num(s[st..i].to_string()));
                continue;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let st = i;
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                out.push(Tok::Ident(s[st..i].to_string()));
                continue;
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?} at offset {i}"))),
        };
        out.push(tok);
        i += c.len_utf8();
    }
    Ok(out)
}

/// A parsed value: a scalar (`arity == 0`) or an element of `H^{⊗arity}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub arity: usize,
    /// For `arity == 0` a one-dimensional vector holding the scalar.
    pub coeffs: SparseVec,
}

struct Parser<'a> {
    h: &'a HopfData,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parsed {
    fn scalar(c: Scalar) -> Self {
        let f = c.field();
        Parsed {
            arity: 0,
            coeffs: SparseVec::from_dense(f, &[c]),
        }
    }

    fn scalar_value(&self) -> Scalar {
        self.coeffs.coeff(0)
    }
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(ref u) if *u == t => Ok(()),
            other => Err(Error::Parse(format!("expected {t:?}, found {other:?}"))),
        }
    }

    /// `c · 1^{⊗k}`.
    fn promote(&self, c: &Scalar, k: usize) -> SparseVec {
        let d = self.h.dim();
        let u = self.h.unit_index();
        let idx = (0..k).fold(0, |acc, _| acc * d + u);
        SparseVec::unit(self.h.field(), d.pow(k as u32), idx).scale(c)
    }

    fn add(&self, a: Parsed, b: Parsed, sign: bool) -> Result<Parsed> {
        let (a, b) = match (a.arity, b.arity) {
            (x, y) if x == y => (a, b),
            (0, k) => (
                Parsed {
                    arity: k,
                    coeffs: self.promote(&a.scalar_value(), k),
                },
                b,
            ),
            (k, 0) => {
                let pb = self.promote(&b.scalar_value(), k);
                (a, Parsed { arity: k, coeffs: pb })
            }
            (x, y) => return Err(Error::Parse(format!("cannot add tensors of arity {x} and {y}"))),
        };
        let coeffs = if sign {
            a.coeffs.add(&b.coeffs)
        } else {
            a.coeffs.sub(&b.coeffs)
        };
        Ok(Parsed { arity: a.arity, coeffs })
    }

    fn mul(&self, a: Parsed, b: Parsed) -> Result<Parsed> {
        match (a.arity, b.arity) {
            (0, _) => Ok(Parsed {
                arity: b.arity,
                coeffs: b.coeffs.scale(&a.scalar_value()),
            }),
            (_, 0) => Ok(Parsed {
                arity: a.arity,
                coeffs: a.coeffs.scale(&b.scalar_value()),
            }),
            (x, y) if x == y => Ok(Parsed {
                arity: x,
                coeffs: self.h.mul_raw(x, &a.coeffs, &b.coeffs),
            }),
            (x, y) => Err(Error::Parse(format!("cannot multiply tensors of arity {x} and {y}"))),
        }
    }

    fn tensor(&self, a: Parsed, b: Parsed) -> Parsed {
        let lift = |p: Parsed| {
            if p.arity == 0 {
                Parsed {
                    arity: 1,
                    coeffs: self.promote(&p.scalar_value(), 1),
                }
            } else {
                p
            }
        };
        let (a, b) = (lift(a), lift(b));
        Parsed {
            arity: a.arity + b.arity,
            coeffs: self.h.kron(&a.coeffs, &b.coeffs),
        }
    }

    fn expr(&mut self) -> Result<Parsed> {
        let mut acc = self.tterm()?;
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => true,
                Some(Tok::Minus) => false,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.tterm()?;
            acc = self.add(acc, rhs, sign)?;
        }
        Ok(acc)
    }

    fn tterm(&mut self) -> Result<Parsed> {
        let mut acc = self.prod()?;
        while self.peek() == Some(&Tok::Tensor) {
            self.pos += 1;
            let rhs = self.prod()?;
            acc = self.tensor(acc, rhs);
        }
        Ok(acc)
    }

    fn prod(&mut self) -> Result<Parsed> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.mul(acc, rhs)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    if rhs.arity != 0 {
                        return Err(Error::Parse("can only divide by a scalar".into()));
                    }
                    let inv = Parsed::scalar(rhs.scalar_value().inv()?);
                    acc = self.mul(acc, inv)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Parsed> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                let mut v = self.unary()?;
                v.coeffs = v.coeffs.neg();
                Ok(v)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Parsed> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let e: u32 = match self.next() {
            Some(Tok::Num(n)) => n.parse().map_err(|_| Error::Parse(format!("exponent {n} too large")))?,
            other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
        };
        if base.arity == 0 {
            let v = base.scalar_value().powi(if neg { -(e as i64) } else { e as i64 })?;
            return Ok(Parsed::scalar(v));
        }
        if neg {
            return Err(Error::Parse("negative powers are only allowed on scalars".into()));
        }
        let mut acc = Parsed {
            arity: base.arity,
            coeffs: self.promote(&self.h.field().one(), base.arity),
        };
        for _ in 0..e {
            acc = self.mul(acc, base.clone())?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Parsed> {
        let f = self.h.field();
        match self.next() {
            Some(Tok::Num(n)) => {
                let r: Rational = n.parse()?;
                Ok(Parsed::scalar(f.rational(&r)?))
            }
            Some(Tok::Ident(name)) => {
                if let Ok(g) = self.h.gen(&name) {
                    return Ok(Parsed { arity: 1, coeffs: g.v });
                }
                if let Some(m) = name.strip_prefix('z').and_then(|m| m.parse::<u64>().ok()) {
                    return Ok(Parsed::scalar(f.root(m)?));
                }
                Err(Error::Parse(format!(
                    "unknown generator {name:?}; generators are {}",
                    self.h.generator_names().join(", ")
                )))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

impl HopfData {
    /// Parses an expression of any arity.
    pub fn parse_any(&self, text: &str) -> Result<Parsed> {
        let toks = lex(text)?;
        if toks.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let mut p = Parser { h: self, toks, pos: 0 };
        let v = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input at token {:?}", p.toks[p.pos])));
        }
        Ok(v)
    }

    /// Parses an element of `H^{⊗K}`; a bare scalar is read as a multiple of `1`.
    pub fn parse<const K: usize>(&self, text: &str) -> Result<Tensor<K>> {
        let v = self.parse_any(text)?;
        let coeffs = match v.arity {
            0 => {
                let c = v.coeffs.coeff(0);
                let d = self.dim();
                let u = self.unit_index();
                let idx = (0..K).fold(0, |acc, _| acc * d + u);
                SparseVec::unit(self.field(), d.pow(K as u32), idx).scale(&c)
            }
            k if k == K => v.coeffs,
            k => return Err(Error::Parse(format!("expected a tensor of arity {K}, got arity {k}"))),
        };
        Ok(self.wrap(coeffs))
    }
}
