//! Polynomial expression syntax: identifiers for variables, `*` for
//! multiplication (juxtaposition is not allowed), `^` for powers, integer
//! and `a/b` rational literals, parentheses, `#` comments. The same lexer
//! backs the script language in [`crate::script`].

use crate::field::Field;
use crate::ring::{Poly, Ring};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub fn lex(src: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let ch = chars.next().unwrap();
            if ch == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            ch
        };
        if ch.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if ch == '#' {
            while let Some(&c2) = chars.peek() {
                if c2 == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&c2) = chars.peek() {
                if c2.is_ascii_alphanumeric() || c2 == '_' {
                    s.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            out.push(Spanned {
                tok: Tok::Ident(s),
                line: l,
                col: c,
            });
            continue;
        }
        if ch.is_ascii_digit() {
            let mut v: i64 = 0;
            while let Some(&c2) = chars.peek() {
                if let Some(d) = c2.to_digit(10) {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(d as i64))
                        .ok_or(Error::Parse {
                            line: l,
                            col: c,
                            msg: "integer literal too large".into(),
                        })?;
                    bump(&mut chars);
                } else {
                    break;
                }
            }
            out.push(Spanned {
                tok: Tok::Int(v),
                line: l,
                col: c,
            });
            continue;
        }
        let tok = match ch {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '=' => Tok::Eq,
            other => {
                return Err(Error::Parse {
                    line: l,
                    col: c,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        };
        bump(&mut chars);
        out.push(Spanned { tok, line: l, col: c });
    }
    Ok(out)
}

/// Untyped polynomial expression; evaluated against a ring at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(i64),
    Frac(i64, i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

pub struct Cursor<'a> {
    toks: &'a [Spanned],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Spanned]) -> Self {
        Cursor { toks, pos: 0 }
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    pub fn loc(&self) -> (usize, usize) {
        match self.toks.get(self.pos) {
            Some(s) => (s.line, s.col),
            None => self
                .toks
                .last()
                .map(|s| (s.line, s.col + 1))
                .unwrap_or((1, 1)),
        }
    }

    pub fn next(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|s| &s.tok);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.loc();
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    pub fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    pub fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }
}

pub fn parse_expr(cur: &mut Cursor) -> Result<Expr> {
    let mut e = parse_term(cur)?;
    loop {
        if cur.eat(&Tok::Plus) {
            let rhs = parse_term(cur)?;
            e = Expr::Add(Box::new(e), Box::new(rhs));
        } else if cur.eat(&Tok::Minus) {
            let rhs = parse_term(cur)?;
            e = Expr::Sub(Box::new(e), Box::new(rhs));
        } else {
            return Ok(e);
        }
    }
}

fn parse_term(cur: &mut Cursor) -> Result<Expr> {
    let mut e = parse_factor(cur)?;
    while cur.eat(&Tok::Star) {
        let rhs = parse_factor(cur)?;
        e = Expr::Mul(Box::new(e), Box::new(rhs));
    }
    Ok(e)
}

fn parse_factor(cur: &mut Cursor) -> Result<Expr> {
    if cur.eat(&Tok::Minus) {
        let inner = parse_factor(cur)?;
        return Ok(Expr::Neg(Box::new(inner)));
    }
    let mut base = match cur.next().cloned() {
        Some(Tok::Int(v)) => {
            // rational literal a/b binds tighter than `*`
            if cur.peek() == Some(&Tok::Slash) {
                cur.next();
                match cur.next().cloned() {
                    Some(Tok::Int(d)) if d != 0 => Expr::Frac(v, d),
                    _ => return Err(cur.err("expected nonzero integer denominator")),
                }
            } else {
                Expr::Int(v)
            }
        }
        Some(Tok::Ident(name)) => Expr::Var(name),
        Some(Tok::LParen) => {
            let inner = parse_expr(cur)?;
            cur.expect(&Tok::RParen, ")")?;
            inner
        }
        _ => return Err(cur.err("expected a polynomial factor")),
    };
    while cur.eat(&Tok::Caret) {
        match cur.next().cloned() {
            Some(Tok::Int(e)) if e >= 0 => {
                let e = u32::try_from(e).map_err(|_| cur.err("exponent too large"))?;
                base = Expr::Pow(Box::new(base), e);
            }
            _ => return Err(cur.err("expected a non-negative integer exponent")),
        }
    }
    Ok(base)
}

pub fn eval_expr<F: Field>(ring: &Ring<F>, e: &Expr) -> Result<Poly<F>> {
    Ok(match e {
        Expr::Int(v) => Poly::int(ring, *v),
        Expr::Frac(n, d) => {
            let field = ring.field();
            let den = field.of_i64(*d);
            let inv = field
                .inv(&den)
                .ok_or_else(|| Error::invalid("denominator is zero in this field"))?;
            Poly::constant(ring, field.mul(&field.of_i64(*n), &inv))
        }
        Expr::Var(name) => Poly::var_named(ring, name)?,
        Expr::Neg(inner) => eval_expr(ring, inner)?.neg(),
        Expr::Add(a, b) => eval_expr(ring, a)?.add(&eval_expr(ring, b)?),
        Expr::Sub(a, b) => eval_expr(ring, a)?.sub(&eval_expr(ring, b)?),
        Expr::Mul(a, b) => eval_expr(ring, a)?.mul(&eval_expr(ring, b)?),
        Expr::Pow(a, e) => eval_expr(ring, a)?.pow(*e),
    })
}

/// Parses a single polynomial in the given ring.
pub fn parse_poly<F: Field>(ring: &Ring<F>, src: &str) -> Result<Poly<F>> {
    let toks = lex(src)?;
    let mut cur = Cursor::new(&toks);
    let e = parse_expr(&mut cur)?;
    if !cur.done() {
        return Err(cur.err("trailing input after polynomial"));
    }
    eval_expr(ring, &e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::monomial::MonomialOrder;
    use crate::ring::RingCtx;

    fn ring() -> Ring<Rationals> {
        RingCtx::new(
            Rationals,
            vec!["x".into(), "y".into(), "z".into()],
            None,
            MonomialOrder::GrevLex,
        )
        .unwrap()
    }

    #[test]
    fn parses_and_prints_canonically() {
        let r = ring();
        let p = parse_poly(&r, "x^2 - 2*x*y + y^2 - 1/2").unwrap();
        let printed = p.to_string();
        let again = parse_poly(&r, &printed).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn rejects_dangling_expression() {
        let r = ring();
        assert!(matches!(
            parse_poly(&r, "x^2 -"),
            Err(Error::Parse { .. })
        ));
        assert!(parse_poly(&r, "x y").is_err(), "juxtaposition is not multiplication");
        assert!(parse_poly(&r, "w + 1").is_err(), "unknown variable");
    }

    #[test]
    fn precedence() {
        let r = ring();
        let p = parse_poly(&r, "-x^2").unwrap();
        assert_eq!(p, Poly::var(&r, 0).pow(2).neg());
        let q = parse_poly(&r, "(x + y)*z").unwrap();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let z = Poly::var(&r, 2);
        assert_eq!(q, x.add(&y).mul(&z));
    }
}
