//! Parser for polynomial expressions over ℚ.
//!
//! Grammar: `+ - * ^` with `^` binding tightest, parentheses, unary minus,
//! signed integer and `a/b` rational literals, identifiers
//! `[A-Za-z][A-Za-z0-9_]*` that must name ring variables.  Whitespace is
//! insignificant.  Errors carry 1-based line/column positions.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::poly::{Polynomial, Ring};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn next_token(&mut self) -> Result<Spanned> {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.bump();
        }
        let (line, col) = (self.line, self.col);
        let mk = |tok| Ok(Spanned { tok, line, col });
        let c = match self.peek() {
            None => return mk(Tok::End),
            Some(c) => c,
        };
        match c {
            b'+' => {
                self.bump();
                mk(Tok::Plus)
            }
            b'-' => {
                self.bump();
                mk(Tok::Minus)
            }
            b'*' => {
                self.bump();
                mk(Tok::Star)
            }
            b'^' => {
                self.bump();
                mk(Tok::Caret)
            }
            b'/' => {
                self.bump();
                mk(Tok::Slash)
            }
            b'(' => {
                self.bump();
                mk(Tok::LParen)
            }
            b')' => {
                self.bump();
                mk(Tok::RParen)
            }
            b'0'..=b'9' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.bump();
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                mk(Tok::Num(text.parse::<BigInt>().unwrap()))
            }
            c if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.bump();
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                mk(Tok::Ident(text.to_string()))
            }
            c => Err(Error::Parse {
                line,
                col,
                msg: format!("unexpected character '{}'", c as char),
            }),
        }
    }
}

pub struct ExprParser {
    toks: Vec<Spanned>,
    pos: usize,
    ring: Arc<Ring<Rationals>>,
}

impl ExprParser {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        self.err_at(self.pos, msg)
    }

    fn err_at<T>(&self, idx: usize, msg: impl Into<String>) -> Result<T> {
        let s = &self.toks[idx.min(self.toks.len() - 1)];
        Err(Error::Parse { line: s.line, col: s.col, msg: msg.into() })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial<Rationals>> {
        let mut acc = match self.peek() {
            Tok::Minus => {
                self.advance();
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.advance();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.advance();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<Rationals>> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.advance();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<Rationals>> {
        if *self.peek() == Tok::Minus {
            self.advance();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.advance();
            match self.advance() {
                Tok::Num(n) => {
                    let e: u32 = match n.try_into() {
                        Ok(e) => e,
                        Err(_) => return self.err("exponent must be a small nonnegative integer"),
                    };
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected integer exponent after '^'"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<Rationals>> {
        let at = self.pos;
        match self.advance() {
            Tok::Num(n) => {
                // Optional rational literal a/b.
                if *self.peek() == Tok::Slash {
                    self.advance();
                    match self.advance() {
                        Tok::Num(d) => {
                            if d == BigInt::from(0) {
                                return self.err("zero denominator in rational literal");
                            }
                            Ok(Polynomial::constant(&self.ring, BigRational::new(n, d)))
                        }
                        _ => self.err("expected integer denominator after '/'"),
                    }
                } else {
                    Ok(Polynomial::constant(&self.ring, BigRational::from_integer(n)))
                }
            }
            Tok::Ident(name) => match self.ring.var_index(&name) {
                Some(i) => Ok(Polynomial::var(&self.ring, i)),
                None => self.err_at(at, format!("unknown variable '{}'", name)),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                match self.advance() {
                    Tok::RParen => Ok(inner),
                    _ => self.err("expected ')'"),
                }
            }
            t => self.err(format!("unexpected token {:?}", t)),
        }
    }
}

/// Parse one polynomial expression in the given ring.
pub fn parse_poly(ring: &Arc<Ring<Rationals>>, src: &str) -> Result<Polynomial<Rationals>> {
    let mut lexer = Lexer::new(src);
    let mut toks = Vec::new();
    loop {
        let t = lexer.next_token()?;
        let end = t.tok == Tok::End;
        toks.push(t);
        if end {
            break;
        }
    }
    let mut p = ExprParser { toks, pos: 0, ring: ring.clone() };
    let poly = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("trailing input after expression");
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_frac};
    use crate::poly::qring;

    #[test]
    fn parses_fixture_expressions() {
        let r = qring(&["x"]);
        let p = parse_poly(&r, "x^3 + 3*x^2 - 9*x + 5").unwrap();
        assert_eq!(p.to_string(), "x^3 + 3*x^2 - 9*x + 5");
        let r3 = qring(&["x1", "x2", "x3"]);
        let q = parse_poly(&r3, "x1^2 - x2*x3").unwrap();
        assert_eq!(q.to_string(), "x1^2 - x2*x3");
        assert_eq!(parse_poly(&r3, " - ( x1 - 1/2 ) ^ 2 ").unwrap().to_string(), "-x1^2 + x1 - 1/4");
        assert_eq!(parse_poly(&r3, "3/4").unwrap().constant_term(), rat_frac(3, 4));
        assert_eq!(parse_poly(&r3, "2^3").unwrap().constant_term(), rat(8));
    }

    #[test]
    fn error_positions() {
        let r = qring(&["x", "y"]);
        match parse_poly(&r, "x + z*y") {
            Err(Error::Parse { line: 1, col: 5, msg }) => assert!(msg.contains("unknown variable")),
            other => panic!("expected positioned parse error, got {:?}", other.map(|p| p.to_string())),
        }
        match parse_poly(&r, "x +\n y^") {
            Err(Error::Parse { line: 2, col: 4, .. }) => {}
            other => panic!("expected error at line 2, got {:?}", other.map(|p| p.to_string())),
        }
        assert!(parse_poly(&r, "x y").is_err(), "implicit products are not in the grammar");
        assert!(parse_poly(&r, "1/0").is_err());
    }

    #[test]
    fn print_parse_round_trip_samples() {
        let r = qring(&["x1", "x2", "x3"]);
        for src in [
            "x1^2 - x2*x3",
            "-x1 + 5",
            "2/3*x1*x2^2 - x3 + 7",
            "x1^4 + x1^2*x2^2 - 1/2",
            "0",
        ] {
            let p = parse_poly(&r, src).unwrap();
            let q = parse_poly(&r, &p.to_string()).unwrap();
            assert_eq!(p, q, "round trip through '{}'", src);
        }
    }
}
