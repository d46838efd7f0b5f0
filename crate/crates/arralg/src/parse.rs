//! Text syntax for polynomials.
//!
//! Grammar: signed sum of terms; a term is an optional coefficient (integer
//! or `a/b`) juxtaposed with variable powers, `*` optional, `^` for powers,
//! parenthesized subexpressions allowed. Errors carry line and column.
//!
//! Printing (see [`crate::poly::Polynomial`]'s `Display`) emits terms in
//! descending degrevlex order with explicit `*`, and parsing that output
//! returns the same polynomial, so the two form an identity pair.

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring};
use num::bigint::BigInt;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Int(BigInt),
    Ident(String),
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn line_col(&self, at: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &b in &self.src[..at.min(self.src.len())] {
            if b == b'\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error(&self, at: usize, msg: impl Into<String>) -> Error {
        let (line, col) = self.line_col(at);
        Error::Parse { line, col, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next_tok(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let at = self.pos;
        if self.pos >= self.src.len() {
            return Ok((Tok::End, at));
        }
        let b = self.src[self.pos];
        let simple = |t| Ok((t, at));
        match b {
            b'+' => {
                self.pos += 1;
                simple(Tok::Plus)
            }
            b'-' => {
                self.pos += 1;
                simple(Tok::Minus)
            }
            b'*' => {
                self.pos += 1;
                simple(Tok::Star)
            }
            b'^' => {
                self.pos += 1;
                simple(Tok::Caret)
            }
            b'/' => {
                self.pos += 1;
                simple(Tok::Slash)
            }
            b'(' => {
                self.pos += 1;
                simple(Tok::LParen)
            }
            b')' => {
                self.pos += 1;
                simple(Tok::RParen)
            }
            b'0'..=b'9' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let v: BigInt = text
                    .parse()
                    .map_err(|_| self.error(start, format!("bad integer '{text}'")))?;
                Ok((Tok::Int(v), at))
            }
            b if b.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok((Tok::Ident(text.to_string()), at))
            }
            other => Err(self.error(at, format!("unexpected character '{}'", other as char))),
        }
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    ring: Ring,
    cur: Tok,
    cur_at: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, ring: &Ring) -> Result<Parser<'a>> {
        let mut lex = Lexer::new(src);
        let (cur, cur_at) = lex.next_tok()?;
        Ok(Parser { lex, ring: ring.clone(), cur, cur_at })
    }

    fn advance(&mut self) -> Result<()> {
        let (t, at) = self.lex.next_tok()?;
        self.cur = t;
        self.cur_at = at;
        Ok(())
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        self.lex.error(self.cur_at, msg)
    }

    /// expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(&self.ring);
        let mut negate = false;
        match self.cur {
            Tok::Plus => self.advance()?,
            Tok::Minus => {
                negate = true;
                self.advance()?;
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if negate { acc.try_sub(&t)? } else { acc.try_add(&t)? };
            match self.cur {
                Tok::Plus => {
                    negate = false;
                    self.advance()?;
                }
                Tok::Minus => {
                    negate = true;
                    self.advance()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    /// term := factor (['*'] factor)*
    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match &self.cur {
                Tok::Star => {
                    self.advance()?;
                    let f = self.factor()?;
                    acc = acc.try_mul(&f)?;
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                    let f = self.factor()?;
                    acc = acc.try_mul(&f)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    /// factor := atom ['^' uint]
    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.cur == Tok::Caret {
            self.advance()?;
            match std::mem::replace(&mut self.cur, Tok::End) {
                Tok::Int(e) => {
                    self.advance()?;
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| self.error("exponent out of range"))?;
                    Ok(base.pow(e))
                }
                other => {
                    self.cur = other;
                    Err(self.error("expected an integer exponent after '^'"))
                }
            }
        } else {
            Ok(base)
        }
    }

    /// atom := integer ['/' integer] | variable | '(' expr ')'
    fn atom(&mut self) -> Result<Polynomial> {
        match std::mem::replace(&mut self.cur, Tok::End) {
            Tok::Int(n) => {
                self.advance()?;
                if self.cur == Tok::Slash {
                    self.advance()?;
                    match std::mem::replace(&mut self.cur, Tok::End) {
                        Tok::Int(d) => {
                            self.advance()?;
                            let c = self
                                .ring
                                .field()
                                .from_ratio(&n, &d)
                                .map_err(|_| self.error("zero denominator in coefficient"))?;
                            Ok(Polynomial::constant(&self.ring, c))
                        }
                        other => {
                            self.cur = other;
                            Err(self.error("expected an integer denominator after '/'"))
                        }
                    }
                } else {
                    Ok(Polynomial::constant(&self.ring, self.ring.field().from_bigint(&n)))
                }
            }
            Tok::Ident(name) => {
                let at = self.cur_at;
                self.advance()?;
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::variable(&self.ring, i)),
                    None => Err(self.lex.error(at, format!("unknown variable '{name}'"))),
                }
            }
            Tok::LParen => {
                self.advance()?;
                let inner = self.expr()?;
                if self.cur != Tok::RParen {
                    return Err(self.error("expected ')'"));
                }
                self.advance()?;
                Ok(inner)
            }
            other => {
                let msg = format!("expected a term, found {other:?}");
                self.cur = other;
                Err(self.error(msg))
            }
        }
    }
}

/// Parses a polynomial in the given ring's variables.
pub fn parse_polynomial(ring: &Ring, src: &str) -> Result<Polynomial> {
    if src.trim().is_empty() {
        return Err(Error::Parse { line: 1, col: 1, msg: "empty polynomial".into() });
    }
    let mut p = Parser::new(src, ring)?;
    let poly = p.expr()?;
    if p.cur != Tok::End {
        return Err(p.error("trailing input after polynomial"));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::PolynomialRing;

    fn ring3() -> Ring {
        PolynomialRing::xyzw(FieldSpec::Rationals, 3)
    }

    #[test]
    fn parses_standard_forms() {
        let r = ring3();
        let p = parse_polynomial(&r, "x^2 + y^2 + z^2").unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.degree(), Some(2));
        let q = parse_polynomial(&r, "2*x*y - 3/2*z^2 + 1").unwrap();
        assert_eq!(q.to_string(), "2*x*y - 3/2*z^2 + 1");
    }

    #[test]
    fn star_is_optional_and_parens_work() {
        let r = ring3();
        let a = parse_polynomial(&r, "2x y(x + y)^2").unwrap();
        let b = parse_polynomial(&r, "2*x*y*(x+y)*(x+y)").unwrap();
        assert_eq!(a, b);
        let c = parse_polynomial(&r, "(x+y)(x-y)").unwrap();
        assert_eq!(c.to_string(), "x^2 - y^2");
    }

    #[test]
    fn leading_signs_and_cancellation() {
        let r = ring3();
        let p = parse_polynomial(&r, "-x + x").unwrap();
        assert!(p.is_zero());
        let q = parse_polynomial(&r, "- 2x^2 + y").unwrap();
        assert_eq!(q.to_string(), "-2*x^2 + y");
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring3();
        match parse_polynomial(&r, "x + w") {
            Err(Error::Parse { line, col, msg }) => {
                assert_eq!((line, col), (1, 5));
                assert!(msg.contains("unknown variable"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_polynomial(&r, "x ^ y") {
            Err(Error::Parse { msg, .. }) => assert!(msg.contains("exponent")),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_polynomial(&r, "x +\n 1/0") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_polynomial(&r, "").is_err());
        assert!(parse_polynomial(&r, "x )").is_err());
    }

    #[test]
    fn print_then_parse_round_trips() {
        let r = ring3();
        for src in ["x^3 - 2*x*y*z + 7/3*z^3", "1", "-x", "x*y + y*z + x*z"] {
            let p = parse_polynomial(&r, src).unwrap();
            let q = parse_polynomial(&r, &p.to_string()).unwrap();
            assert_eq!(p, q);
        }
    }
}
