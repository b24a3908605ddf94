//! Text grammar shared by scenario files, CLI arguments and reports.
//!
//! One expression grammar covers every textual value: sums of terms built
//! from rational literals, `rho`, coordinates (`x1`, `x2`, ... or names
//! declared by a chart), `*`, `/`, `^` and parentheses. Field elements are
//! the arity-0 case and polynomials are the constant-denominator case.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::numberfield::FieldElem;
use crate::symfunc::{Polynomial, RationalFn};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

fn err_at(at: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        at,
        msg: msg.into(),
    }
}

impl Lexer {
    fn new(src: &str) -> Result<Lexer> {
        let bytes = src.as_bytes();
        let mut tokens = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let b = bytes[i];
            match b {
                b' ' | b'\t' | b'\n' | b'\r' => i += 1,
                b'+' => {
                    tokens.push((i, Token::Plus));
                    i += 1;
                }
                b'-' => {
                    tokens.push((i, Token::Minus));
                    i += 1;
                }
                b'*' => {
                    tokens.push((i, Token::Star));
                    i += 1;
                }
                b'/' => {
                    tokens.push((i, Token::Slash));
                    i += 1;
                }
                b'^' => {
                    tokens.push((i, Token::Caret));
                    i += 1;
                }
                b'(' => {
                    tokens.push((i, Token::LParen));
                    i += 1;
                }
                b')' => {
                    tokens.push((i, Token::RParen));
                    i += 1;
                }
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let digits = &src[start..i];
                    let value = digits
                        .parse::<BigInt>()
                        .map_err(|e| err_at(start, format!("bad integer: {e}")))?;
                    tokens.push((start, Token::Int(value)));
                }
                b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                    let start = i;
                    while i < bytes.len()
                        && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                    {
                        i += 1;
                    }
                    tokens.push((start, Token::Ident(src[start..i].to_string())));
                }
                _ => return Err(err_at(i, format!("unexpected character {:?}", b as char))),
            }
        }
        Ok(Lexer {
            tokens,
            pos: 0,
            len: src.len(),
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(at, _)| *at)
            .unwrap_or(self.len)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, want: &Token) -> bool {
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
}

struct Parser<'a> {
    lex: Lexer,
    arity: usize,
    names: Option<&'a [String]>,
}

impl<'a> Parser<'a> {
    fn expr(&mut self) -> Result<RationalFn> {
        let mut acc = self.term()?;
        loop {
            if self.lex.eat(&Token::Plus) {
                acc = &acc + &self.term()?;
            } else if self.lex.eat(&Token::Minus) {
                acc = &acc - &self.term()?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFn> {
        let mut acc = self.unary()?;
        loop {
            if self.lex.eat(&Token::Star) {
                acc = &acc * &self.unary()?;
            } else if self.lex.eat(&Token::Slash) {
                let at = self.lex.here();
                let rhs = self.unary()?;
                acc = acc
                    .div(&rhs)
                    .map_err(|_| err_at(at, "division by zero"))?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalFn> {
        let mut negate = false;
        loop {
            if self.lex.eat(&Token::Minus) {
                negate = !negate;
            } else if self.lex.eat(&Token::Plus) {
                // tolerated
            } else {
                break;
            }
        }
        let v = self.power()?;
        Ok(if negate { -&v } else { v })
    }

    fn power(&mut self) -> Result<RationalFn> {
        let base = self.atom()?;
        if self.lex.eat(&Token::Caret) {
            let at = self.lex.here();
            match self.lex.next() {
                Some(Token::Int(n)) => {
                    let e = n
                        .to_u32()
                        .ok_or_else(|| err_at(at, "exponent out of range"))?;
                    let mut acc = RationalFn::one(self.arity);
                    for _ in 0..e {
                        acc = &acc * &base;
                    }
                    Ok(acc)
                }
                _ => Err(err_at(at, "expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RationalFn> {
        let at = self.lex.here();
        match self.lex.next() {
            Some(Token::Int(n)) => Ok(RationalFn::constant(
                self.arity,
                FieldElem::from_rational(BigRational::from_integer(n)),
            )),
            Some(Token::Ident(name)) => {
                if name == "rho" {
                    return Ok(RationalFn::constant(self.arity, FieldElem::rho()));
                }
                if let Some(idx) = self.resolve(&name) {
                    return RationalFn::var(self.arity, idx);
                }
                Err(err_at(at, format!("unknown symbol `{name}`")))
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                if !self.lex.eat(&Token::RParen) {
                    return Err(err_at(self.lex.here(), "expected `)`"));
                }
                Ok(inner)
            }
            Some(tok) => Err(err_at(at, format!("unexpected token {tok:?}"))),
            None => Err(err_at(at, "unexpected end of input")),
        }
    }

    fn resolve(&self, name: &str) -> Option<usize> {
        if let Some(names) = self.names {
            if let Some(i) = names.iter().position(|n| n == name) {
                return Some(i);
            }
        }
        // canonical names x1..xn
        let rest = name.strip_prefix('x')?;
        let k: usize = rest.parse().ok()?;
        if k >= 1 && k <= self.arity {
            Some(k - 1)
        } else {
            None
        }
    }
}

/// Parse a rational-function expression in `arity` coordinates.
pub fn parse_rational_fn(
    src: &str,
    arity: usize,
    names: Option<&[String]>,
) -> Result<RationalFn> {
    let lex = Lexer::new(src)?;
    let mut p = Parser { lex, arity, names };
    let v = p.expr()?;
    if let Some(tok) = p.lex.peek() {
        return Err(err_at(p.lex.here(), format!("trailing input {tok:?}")));
    }
    Ok(v)
}

/// Parse a polynomial: a rational-function expression whose denominator
/// reduces to a constant.
pub fn parse_polynomial(src: &str, arity: usize, names: Option<&[String]>) -> Result<Polynomial> {
    let rf = parse_rational_fn(src, arity, names)?;
    let den = rf
        .den()
        .as_constant()
        .ok_or_else(|| err_at(0, "expression is not polynomial (non-constant denominator)"))?;
    debug_assert!(!den.is_zero());
    if den.is_one() {
        Ok(rf.num().clone())
    } else {
        Ok(rf.num().scale(&den.inv().expect("nonzero constant")))
    }
}

/// Parse a field element: the arity-0 case of the grammar.
pub fn parse_field_elem(src: &str) -> Result<FieldElem> {
    let rf = parse_rational_fn(src, 0, None)?;
    rf.as_constant()
        .ok_or_else(|| err_at(0, "expected a constant"))
}

/// Parse a 2x2 matrix given as `a,b;c,d` with field-element entries.
pub fn parse_matrix2(src: &str) -> Result<[[FieldElem; 2]; 2]> {
    let rows: Vec<&str> = src.split(';').collect();
    if rows.len() != 2 {
        return Err(err_at(0, format!("expected 2 rows, got {}", rows.len())));
    }
    let mut out: Vec<[FieldElem; 2]> = Vec::new();
    for row in rows {
        let entries: Vec<&str> = row.split(',').collect();
        if entries.len() != 2 {
            return Err(err_at(
                0,
                format!("expected 2 entries per row, got {}", entries.len()),
            ));
        }
        out.push([parse_field_elem(entries[0])?, parse_field_elem(entries[1])?]);
    }
    let mut it = out.into_iter();
    Ok([it.next().unwrap(), it.next().unwrap()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::{rat, rat_frac};

    #[test]
    fn field_elem_forms() {
        assert_eq!(parse_field_elem("rho").unwrap(), FieldElem::rho());
        assert_eq!(parse_field_elem("-rho").unwrap(), FieldElem::alpha());
        assert_eq!(parse_field_elem("7").unwrap(), FieldElem::from_int(7));
        assert_eq!(
            parse_field_elem("3/4").unwrap(),
            FieldElem::from_rational(rat_frac(3, 4))
        );
        assert_eq!(
            parse_field_elem("1 - rho^2").unwrap(),
            FieldElem::new(rat(1), rat(0), rat(-1))
        );
        assert_eq!(
            parse_field_elem("1/2 + 3/2*rho + rho^2").unwrap(),
            FieldElem::new(rat_frac(1, 2), rat_frac(3, 2), rat(1))
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_field_elem("rho +").is_err());
        assert!(parse_field_elem("x1").is_err());
        assert!(parse_field_elem("1 $ 2").is_err());
        assert!(parse_field_elem("rho^-1").is_err());
    }

    #[test]
    fn polynomial_requires_constant_denominator() {
        assert!(parse_polynomial("1/x1", 1, None).is_err());
        let p = parse_polynomial("x1/2", 1, None).unwrap();
        assert_eq!(
            p,
            Polynomial::var(1, 0)
                .unwrap()
                .scale(&FieldElem::from_rational(rat_frac(1, 2)))
        );
    }

    #[test]
    fn declared_coordinate_names() {
        let names = vec!["u".to_string(), "v".to_string()];
        let p = parse_polynomial("u^2*v", 2, Some(&names)).unwrap();
        assert_eq!(p, parse_polynomial("x1^2*x2", 2, None).unwrap());
    }

    #[test]
    fn matrix2_grammar() {
        let m = parse_matrix2("rho,0;0,rho").unwrap();
        assert_eq!(m[0][0], FieldElem::rho());
        assert_eq!(m[0][1], FieldElem::zero());
        assert_eq!(m[1][1], FieldElem::rho());
        let m = parse_matrix2("0, 1-rho^2; 1, -rho").unwrap();
        assert_eq!(m[0][1], parse_field_elem("1-rho^2").unwrap());
        assert_eq!(m[1][0], FieldElem::one());
    }
}
