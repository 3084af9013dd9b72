//! Recursive-descent reader for the polynomial text format.
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := ("-" | "+") unary | power
//! power := atom ("^" integer)?
//! atom  := integer | variable | "(" expr ")"
//! ```
//!
//! Division is only accepted by nonzero constants, which is how rational
//! coefficients like `3/4*x` are written. Juxtaposition (`2x`, `x y`) is
//! rejected.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{Polynomial, Ring};
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a Arc<Ring>,
    _f: std::marker::PhantomData<F>,
}

impl<'a, F: Field> Parser<'a, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.offset(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let at = self.offset();
                let d = self.unary()?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                if !d.is_constant() {
                    return Err(Error::Syntax { pos: at, msg: "only division by constants is supported".into() });
                }
                let inv = d.leading_coeff().unwrap().inv().ok_or(Error::DivisionByZero)?;
                acc = acc.scale(&inv);
            } else {
                match self.peek() {
                    Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::Sym('(')) => {
                        return self.err("implicit multiplication is not allowed; use `*`");
                    }
                    _ => return Ok(acc),
                }
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial<F>> {
        if self.eat('-') {
            Ok(-&self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Polynomial<F>> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().or_else(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.ring, F::from_bigint(&n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(Error::UnknownVariable(name)),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(_) => self.err("expected a number, variable or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` into a canonical polynomial of `ring`.
pub fn parse_poly<F: Field>(text: &str, ring: &Arc<Ring>) -> Result<Polynomial<F>> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), ring, _f: std::marker::PhantomData };
    if p.peek().is_none() {
        return p.err("empty polynomial");
    }
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};
    use crate::poly::Monomial;

    fn ring() -> Arc<Ring> {
        Ring::new(["x", "y"]).unwrap()
    }

    fn q(s: &str) -> Result<Polynomial<Rational>> {
        parse_poly(s, &ring())
    }

    #[test]
    fn parses_square_of_binomial() {
        let f = q("x^2 + 2*x + 1").unwrap();
        let m = |a, b| Monomial::from_exponents(vec![a, b]);
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.coeff(&m(2, 0)), Rational::from_i64(1));
        assert_eq!(f.coeff(&m(1, 0)), Rational::from_i64(2));
        assert_eq!(f.coeff(&m(0, 0)), Rational::from_i64(1));
    }

    #[test]
    fn zero_and_products() {
        assert!(q("0").unwrap().is_zero());
        assert_eq!(q("(x+y)*(x-y)").unwrap(), q("x^2 - y^2").unwrap());
        assert_eq!(q("-x^2").unwrap().to_string(), "-x^2");
        assert_eq!(q("2^3*x").unwrap(), q("8*x").unwrap());
    }

    #[test]
    fn rational_coefficients() {
        assert_eq!(q("3/4*x").unwrap().to_string(), "3/4*x");
        assert_eq!(q("x/2 + x/2").unwrap(), q("x").unwrap());
    }

    #[test]
    fn errors() {
        assert_eq!(q("z + 1"), Err(Error::UnknownVariable("z".into())));
        assert!(matches!(q("2x"), Err(Error::Syntax { .. })));
        assert!(matches!(q("x y"), Err(Error::Syntax { .. })));
        assert!(matches!(q("x +"), Err(Error::Syntax { .. })));
        assert!(matches!(q("(x"), Err(Error::Syntax { .. })));
        assert!(matches!(q("x^-1"), Err(Error::Syntax { .. })));
        assert!(matches!(q("x/y"), Err(Error::Syntax { .. })));
        assert!(matches!(q(""), Err(Error::Syntax { .. })));
        assert!(matches!(q("x $ y"), Err(Error::Syntax { .. })));
        assert_eq!(q("1/0*x"), Err(Error::DivisionByZero));
        assert_eq!(q("x/(1-1)"), Err(Error::DivisionByZero));
    }

    #[test]
    fn prime_field_parsing() {
        let f: Polynomial<Fp<7>> = parse_poly("8*x - 1", &ring()).unwrap();
        assert_eq!(f.to_string(), "x + 6");
        let g: Polynomial<Fp<7>> = parse_poly("x/3", &ring()).unwrap();
        assert_eq!(g.to_string(), "5*x");
    }
}
