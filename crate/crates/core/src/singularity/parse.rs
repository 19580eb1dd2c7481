//! Recursive-descent parser for polynomial germs.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' uint)?
//! atom   := number | 'x' | 'y' | 'z' | '(' expr ')'
//! ```
//! Division is only by nonzero constants.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::poly::{Poly, VARIABLE_NAMES};
use crate::matrix::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unknown variable '{name}' at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("negative exponent at position {position}")]
    NegativeExponent { position: usize },
    #[error("germ has nonzero constant term {value}; it must vanish at the origin")]
    NonzeroConstant { value: String },
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { position: self.pos, message: message.into() }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let divisor = self.factor()?;
                    match divisor.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        _ => {
                            return Err(ParseError::Syntax {
                                position: at,
                                message: "division is only allowed by a nonzero constant".into(),
                            })
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            match self.peek() {
                Some(b'-') => return Err(ParseError::NegativeExponent { position: self.pos }),
                Some(c) if c.is_ascii_digit() => {}
                _ => return Err(self.syntax("expected exponent")),
            }
            let digits = self.digits();
            let e: u32 = digits.parse().map_err(|_| self.syntax("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().expect("ascii digits");
                Ok(Poly::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                let mut chars = name.chars();
                match (chars.next(), chars.next()) {
                    (Some(ch), None) => match VARIABLE_NAMES.iter().position(|&v| v == ch) {
                        Some(i) => Ok(Poly::variable(i)),
                        None => Err(ParseError::UnknownVariable { name, position: start }),
                    },
                    _ => Err(ParseError::UnknownVariable { name, position: start }),
                }
            }
            Some(_) => Err(self.syntax(format!("unexpected character '{}'", self.src[self.pos] as char))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

/// Parses an expression in `x, y, z` without checking the germ condition.
pub fn parse_polynomial(text: &str) -> Result<Poly, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let poly = p.expr()?;
    if p.peek().is_some() {
        return Err(p.syntax("trailing input"));
    }
    Ok(poly)
}

/// Parses a germ; the constant term must vanish.
pub fn parse_germ(text: &str) -> Result<Poly, ParseError> {
    let poly = parse_polynomial(text)?;
    let c = poly.constant_term();
    if !c.is_zero() {
        return Err(ParseError::NonzeroConstant { value: c.to_string() });
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{int, rat};

    #[test]
    fn simple_germs() {
        let p = parse_germ("x^3 + y^4").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coefficient(&[3, 0, 0]), int(1));
        assert_eq!(p.coefficient(&[0, 4, 0]), int(1));
        let q = parse_germ("x^2*y + y^4").unwrap();
        assert_eq!(q.coefficient(&[2, 1, 0]), int(1));
        assert_eq!(q.coefficient(&[0, 4, 0]), int(1));
        assert_eq!(parse_germ(" x ^ 3+y^4 ").unwrap(), p);
    }

    #[test]
    fn rationals_and_parentheses() {
        let p = parse_germ("(x + y)^2 - 2*x*y - 1/2*x^2 + x^3/3").unwrap();
        assert_eq!(p.coefficient(&[2, 0, 0]), rat(1, 2));
        assert_eq!(p.coefficient(&[1, 1, 0]), int(0));
        assert_eq!(p.coefficient(&[3, 0, 0]), rat(1, 3));
        assert_eq!(p.to_string(), "1/3*x^3 + 1/2*x^2 + y^2");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_germ("x + 1"), Err(ParseError::NonzeroConstant { .. })));
        assert_eq!(
            parse_germ("x^2 + w"),
            Err(ParseError::UnknownVariable { name: "w".into(), position: 6 })
        );
        assert!(matches!(parse_germ("x^-2"), Err(ParseError::NegativeExponent { .. })));
        assert!(matches!(parse_germ("x^2 +"), Err(ParseError::Syntax { position: 5, .. })));
        assert!(matches!(parse_germ("x^2 / y"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_germ("(x^2"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_germ("x y"), Err(ParseError::Syntax { .. })));
    }
}
