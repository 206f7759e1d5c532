//! Recursive-descent parser for the expression language.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := unary (('*'|'/') unary)*
//! unary    := ('-'|'+') unary | factor
//! factor   := base ('^' exponent)?
//! base     := number | ident | func '(' expr ')' | '(' expr ')'
//! exponent := ['-'|'+'] number | '(' expr ')'      -- must fold to a rational
//! ```

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{Expr, Func, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown function `{name}` at byte {offset}")]
    UnknownFunction { name: String, offset: usize },
    #[error("exponent at byte {offset} is not a rational constant")]
    NonRationalExponent { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownFunction { offset, .. }
            | ParseError::NonRationalExponent { offset } => *offset,
        }
    }
}

pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    parse_with_constants(text, &HashMap::new())
}

/// Parse with identifiers in `bindings` replaced by the given expressions.
/// Bound identifiers may appear in exponents when they fold to rationals.
pub fn parse_with_constants(
    text: &str,
    bindings: &HashMap<String, Expr>,
) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        bindings,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    bindings: &'a HashMap<String, Expr>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError::Syntax {
            offset: self.pos,
            message: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat(b'+') {
                terms.push(self.term()?);
            } else if self.eat(b'-') {
                terms.push(-self.term()?);
            } else {
                break;
            }
        }
        Ok(Expr::sum(terms))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.unary()?];
        loop {
            if self.eat(b'*') {
                factors.push(self.unary()?);
            } else if self.eat(b'/') {
                factors.push(self.unary()?.recip());
            } else {
                break;
            }
        }
        Ok(Expr::product(factors))
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if self.eat(b'^') {
            let q = self.exponent()?;
            return Ok(Expr::pow(&base, &q));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<Rat, ParseError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let e = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                e
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => Expr::num(self.number()?),
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                match self.bindings.get(&name) {
                    Some(v) => v.clone(),
                    None => return Err(ParseError::NonRationalExponent { offset: start }),
                }
            }
            _ => return Err(self.err("expected exponent")),
        };
        match e.as_num() {
            Some(q) => Ok(if neg { -q.clone() } else { q.clone() }),
            None => Err(ParseError::NonRationalExponent { offset: start }),
        }
    }

    fn number(&mut self) -> Result<Rat, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut int = BigInt::zero();
        let mut den = BigInt::one();
        let mut digits = 0;
        while let Some(&c) = self.src.get(self.pos) {
            if c.is_ascii_digit() {
                int = int * 10 + (c - b'0') as u32;
                digits += 1;
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            while let Some(&c) = self.src.get(self.pos) {
                if c.is_ascii_digit() {
                    int = int * 10 + (c - b'0') as u32;
                    den *= 10;
                    digits += 1;
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        if digits == 0 {
            self.pos = start;
            return Err(self.err("malformed number"));
        }
        Ok(Rat::new(int, den))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while let Some(&c) = self.src.get(self.pos) {
            if c.is_ascii_alphanumeric() || c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => Ok(Expr::num(self.number()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident();
                if self.peek() == Some(b'(') {
                    self.pos += 1;
                    let arg = self.expr()?;
                    self.expect(b')')?;
                    if name == "sqrt" {
                        return Ok(arg.sqrt());
                    }
                    return match Func::from_name(&name) {
                        Some(f) => Ok(Expr::apply(f, &arg)),
                        None => Err(ParseError::UnknownFunction {
                            name,
                            offset: start,
                        }),
                    };
                }
                if let Some(v) = self.bindings.get(&name) {
                    return Ok(v.clone());
                }
                Ok(Expr::var(match name.as_str() {
                    "z_x" => "p",
                    "z_xx" => "r",
                    other => other,
                }))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{rat, Node};

    #[test]
    fn basic_trees() {
        let e = parse_expression("p^2/4").unwrap();
        match e.node() {
            Node::Mul(fs) => {
                assert_eq!(fs[0].as_num(), Some(&rat(1, 4)));
                assert_eq!(fs[1], Expr::var("p").powi(2));
            }
            _ => panic!("{e:?}"),
        }
        assert_eq!(parse_expression("z_x*z_xx").unwrap(), parse_expression("p*r").unwrap());
        assert_eq!(parse_expression("2.5").unwrap(), Expr::frac(5, 2));
        assert_eq!(parse_expression("-x^2").unwrap(), -Expr::var("x").powi(2));
        assert_eq!(parse_expression("x^(-1/2)").unwrap(), Expr::var("x").powq(-1, 2));
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(
            parse_expression("foo(x)"),
            Err(ParseError::UnknownFunction {
                name: "foo".into(),
                offset: 0
            })
        );
        assert_eq!(parse_expression("x + * y").unwrap_err().offset(), 4);
        assert!(matches!(
            parse_expression("x^y"),
            Err(ParseError::NonRationalExponent { .. })
        ));
        assert!(parse_expression("(x").is_err());
        assert!(parse_expression("x)").is_err());
    }

    #[test]
    fn bound_exponents() {
        let mut b = HashMap::new();
        b.insert("b".to_string(), Expr::frac(3, 2));
        let e = parse_with_constants("p^(b-2)*b", &b).unwrap();
        assert_eq!(e, Expr::frac(3, 2) * Expr::var("p").powq(-1, 2));
        let f = parse_with_constants("p^b", &b).unwrap();
        assert_eq!(f, Expr::var("p").powq(3, 2));
    }
}
