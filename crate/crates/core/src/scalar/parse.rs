//! Parser for matrix-entry expressions.
//!
//! Grammar: integers, `i`, `q`, declared parameter names, `+ - * / ^`
//! (integer exponents, optionally negative) and parentheses. Whitespace is
//! ignored.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::gauss::GaussRational;
use super::ratfun::Scalar;
use super::var::Var;
use crate::error::{Error, Result};

/// Parses `src` allowing `q`, `i` and the names in `params` as symbols.
pub fn parse_scalar(src: &str, params: &[String]) -> Result<Scalar> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        params,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

/// Renders a parse error with a caret under the offending column.
pub fn annotate(src: &str, err: &Error) -> String {
    match err {
        Error::Parse { pos, msg } => format!("{src}\n{}^ {msg}", " ".repeat(*pos)),
        other => other.to_string(),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    params: &'a [String],
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
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

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' {
                acc.add(&rhs)
            } else {
                acc.sub(&rhs)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                acc.mul(&rhs)
            } else {
                acc.div(&rhs).map_err(|_| Error::Parse {
                    pos: at,
                    msg: "division by zero".into(),
                })?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.pos;
        let e = self.exponent()?;
        base.pow(e).map_err(|_| Error::Parse {
            pos: at,
            msg: "zero raised to a negative power".into(),
        })
    }

    fn exponent(&mut self) -> Result<i32> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.signed_int()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => self.signed_int(),
        }
    }

    fn signed_int(&mut self) -> Result<i32> {
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer exponent"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let v: i32 = text.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "exponent out of range".into(),
        })?;
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let n: BigInt = text.parse().expect("digits");
                Ok(Scalar::from_gauss(GaussRational::from_rational(
                    BigRational::from_integer(n),
                )))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match name {
                    "i" => Ok(Scalar::i()),
                    "q" => Ok(Scalar::q()),
                    _ if self.params.iter().any(|p| p == name) => {
                        let v = Var::named(name).map_err(|e| Error::Parse {
                            pos: start,
                            msg: e.to_string(),
                        })?;
                        Ok(Scalar::var(v))
                    }
                    _ => Err(Error::Parse {
                        pos: start,
                        msg: format!("undeclared indeterminate '{name}'"),
                    }),
                }
            }
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
