use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Exponent, Polynomial};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at offset {offset}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("number out of range")]
    OutOfRange,
}

/// Parses `text` over the variables `vars`.
///
/// Grammar: `poly := ['-'] term (('+'|'-') term)*`,
/// `term := rational ['*'] monomial | rational | monomial`,
/// `monomial := var ['^' ['-'] uint] ('*' var ['^' ['-'] uint])*`,
/// `rational := uint ['/' uint]`. A negative exponent is accepted for
/// Laurent inputs. Whitespace is insignificant.
pub fn parse_polynomial<C: Scalar, S: AsRef<str>>(
    text: &str,
    vars: &[S],
) -> Result<Polynomial<C>, ParseError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
    };
    p.poly()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: Vec<String>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn err<T>(&self, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError {
            kind,
            offset: self.pos,
        })
    }

    fn unexpected<T>(&mut self) -> Result<T, ParseError> {
        match self.peek() {
            Some(c) => self.err(ParseErrorKind::UnexpectedChar(c)),
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn poly<C: Scalar>(&mut self) -> Result<Polynomial<C>, ParseError> {
        let n = self.vars.len();
        let mut terms = Vec::new();
        let mut negative = false;
        if self.peek() == Some('-') {
            self.pos += 1;
            negative = true;
        }
        loop {
            let (e, mut c) = self.term::<C>()?;
            if negative {
                c = -c;
            }
            terms.push((e, c));
            match self.peek() {
                Some('+') => negative = false,
                Some('-') => negative = true,
                None => break,
                Some(_) => return self.unexpected(),
            }
            self.pos += 1;
        }
        Ok(Polynomial::from_terms(n, terms))
    }

    fn term<C: Scalar>(&mut self) -> Result<(Exponent, C), ParseError> {
        let n = self.vars.len();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let coeff = self.rational::<C>(start)?;
                if self.peek() == Some('*') {
                    self.pos += 1;
                    let e = self.monomial()?;
                    Ok((e, coeff))
                } else if self.peek().is_some_and(is_ident_start) {
                    let e = self.monomial()?;
                    Ok((e, coeff))
                } else {
                    Ok((Exponent::zero(n), coeff))
                }
            }
            Some(c) if is_ident_start(c) => Ok((self.monomial()?, C::one())),
            _ => self.unexpected(),
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.unexpected();
        }
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn rational<C: Scalar>(&mut self, start: usize) -> Result<C, ParseError> {
        let num = self.uint()?;
        let mut den = BigInt::one();
        if self.peek() == Some('/') {
            self.pos += 1;
            let den_pos = self.pos;
            den = self.uint()?;
            if den.is_zero() {
                return Err(ParseError {
                    kind: ParseErrorKind::ZeroDenominator,
                    offset: den_pos,
                });
            }
        }
        C::from_ratio(&num, &den).ok_or(ParseError {
            kind: ParseErrorKind::OutOfRange,
            offset: start,
        })
    }

    fn monomial(&mut self) -> Result<Exponent, ParseError> {
        let mut exp = vec![0i64; self.vars.len()];
        loop {
            self.skip_ws();
            let start = self.pos;
            while self.peek_raw().is_some_and(is_ident_char) {
                self.pos += self.peek_raw().map_or(1, char::len_utf8);
            }
            let name = &self.src[start..self.pos];
            if name.is_empty() {
                return self.unexpected();
            }
            let Some(idx) = self.vars.iter().position(|v| v == name) else {
                return Err(ParseError {
                    kind: ParseErrorKind::UnknownVariable(name.to_string()),
                    offset: start,
                });
            };
            let mut k: i64 = 1;
            if self.peek() == Some('^') {
                self.pos += 1;
                let neg = self.peek() == Some('-');
                if neg {
                    self.pos += 1;
                }
                let at = self.pos;
                let v = self.uint()?;
                k = i64::try_from(v).or(Err(ParseError {
                    kind: ParseErrorKind::OutOfRange,
                    offset: at,
                }))?;
                if neg {
                    k = -k;
                }
            }
            exp[idx] = exp[idx].checked_add(k).ok_or(ParseError {
                kind: ParseErrorKind::OutOfRange,
                offset: start,
            })?;
            // A '*' continues the monomial only if a variable follows.
            let save = self.pos;
            if self.peek() == Some('*') {
                self.pos += 1;
                if self.peek().is_some_and(is_ident_start) {
                    continue;
                }
                self.pos = save;
                return self.unexpected_after_star();
            }
            return Ok(Exponent::new(exp));
        }
    }

    fn unexpected_after_star<T>(&mut self) -> Result<T, ParseError> {
        self.pos += 1;
        self.unexpected()
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}
