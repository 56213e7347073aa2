//! Text form of Laurent polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := 't' ('^' sint)? | 'x' digit ('^' uint)? | uint
//! ```
//!
//! Whitespace is ignored. The printer emits terms by increasing `t`
//! exponent, so `parse_expr(render_laurent(f)) == f`.

use thiserror::Error;

use crate::field::reduce;
use crate::laurent::LaurentPoly;
use crate::poly::MPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    Unexpected(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("negative exponent on x")]
    NegativeExponent,
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("integer out of range")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    p: u32,
    d: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, offset: usize, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError { offset, kind })
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

    fn unexpected<T>(&mut self) -> Result<T, ParseError> {
        match self.peek() {
            Some(c) => self.err(self.pos, ParseErrorKind::Unexpected(c as char)),
            None => self.err(self.pos, ParseErrorKind::UnexpectedEnd),
        }
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.unexpected();
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse()
            .or_else(|_| self.err(start, ParseErrorKind::Overflow))
    }

    fn sint(&mut self) -> Result<i64, ParseError> {
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let start = self.pos;
        let v = self.uint()?;
        let v = i64::try_from(v).or_else(|_| self.err(start, ParseErrorKind::Overflow))?;
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<Option<i64>, ParseError> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            Ok(Some(self.sint()?))
        } else {
            Ok(None)
        }
    }

    /// One factor, multiplied into `(coeff, e_t, e_x)`.
    fn factor(&mut self, coeff: &mut u32, e_t: &mut i64, e_x: &mut [u32]) -> Result<(), ParseError> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                let e = self.exponent()?.unwrap_or(1);
                *e_t = e_t
                    .checked_add(e)
                    .ok_or(ParseError { offset: self.pos, kind: ParseErrorKind::Overflow })?;
            }
            Some(b'x') => {
                let start = self.pos;
                self.pos += 1;
                let idx = match self.src.get(self.pos) {
                    Some(c) if c.is_ascii_digit() => (c - b'0') as usize,
                    _ => return self.unexpected(),
                };
                self.pos += 1;
                if idx == 0 || idx > self.d {
                    return self.err(start, ParseErrorKind::UnknownVariable(format!("x{idx}")));
                }
                self.skip_ws();
                let exp_at = self.pos;
                let e = self.exponent()?.unwrap_or(1);
                if e < 0 {
                    return self.err(exp_at, ParseErrorKind::NegativeExponent);
                }
                let e = u32::try_from(e).or_else(|_| self.err(exp_at, ParseErrorKind::Overflow))?;
                e_x[idx - 1] = e_x[idx - 1]
                    .checked_add(e)
                    .ok_or(ParseError { offset: exp_at, kind: ParseErrorKind::Overflow })?;
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.uint()?;
                let v = reduce((v % self.p as u64) as i64, self.p);
                *coeff = ((*coeff as u64 * v as u64) % self.p as u64) as u32;
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let mut end = start;
                while end < self.src.len() && self.src[end].is_ascii_alphanumeric() {
                    end += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..end]).into_owned();
                return self.err(start, ParseErrorKind::UnknownVariable(name));
            }
            _ => return self.unexpected(),
        }
        Ok(())
    }

    fn term(&mut self, sign: u32, out: &mut LaurentPoly) -> Result<(), ParseError> {
        let mut coeff = sign;
        let mut e_t = 0;
        let mut e_x = vec![0; self.d];
        self.factor(&mut coeff, &mut e_t, &mut e_x)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut coeff, &mut e_t, &mut e_x)?;
        }
        out.add_term(e_t, e_x, coeff);
        Ok(())
    }

    fn expr(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut out = LaurentPoly::zero(self.p, self.d);
        self.term(1 % self.p, &mut out)?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    self.term(1, &mut out)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    self.term(self.p - 1, &mut out)?;
                }
                None => return Ok(out),
                _ => return self.unexpected(),
            }
        }
    }
}

/// Parses `src` as an element of `F_p[x_1..x_d][t, t^-1]`.
pub fn parse_expr(src: &str, p: u32, d: usize) -> Result<LaurentPoly, ParseError> {
    Parser {
        src: src.as_bytes(),
        pos: 0,
        p,
        d,
    }
    .expr()
}

/// Largest `i` such that `x<i>` occurs in `src`, ignoring syntax.
pub fn max_variable_index(src: &str) -> usize {
    let b = src.as_bytes();
    b.windows(2)
        .filter(|w| w[0] == b'x' && w[1].is_ascii_digit())
        .map(|w| (w[1] - b'0') as usize)
        .max()
        .unwrap_or(0)
}

fn render_monomial(c: u32, e_t: Option<i64>, e_x: &[u32]) -> String {
    let mut factors = Vec::new();
    for (i, &e) in e_x.iter().enumerate() {
        match e {
            0 => {}
            1 => factors.push(format!("x{}", i + 1)),
            _ => factors.push(format!("x{}^{e}", i + 1)),
        }
    }
    if let Some(e) = e_t.filter(|&e| e != 0) {
        factors.push(format!("t^{e}"));
    }
    if c != 1 || factors.is_empty() {
        factors.insert(0, c.to_string());
    }
    factors.join("*")
}

pub fn render_laurent(f: &LaurentPoly) -> String {
    let parts: Vec<String> = f
        .terms()
        .map(|(e, ex, c)| render_monomial(c.value(), Some(e), ex))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Renders a polynomial in `x_1..x_nvars`.
pub fn render_poly(f: &MPoly) -> String {
    let parts: Vec<String> = f
        .terms()
        .map(|(ex, c)| render_monomial(c.value(), None, ex))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_expr("t^-2", 5, 0).unwrap(), LaurentPoly::t_pow(-2, 5, 0));
        let f = parse_expr("2*t^-2 + x1*t^-1", 3, 1).unwrap();
        let expected = &LaurentPoly::t_pow(-2, 3, 1).scale(crate::field::Fp::new(2, 3))
            + &(&LaurentPoly::x(1, 3, 1) * &LaurentPoly::t_pow(-1, 3, 1));
        assert_eq!(f, expected);
        assert_eq!(
            parse_expr("x1^-1", 5, 1),
            Err(ParseError { offset: 2, kind: ParseErrorKind::NegativeExponent })
        );
    }

    #[test]
    fn parse_details() {
        assert_eq!(parse_expr(" t ", 5, 0).unwrap(), LaurentPoly::t_pow(1, 5, 0));
        assert_eq!(parse_expr("7", 5, 0).unwrap(), LaurentPoly::constant(2, 5, 0));
        assert!(parse_expr("t^-1 - t^-1", 5, 0).unwrap().is_zero());
        assert_eq!(
            parse_expr("3*t^2*t^-3", 7, 0).unwrap(),
            LaurentPoly::t_pow(-1, 7, 0).scale(crate::field::Fp::new(3, 7))
        );
        assert_eq!(parse_expr("x2", 5, 1).unwrap_err().kind, ParseErrorKind::UnknownVariable("x2".into()));
        assert_eq!(parse_expr("y", 5, 1).unwrap_err().kind, ParseErrorKind::UnknownVariable("y".into()));
        assert_eq!(parse_expr("t^", 5, 0).unwrap_err(), ParseError { offset: 2, kind: ParseErrorKind::UnexpectedEnd });
        assert_eq!(parse_expr("t +* 1", 5, 0).unwrap_err().offset, 3);
        assert_eq!(parse_expr("", 5, 0).unwrap_err().kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(max_variable_index("x3*t + x1"), 3);
    }

    #[test]
    fn render_examples() {
        let f = parse_expr("x1*t^-1 + 2*t^-2", 3, 1).unwrap();
        assert_eq!(render_laurent(&f), "2*t^-2 + x1*t^-1");
        assert_eq!(render_laurent(&LaurentPoly::zero(3, 1)), "0");
        let g = parse_expr("t + 4*x1^2*x2 + 1", 5, 2).unwrap();
        let text = render_laurent(&g);
        assert_eq!(parse_expr(&text, 5, 2).unwrap(), g);
        assert_eq!(render_poly(&MPoly::var(0, 3, 1)), "x1");
    }
}
