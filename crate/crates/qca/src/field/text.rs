//! Exact textual forms.
//!
//! A scalar prints as `(N)/(D)` where `N`, `D` are polynomials in `q`
//! written `c0 + c1*q + c2*q^2`. A function of `u` prints as `[N]/[D]` with
//! polynomial coefficients in braces: `{(1)/(1)} + {(-1)/(1)}*u`.

use super::{Poly, RatFunc, RatU, Ring, Scalar, Q};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

pub fn format_scalar(s: &Scalar) -> String {
    let r = s.to_ratfunc();
    format!(
        "({})/({})",
        r.num().format_with("q", |c| c.to_string()),
        r.den().format_with("q", |c| c.to_string())
    )
}

pub fn format_ratu(r: &RatU) -> String {
    format!(
        "[{}]/[{}]",
        r.num().format_with("u", |c| format!("{{{}}}", format_scalar(c))),
        r.den().format_with("u", |c| format!("{{{}}}", format_scalar(c)))
    )
}

impl std::fmt::Display for RatFunc<Scalar> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_ratu(self))
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn rational(&mut self) -> Result<Q, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'/') {
            self.pos += 1;
        }
        let tok = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Q::from_str(tok).or_else(|_| self.err(format!("bad rational '{tok}'")))
    }

    fn exponent(&mut self, var: u8) -> Result<usize, ParseError> {
        if self.peek() != Some(var) {
            return Ok(0);
        }
        self.pos += 1;
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let tok = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        tok.parse().or_else(|_| self.err("bad exponent"))
    }

    /// `term (+ term)*` where a term is `coeff`, `coeff*var^k` or `var^k`.
    fn poly<C: Ring>(
        &mut self,
        var: u8,
        coeff: &mut dyn FnMut(&mut Self) -> Result<C, ParseError>,
        starts_coeff: &dyn Fn(u8) -> bool,
    ) -> Result<Poly<C>, ParseError> {
        let mut terms: Vec<(usize, C)> = Vec::new();
        loop {
            let c = match self.peek() {
                Some(ch) if ch == var => C::one(),
                Some(ch) if starts_coeff(ch) => {
                    let c = coeff(self)?;
                    if self.peek() == Some(b'*') {
                        self.pos += 1;
                    }
                    c
                }
                _ => return self.err("expected a term"),
            };
            let e = self.exponent(var)?;
            terms.push((e, c));
            if self.peek() == Some(b'+') {
                self.pos += 1;
            } else {
                break;
            }
        }
        let deg = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut coeffs = vec![C::zero(); deg + 1];
        for (e, c) in terms {
            coeffs[e] = coeffs[e].plus(&c);
        }
        Ok(Poly::from_coeffs(coeffs))
    }

    fn qpoly(&mut self) -> Result<Poly<Q>, ParseError> {
        self.poly(b'q', &mut |c: &mut Self| c.rational(), &|ch| ch == b'-' || ch.is_ascii_digit())
    }

    fn scalar(&mut self) -> Result<Scalar, ParseError> {
        self.expect(b'(')?;
        let n = self.qpoly()?;
        self.expect(b')')?;
        let d = if self.peek() == Some(b'/') {
            self.pos += 1;
            self.expect(b'(')?;
            let d = self.qpoly()?;
            self.expect(b')')?;
            d
        } else {
            Poly::one()
        };
        match RatFunc::new(n, d) {
            Some(r) => Ok(Scalar::from_ratfunc(r)),
            None => self.err("zero denominator"),
        }
    }

    fn upoly(&mut self) -> Result<Poly<Scalar>, ParseError> {
        self.poly(
            b'u',
            &mut |c: &mut Self| {
                c.expect(b'{')?;
                let s = c.scalar()?;
                c.expect(b'}')?;
                Ok(s)
            },
            &|ch| ch == b'{',
        )
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.peek().is_some() {
            self.err("trailing input")
        } else {
            Ok(())
        }
    }
}

/// Parses the `(N)/(D)` form written by `Display for Scalar`.
pub fn parse_scalar(s: &str) -> Result<Scalar, ParseError> {
    let mut c = Cursor { s: s.as_bytes(), pos: 0 };
    let v = c.scalar()?;
    c.finish()?;
    Ok(v)
}

/// Parses the `[N]/[D]` form written by `Display for RatU`.
pub fn parse_ratu(s: &str) -> Result<RatU, ParseError> {
    let mut c = Cursor { s: s.as_bytes(), pos: 0 };
    c.expect(b'[')?;
    let n = c.upoly()?;
    c.expect(b']')?;
    c.expect(b'/')?;
    c.expect(b'[')?;
    let d = c.upoly()?;
    c.expect(b']')?;
    c.finish()?;
    RatFunc::new(n, d).ok_or(ParseError { pos: c.pos, msg: "zero denominator".into() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, QCtx, QPow};

    #[test]
    fn scalar_roundtrip() {
        let c = QCtx::symbolic();
        let s = QPow::<Scalar>::q_pow(&c, -3).plus(&Scalar::frac(-2, 7)).recip().unwrap();
        let t = s.to_string();
        assert_eq!(parse_scalar(&t).unwrap(), s);
        assert_eq!(parse_scalar("(3/5)/(1)").unwrap(), Scalar::frac(3, 5));
        assert_eq!(parse_scalar("(0)/(1)").unwrap(), Scalar::zero());
    }

    #[test]
    fn ratu_roundtrip() {
        let u: RatU = RatFunc::var();
        let r = u.sub(&RatFunc::constant(Scalar::q())).inv().unwrap();
        let t = r.to_string();
        assert_eq!(parse_ratu(&t).unwrap(), r, "{t}");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_scalar("(1 + )/(1)").is_err());
        assert!(parse_scalar("(1)/(0)").is_err());
        assert!(parse_ratu("[{(1)/(1)}]/[{(1)/(1)}] x").is_err());
    }
}
