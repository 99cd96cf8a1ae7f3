//! Text form of integer polynomials: `x^6+15x^2+8x+128`, `-x^3 + 2*x - 1`.
//!
//! One variable (any single ASCII letter), integer coefficients, optional
//! `*` between coefficient and variable, repeated powers are summed.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::zpoly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty polynomial")]
    Empty,
    #[error("unexpected {found:?} at position {pos}")]
    Unexpected { pos: usize, found: char },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("more than one variable: {first:?} and {second:?}")]
    Multivariate { first: char, second: char },
    #[error("exponent too large at position {pos}")]
    ExponentTooLarge { pos: usize },
}

/// Largest exponent accepted; guards against `x^99999999` allocating.
const MAX_EXPONENT: usize = 4096;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: Option<char>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParseError {
        match self.src.get(self.pos) {
            Some(&b) => ParseError::Unexpected {
                pos: self.pos,
                found: b as char,
            },
            None => ParseError::UnexpectedEnd,
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn variable(&mut self) -> Result<bool, ParseError> {
        match self.peek() {
            Some(b) if b.is_ascii_alphabetic() => {
                let c = b as char;
                match self.var {
                    None => self.var = Some(c),
                    Some(v) if v != c => return Err(ParseError::Multivariate { first: v, second: c }),
                    _ => {}
                }
                self.pos += 1;
                Ok(true)
            }
            _ => Ok(false),
        }
    }

    /// One term without its sign: `coeff`, `coeff*x^k`, `x^k`.
    fn term(&mut self) -> Result<(BigInt, usize), ParseError> {
        let coeff = self.digits().map(|d| d.parse::<BigInt>().expect("decimal digits"));
        if coeff.is_some() && self.peek() == Some(b'*') {
            self.pos += 1;
            if !self.variable()? {
                return Err(self.unexpected());
            }
        } else if !self.variable()? {
            return coeff.map(|c| (c, 0)).ok_or_else(|| self.unexpected());
        }
        let mut exp = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let d = self.digits().ok_or_else(|| self.unexpected())?;
            exp = d
                .parse::<usize>()
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or(ParseError::ExponentTooLarge { pos: at })?;
        }
        Ok((coeff.unwrap_or_else(BigInt::one), exp))
    }
}

/// Parse a polynomial in one variable with integer coefficients.
pub fn parse_poly(text: &str) -> Result<IntPoly, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        var: None,
    };
    if p.peek().is_none() {
        return Err(ParseError::Empty);
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first = true;
    loop {
        let negative = match p.peek() {
            Some(b'+') if !first => {
                p.pos += 1;
                false
            }
            Some(b'-') => {
                p.pos += 1;
                true
            }
            None if !first => break,
            _ if first => false,
            _ => return Err(p.unexpected()),
        };
        first = false;
        let (c, k) = p.term()?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigInt::zero());
        }
        if negative {
            coeffs[k] -= c;
        } else {
            coeffs[k] += c;
        }
    }
    Ok(IntPoly::new(coeffs))
}

impl std::str::FromStr for IntPoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_paper_style_input() {
        let f = parse_poly("x^6+15x^2+8x+128").unwrap();
        assert_eq!(f, IntPoly::from_i64s(&[128, 8, 15, 0, 0, 0, 1]));
    }

    #[test]
    fn unary_minus_and_implicit_coefficients() {
        assert_eq!(
            parse_poly("-x^3 + 2*x - 1").unwrap(),
            IntPoly::from_i64s(&[-1, 2, 0, -1])
        );
        assert_eq!(parse_poly(" 7 ").unwrap(), IntPoly::from_i64s(&[7]));
        assert_eq!(parse_poly("y^2-y").unwrap(), IntPoly::from_i64s(&[0, -1, 1]));
        assert_eq!(parse_poly("x - x").unwrap(), IntPoly::zero());
        assert_eq!(parse_poly("x^2 + x^2").unwrap(), IntPoly::from_i64s(&[0, 0, 2]));
    }

    #[test]
    fn big_coefficients() {
        let f = parse_poly("x^6+123456789012345678901234567890").unwrap();
        assert_eq!(f.coeff(0).to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse_poly(""), Err(ParseError::Empty));
        assert!(matches!(parse_poly("x^2+y"), Err(ParseError::Multivariate { .. })));
        assert!(matches!(parse_poly("1.5x"), Err(ParseError::Unexpected { .. })));
        assert!(matches!(parse_poly("x/2"), Err(ParseError::Unexpected { .. })));
        assert!(matches!(parse_poly("x^"), Err(ParseError::UnexpectedEnd)));
        assert!(matches!(parse_poly("x++1"), Err(ParseError::Unexpected { .. })));
        assert!(matches!(parse_poly("3*"), Err(ParseError::UnexpectedEnd)));
        assert!(matches!(
            parse_poly("x^100000"),
            Err(ParseError::ExponentTooLarge { .. })
        ));
    }

    #[test]
    fn display_round_trips() {
        for s in ["x^6+15x^2+8x+128", "-2x^3-x-1", "x^6-1", "5"] {
            assert_eq!(parse_poly(s).unwrap().to_string(), s);
        }
    }
}
