//! `x^4 - 20x^3 + 17*x + 2` style input.

use ordclosure::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("empty polynomial")]
    Empty,
    #[error("unexpected character {found:?} at position {pos}")]
    Unexpected { found: char, pos: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("exponent too large at position {0}")]
    ExponentTooLarge(usize),
}

struct Parser {
    chars: Vec<(usize, char)>,
    i: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.char_indices().collect(),
            i: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).map(|&(_, c)| c)
    }

    /// Whitespace separates tokens but never joins digits.
    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.i += 1;
        }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or(usize::MAX, |&(p, _)| p)
    }

    fn unexpected(&self) -> PolyError {
        match self.chars.get(self.i) {
            Some(&(pos, found)) => PolyError::Unexpected { found, pos },
            None => PolyError::UnexpectedEnd,
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        (self.i > start).then(|| self.chars[start..self.i].iter().map(|&(_, c)| c).collect())
    }

    /// `[coef] [*] [x [^ exp]]`, at least one of coefficient or `x`.
    fn term(&mut self) -> Result<(BigInt, usize), PolyError> {
        self.skip_ws();
        let coef = self.digits().map(|d| d.parse::<BigInt>().expect("ascii digits"));
        self.skip_ws();
        let has_x = match self.peek() {
            Some('*') if coef.is_some() => {
                self.i += 1;
                self.skip_ws();
                if self.peek() != Some('x') {
                    return Err(self.unexpected());
                }
                true
            }
            Some('x') => true,
            _ => false,
        };
        if !has_x {
            return coef.map(|c| (c, 0)).ok_or_else(|| self.unexpected());
        }
        self.i += 1;
        self.skip_ws();
        let mut exp = 1usize;
        if self.peek() == Some('^') {
            self.i += 1;
            self.skip_ws();
            let pos = self.pos();
            let d = self.digits().ok_or_else(|| self.unexpected())?;
            exp = d.parse().map_err(|_| PolyError::ExponentTooLarge(pos))?;
            if exp > 4096 {
                return Err(PolyError::ExponentTooLarge(pos));
            }
        }
        Ok((coef.unwrap_or_else(BigInt::one), exp))
    }
}

/// Coefficients low to high; like terms are combined.
pub fn parse_poly(src: &str) -> Result<Vec<BigInt>, PolyError> {
    let mut p = Parser::new(src);
    p.skip_ws();
    if p.peek().is_none() {
        return Err(PolyError::Empty);
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first = true;
    while p.peek().is_some() {
        let negative = match p.peek() {
            Some('+') => {
                p.i += 1;
                false
            }
            Some('-') => {
                p.i += 1;
                true
            }
            _ if first => false,
            _ => return Err(p.unexpected()),
        };
        first = false;
        let (c, e) = p.term()?;
        p.skip_ws();
        if coeffs.len() <= e {
            coeffs.resize(e + 1, BigInt::zero());
        }
        if negative {
            coeffs[e] -= c;
        } else {
            coeffs[e] += c;
        }
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Canonical rendering, highest degree first, in the variable `var`.
pub fn format_poly(coeffs: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        match (k, mag.is_one()) {
            (0, _) => out.push_str(&mag.to_string()),
            (_, true) => out.push_str(&mono),
            (_, false) => out.push_str(&format!("{mag}*{mono}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn parses_examples() {
        assert_eq!(parse_poly("x^4-20x^3-20x^2+17x+2").unwrap(), ints(&[2, 17, -20, -20, 1]));
        assert_eq!(parse_poly("x^2 - 5").unwrap(), ints(&[-5, 0, 1]));
        assert_eq!(parse_poly("-5 + x^2").unwrap(), ints(&[-5, 0, 1]));
        assert_eq!(parse_poly("x^2 - x - 1").unwrap(), ints(&[-1, -1, 1]));
        assert_eq!(parse_poly("3*x^2 + 2x + x^2").unwrap(), ints(&[0, 2, 4]));
        assert_eq!(
            parse_poly("x^4 - 625*x^3 - 125*x^2 - 15625*x - 15625").unwrap(),
            ints(&[-15625, -15625, -125, -625, 1])
        );
    }

    #[test]
    fn rejects_garbage() {
        assert_eq!(parse_poly(""), Err(PolyError::Empty));
        assert_eq!(parse_poly("y^2"), Err(PolyError::Unexpected { found: 'y', pos: 0 }));
        assert_eq!(parse_poly("x^"), Err(PolyError::UnexpectedEnd));
        assert!(parse_poly("x^2 5").is_err());
        assert!(parse_poly("2*").is_err());
        assert!(parse_poly("x^99999999999999999999999").is_err());
    }

    #[test]
    fn format_round_trips() {
        for f in [ints(&[2, 17, -20, -20, 1]), ints(&[-5, 0, 1]), ints(&[0, -1, 0, 3]), ints(&[7])] {
            let s = format_poly(&f, "x");
            assert_eq!(parse_poly(&s).unwrap(), f, "{s}");
        }
        assert_eq!(format_poly(&ints(&[2, 17, -20, -20, 1]), "x"), "x^4 - 20*x^3 - 20*x^2 + 17*x + 2");
    }
}
