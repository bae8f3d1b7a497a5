//! Infix polynomial expressions.
//!
//! Grammar: sums and differences of products; `/` only by a nonzero constant;
//! `^` with a nonnegative integer exponent; parentheses; unary minus;
//! integer, decimal and variable atoms.

use super::{MPoly, PolyError};
use crate::rat::Rat;

/// Parses an expression over `x1..xn`.
pub fn parse_poly(src: &str, n: usize) -> Result<MPoly, PolyError> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    parse_poly_with(src, &refs)
}

/// Parses an expression whose variables are exactly `names`.
pub fn parse_poly_with(src: &str, names: &[&str]) -> Result<MPoly, PolyError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        names,
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
    names: &'a [&'a str],
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
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

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<MPoly, PolyError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, PolyError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.unary()?;
            if c == b'*' {
                acc = &acc * &rhs;
            } else {
                let d = rhs.as_constant().ok_or(PolyError::Parse {
                    pos: at,
                    msg: "division by a non-constant".into(),
                })?;
                if d.is_zero() {
                    return Err(PolyError::Parse {
                        pos: at,
                        msg: "division by zero".into(),
                    });
                }
                acc = acc.scale(&d.recip());
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly, PolyError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected a nonnegative integer exponent"));
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let r: Rat = text.parse().map_err(|_| PolyError::Parse {
                    pos: start,
                    msg: format!("invalid number `{text}`"),
                })?;
                Ok(MPoly::constant(self.nvars(), r))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(MPoly::var(self.nvars(), i)),
                    None => Err(PolyError::Parse {
                        pos: start,
                        msg: format!("unknown variable `{name}`"),
                    }),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn parses_and_evaluates() {
        let p = parse_poly("x1^2 - x2 + 3/4", 2).unwrap();
        assert_eq!(p.eval(&[q(2, 1), q(1, 1)]), q(15, 4));
        let p = parse_poly("-(x1 + 1)*(x1 - 1) * 2", 1).unwrap();
        assert_eq!(p.to_string(), "-2*x1^2 + 2");
        let p = parse_poly("0.5*x3", 3).unwrap();
        assert_eq!(p.eval(&[q(0, 1), q(0, 1), q(4, 1)]), q(2, 1));
        let g = parse_poly_with("u1*u2 + 3", &["u1", "u2"]).unwrap();
        assert_eq!(g.eval(&[q(2, 1), q(5, 1)]), q(13, 1));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly("x3", 2).is_err());
        assert!(parse_poly("x1 / x1", 1).is_err());
        assert!(parse_poly("1/0", 1).is_err());
        assert!(parse_poly("x1 +", 1).is_err());
        assert!(parse_poly("(x1", 1).is_err());
        assert!(parse_poly("x1 ^ -1", 1).is_err());
        assert!(parse_poly("x1 x1", 1).is_err());
    }
}
