//! Text forms: rationals as `a/b`, rational functions in factored style
//! `(-1)/(d(d+2)(d-1))`, and a small expression parser that reads both the
//! factored and the expanded forms back.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{factor_integer_roots, PolyQ, RatFuncQ, Rational};
use crate::error::{Error, Result};

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = || Error::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

fn linear_factor(root: &BigInt) -> String {
    if root.is_zero() {
        "d".to_string()
    } else if root.is_negative() {
        format!("(d+{})", -root)
    } else {
        format!("(d-{root})")
    }
}

/// Factored text: the numerator expanded, the denominator split into
/// `d^k (d+a)… (d-b)…` with any root-free residual printed expanded.
pub(crate) fn format_factored(r: &RatFuncQ) -> String {
    if r.den().is_one() {
        return r.num().to_string();
    }
    let factors = factor_integer_roots(r.den()).expect("denominator is non-zero");
    let mut den = String::new();
    for (root, m) in &factors.roots {
        den.push_str(&linear_factor(root));
        if *m > 1 {
            den.push_str(&format!("^{m}"));
        }
    }
    if !factors.residual.is_one() {
        den.push_str(&format!("({})", factors.residual));
    }
    format!("({})/({den})", r.num())
}

impl FromStr for RatFuncQ {
    type Err = Error;

    /// Parses expressions in `d` built from integers, `+ - * / ^` and
    /// parentheses, with juxtaposition as multiplication.
    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = Parser { tokens, pos: 0 };
        let value = parser.sum()?;
        if parser.pos != parser.tokens.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(value)
    }
}

impl FromStr for PolyQ {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let r: RatFuncQ = s.parse()?;
        r.as_poly()
            .ok_or_else(|| Error::Parse(format!("{s:?} is not a polynomial")))
    }
}

struct Parser {
    tokens: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).copied()
    }

    fn error(&self, what: &str) -> Error {
        let text: String = self.tokens.iter().collect();
        Error::Parse(format!("{what} at position {} in {text:?}", self.pos))
    }

    fn sum(&mut self) -> Result<RatFuncQ> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFuncQ> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some('/') => {
                    self.pos += 1;
                    acc = (&acc / &self.factor()?)?;
                }
                Some(c) if c == '(' || c == 'd' || c.is_ascii_digit() => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFuncQ> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok((0..e).fold(RatFuncQ::one(), |acc, _| &acc * &base));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFuncQ> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('d') => {
                self.pos += 1;
                Ok(RatFuncQ::from_poly(PolyQ::var()))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFuncQ::constant(Rational::from_integer(n)))
            }
            _ => Err(self.error("unexpected token")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let digits: String = self.tokens[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }
}
