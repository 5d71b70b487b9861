use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::format::{format_rational, parse_rational};
use super::Rational;
use crate::error::{Error, Result};

/// Univariate polynomial in `d` with rational coefficients, stored low to high.
///
/// The zero polynomial has no coefficients and degree `None`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        PolyQ::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyQ::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        PolyQ::new(vec![c])
    }

    /// The variable `d`.
    pub fn var() -> Self {
        PolyQ::from_ints(&[0, 1])
    }

    /// `d + shift`.
    pub fn linear(shift: i64) -> Self {
        PolyQ::from_ints(&[shift, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&Rational::from_integer(x.into()))
    }

    pub fn scale(&self, c: &Rational) -> PolyQ {
        if c.is_zero() {
            return PolyQ::zero();
        }
        PolyQ {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> PolyQ {
        (0..k).fold(PolyQ::one(), |acc, _| &acc * self)
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> PolyQ {
        match self.leading() {
            None => PolyQ::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &PolyQ) -> Result<(PolyQ, PolyQ)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((PolyQ::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((PolyQ::new(quot), PolyQ::new(rem)))
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &PolyQ) -> Result<PolyQ> {
        let (q, r) = self.divrem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NonPolynomial(r.to_string()))
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &PolyQ, b: &PolyQ) -> PolyQ {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("non-zero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Splits `self = scalar * prim` with `prim` an integer polynomial of
    /// content one and positive leading coefficient.
    pub fn primitive_part(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        let prim = ints.iter().map(|c| c / &content).collect();
        (Rational::new(content, lcm), prim)
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> PolyQ {
        PolyQ::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ::new(out)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PolyQ {
            type Output = PolyQ;
            fn $m(self, rhs: PolyQ) -> PolyQ {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        -&self
    }
}

impl std::iter::Product for PolyQ {
    fn product<I: Iterator<Item = PolyQ>>(iter: I) -> PolyQ {
        iter.fold(PolyQ::one(), |acc, p| &acc * &p)
    }
}

impl fmt::Display for PolyQ {
    /// Expanded form, highest degree first: `d^2+3d-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if negative {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let a = c.abs();
            let body = match k {
                0 => String::new(),
                1 => "d".to_string(),
                _ => format!("d^{k}"),
            };
            if body.is_empty() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{body}")?;
            } else if a.is_integer() {
                write!(f, "{}{body}", a.numer())?;
            } else {
                write!(f, "({}){body}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyQ({self})")
    }
}

/// JSON form of a coefficient: a number when it is an integer fitting in
/// `i64`, otherwise a string such as `"1/2"` or a long decimal integer.
pub(crate) fn coeff_to_json(c: &Rational) -> serde_json::Value {
    match c.is_integer().then(|| c.numer().to_i64()).flatten() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(format_rational(c)),
    }
}

impl Serialize for PolyQ {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&coeff_to_json(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for PolyQ {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct CoeffVisitor;
        impl<'de> Visitor<'de> for CoeffVisitor {
            type Value = PolyQ;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a list of rational coefficients, low degree first")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<PolyQ, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(v) = seq.next_element::<serde_json::Value>()? {
                    let c = match &v {
                        serde_json::Value::Number(n) => n
                            .as_i64()
                            .map(|i| Rational::from_integer(i.into()))
                            .ok_or_else(|| de::Error::custom(format!("non-integer number {n}")))?,
                        serde_json::Value::String(s) => parse_rational(s).map_err(de::Error::custom)?,
                        other => return Err(de::Error::custom(format!("bad coefficient {other}"))),
                    };
                    coeffs.push(c);
                }
                Ok(PolyQ::new(coeffs))
            }
        }
        deserializer.deserialize_seq(CoeffVisitor)
    }
}

/// Integer roots of a polynomial together with the cofactor left over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerRoots {
    /// `(root, multiplicity)`, ordered `0`, then `-1, -2, …`, then `1, 2, …`
    /// (the factor order `d (d+1)(d+2) … (d-1)(d-2) …`).
    pub roots: Vec<(BigInt, usize)>,
    /// `p / ∏ (d - r)^m`; has no integer roots.
    pub residual: PolyQ,
}

/// Candidate bound past which we enumerate divisors instead of scanning.
const SCAN_LIMIT: u64 = 10_000_000;

/// Extracts all integer roots of a non-zero polynomial with multiplicity.
pub fn factor_integer_roots(p: &PolyQ) -> Result<IntegerRoots> {
    if p.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (scalar, mut q) = p.primitive_part();
    let mut roots: Vec<(BigInt, usize)> = Vec::new();

    let zeros = q.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push((BigInt::zero(), zeros));
        q.drain(..zeros);
    }

    if q.len() > 1 {
        for r in root_candidates(&q) {
            let mut m = 0;
            while q.len() > 1 {
                match synthetic_division(&q, &r) {
                    Some(next) => {
                        q = next;
                        m += 1;
                    }
                    None => break,
                }
            }
            if m > 0 {
                roots.push((r, m));
            }
        }
    }
    roots.sort_by_key(|(r, _)| display_key(r));
    let residual = PolyQ::from_bigints(&q).scale(&scalar);
    Ok(IntegerRoots { roots, residual })
}

fn display_key(r: &BigInt) -> (u8, BigInt) {
    match r.sign() {
        Sign::NoSign => (0, BigInt::zero()),
        Sign::Minus => (1, -r),
        Sign::Plus => (2, r.clone()),
    }
}

/// Divides by `(d - r)` if `r` is a root.
fn synthetic_division(q: &[BigInt], r: &BigInt) -> Option<Vec<BigInt>> {
    let n = q.len() - 1;
    let mut out = vec![BigInt::zero(); n];
    let mut acc = BigInt::zero();
    for k in (1..=n).rev() {
        acc = &acc * r + &q[k];
        out[k - 1] = acc.clone();
    }
    (&acc * r + &q[0]).is_zero().then_some(out)
}

/// Every integer root divides the constant term and lies within the Cauchy bound.
fn root_candidates(q: &[BigInt]) -> Vec<BigInt> {
    let a0 = q[0].abs();
    let lead = q.last().unwrap().abs();
    let max_ratio = q[..q.len() - 1]
        .iter()
        .map(|c| c.abs().div_ceil(&lead))
        .max()
        .unwrap_or_else(BigInt::zero);
    let bound = (max_ratio + 1u32).min(a0.clone());

    let positive: Vec<BigInt> = match bound.to_u64() {
        Some(b) if b <= SCAN_LIMIT => (1..=b).map(BigInt::from).filter(|r| (&a0 % r).is_zero()).collect(),
        _ => divisors(&a0).into_iter().filter(|r| r <= &bound).collect(),
    };
    positive.into_iter().flat_map(|r| [r.clone(), -r]).collect()
}

/// Divisors of `n` via trial division by primes below 10^6; an unfactored
/// cofactor is treated as prime, so roots sharing only part of a large
/// composite cofactor can be missed.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut rest = n.clone();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000);
    while p <= limit && &p * &p <= rest {
        let mut e = 0;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += 1;
    }
    if rest > BigInt::one() {
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (prime, e) in factors {
        let mut next = Vec::new();
        for d in &divs {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pw);
                pw *= &prime;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}
