use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{PolyQ, Rational};
use crate::error::{Error, Result};

/// Rational function `num / den` in `d`, kept in normal form: coprime,
/// `den` an integer polynomial of content one with positive leading
/// coefficient. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFuncQ {
    num: PolyQ,
    den: PolyQ,
}

impl RatFuncQ {
    pub fn new(num: PolyQ, den: PolyQ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn from_poly(p: PolyQ) -> Self {
        Self::normalize(p, PolyQ::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(PolyQ::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(PolyQ::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(PolyQ::one())
    }

    pub fn num(&self) -> &PolyQ {
        &self.num
    }

    pub fn den(&self) -> &PolyQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Returns the polynomial if the denominator is constant.
    pub fn as_poly(&self) -> Option<PolyQ> {
        (self.den.degree() == Some(0)).then(|| self.num.scale(&self.den.coeff(0).recip()))
    }

    /// Normal form; idempotent.
    pub fn normalized(&self) -> Self {
        Self::normalize(self.num.clone(), self.den.clone())
    }

    fn normalize(num: PolyQ, den: PolyQ) -> Self {
        if num.is_zero() {
            return RatFuncQ {
                num: PolyQ::zero(),
                den: PolyQ::one(),
            };
        }
        let g = PolyQ::gcd(&num, &den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let (scalar, prim) = den.primitive_part();
        RatFuncQ {
            num: num.scale(&scalar.recip()),
            den: PolyQ::from_bigints(&prim),
        }
    }

    /// Substitutes a rational value for `d`.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let den = self.den.eval(x);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / den)
    }

    pub fn eval_int(&self, x: i64) -> Result<Rational> {
        self.eval(&Rational::from_integer(x.into()))
    }

    pub fn recip(&self) -> Result<Self> {
        RatFuncQ::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RatFuncQ::zero();
        }
        RatFuncQ {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// `deg num - deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree()? as i64)
    }

    /// Ratio of leading coefficients; the coefficient of the dominant term as `d → ∞`.
    pub fn leading_ratio(&self) -> Option<Rational> {
        Some(self.num.leading()? / self.den.leading()?)
    }
}

impl Add for &RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFuncQ::normalize(&self.num + &rhs.num, self.den.clone());
        }
        let g = PolyQ::gcd(&self.den, &rhs.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RatFuncQ::normalize(num, &self.den * &b)
    }
}

impl Sub for &RatFuncQ {
    type Output = RatFuncQ;
    fn sub(self, rhs: &RatFuncQ) -> RatFuncQ {
        self + &(-rhs)
    }
}

impl Mul for &RatFuncQ {
    type Output = RatFuncQ;
    fn mul(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() || rhs.is_zero() {
            return RatFuncQ::zero();
        }
        // cross-cancel first to keep the intermediate degrees down
        let g1 = PolyQ::gcd(&self.num, &rhs.den);
        let g2 = PolyQ::gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RatFuncQ::normalize(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &RatFuncQ {
    type Output = Result<RatFuncQ>;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RatFuncQ) -> Result<RatFuncQ> {
        Ok(self * &rhs.recip()?)
    }
}

impl Neg for &RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        RatFuncQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, rhs: RatFuncQ) -> RatFuncQ {
        &self + &rhs
    }
}

impl Sub for RatFuncQ {
    type Output = RatFuncQ;
    fn sub(self, rhs: RatFuncQ) -> RatFuncQ {
        &self - &rhs
    }
}

impl Mul for RatFuncQ {
    type Output = RatFuncQ;
    fn mul(self, rhs: RatFuncQ) -> RatFuncQ {
        &self * &rhs
    }
}

impl Neg for RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        -&self
    }
}

impl std::iter::Sum for RatFuncQ {
    fn sum<I: Iterator<Item = RatFuncQ>>(iter: I) -> RatFuncQ {
        iter.fold(RatFuncQ::zero(), |acc, x| &acc + &x)
    }
}

impl From<PolyQ> for RatFuncQ {
    fn from(p: PolyQ) -> Self {
        RatFuncQ::from_poly(p)
    }
}

impl fmt::Debug for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFuncQ({})/({})", self.num, self.den)
    }
}

impl fmt::Display for RatFuncQ {
    /// Factored style: `(-1)/(d(d+2)(d-1))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format::format_factored(self))
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    num: PolyQ,
    den: PolyQ,
}

impl Serialize for RatFuncQ {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RatFuncRepr {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatFuncQ {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let r = RatFuncRepr::deserialize(deserializer)?;
        RatFuncQ::new(r.num, r.den).map_err(serde::de::Error::custom)
    }
}
