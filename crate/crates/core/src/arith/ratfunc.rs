use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Element of Q(λ) in canonical form: `gcd(num, den) = 1`, `den` monic.
///
/// Canonicalization happens on construction, so `==` is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        if den.is_constant() {
            let c = den.coeff(0).recip();
            return Ok(RatFunc {
                num: num.scale(&c),
                den: Poly::one(),
            });
        }
        let g = num.gcd(&den)?;
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        Ok(Self::normalize_den(num, den))
    }

    fn normalize_den(num: Poly, den: Poly) -> Self {
        let lc = den.leading().expect("non-zero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from(Poly::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc::from(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from(Poly::from_ints(&[n]))
    }

    pub fn lambda() -> Self {
        RatFunc::from(Poly::lambda())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Polynomial in λ (denominator 1).
    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// Constant in Q, if this is one.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    /// `deg num + deg den`, used as a pivot size heuristic.
    pub fn size(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }

    /// `deg num − deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree()? as i64)
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Self::normalize_den(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// `num | den` text form, e.g. `1, 1 | 0, 1` for (1+λ)/λ.
    pub fn to_text(&self) -> String {
        format!("{} | {}", self.num.to_text(), self.den.to_text())
    }
}

impl From<Poly> for RatFunc {
    fn from(num: Poly) -> Self {
        RatFunc {
            num,
            den: Poly::one(),
        }
    }
}

impl FromStr for RatFunc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('|') {
            Some((n, d)) => RatFunc::new(n.parse()?, d.parse()?),
            None => Ok(RatFunc::from(s.parse::<Poly>()?)),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFunc::from(num);
            }
            return RatFunc::new(num, self.den.clone()).expect("non-zero denominator");
        }
        RatFunc::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
        .expect("non-zero denominator")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from(&self.num * &rhs.num);
        }
        // Cross-cancel so the product is already reduced.
        let g1 = self.num.gcd(&rhs.den).expect("non-zero operands");
        let g2 = rhs.num.gcd(&self.den).expect("non-zero operands");
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RatFunc::normalize_den(&n1 * &n2, &d1 * &d2)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

/// `ratfunc_arith` entry point.
pub fn ratfunc_arith(op: FieldOp, a: &RatFunc, b: &RatFunc) -> Result<RatFunc> {
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.checked_div(b)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let inv_l = rf(&[1], &[0, 1]);
        assert_eq!(
            ratfunc_arith(FieldOp::Add, &inv_l, &inv_l).unwrap(),
            rf(&[2], &[0, 1])
        );
        let a = rf(&[0, 1], &[1, 1]);
        let b = rf(&[1, 1], &[0, 1]);
        assert_eq!(ratfunc_arith(FieldOp::Mul, &a, &b).unwrap(), RatFunc::one());
        let q = ratfunc_arith(FieldOp::Div, &rf(&[-1, 0, 1], &[1]), &rf(&[-1, 1], &[1])).unwrap();
        assert_eq!(q, rf(&[1, 1], &[1]));
        assert_eq!(
            ratfunc_arith(FieldOp::Div, &a, &RatFunc::zero()),
            Err(Error::ZeroDivisor)
        );
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let q = rf(&[2], &[0, 4]);
        assert_eq!(q.den(), &Poly::from_ints(&[0, 1]));
        assert_eq!(q.num(), &Poly::constant(rat(1, 2)));
        assert_eq!(rf(&[0], &[3, 5]), RatFunc::zero());
        assert_eq!(rf(&[6, 3], &[2, 1]), RatFunc::from_int(3));
        assert!(RatFunc::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn text_round_trip() {
        let q: RatFunc = "1, 1 | 0, 2".parse().unwrap();
        assert_eq!(q, rf(&[1, 1], &[0, 2]));
        assert_eq!(q.to_text(), "1/2, 1/2 | 0, 1");
        assert_eq!(q.to_text().parse::<RatFunc>().unwrap(), q);
        assert_eq!("5".parse::<RatFunc>().unwrap(), RatFunc::constant(int(5)));
    }
}
