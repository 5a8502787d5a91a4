use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;

use super::laurent::LaurentHalf;
use crate::error::{Error, Result};

/// An element of the fraction field Q(v^{1/2}), stored as a reduced quotient
/// of Laurent polynomials. The denominator is normalized to have lowest
/// exponent 0 and positive leading coefficient, so representations are
/// canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentHalf,
    den: LaurentHalf,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: LaurentHalf::zero(), den: LaurentHalf::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: LaurentHalf::one(), den: LaurentHalf::one() }
    }

    pub fn int(n: i64) -> Self {
        RatFunc { num: LaurentHalf::int(n), den: LaurentHalf::one() }
    }

    pub fn v_pow(k: i64) -> Self {
        Self::from(LaurentHalf::v_pow(k))
    }

    pub fn v_half_pow(h: i64) -> Self {
        Self::from(LaurentHalf::v_half_pow(h))
    }

    pub fn new(num: LaurentHalf, den: LaurentHalf) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        let mut out = RatFunc { num, den };
        out.reduce();
        Ok(out)
    }

    pub fn numerator(&self) -> &LaurentHalf {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentHalf {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the reduced denominator is 1, i.e. the value lies in
    /// Z[v^{1/2}, v^{-1/2}].
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentHalf> {
        if self.is_laurent() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn bar(&self) -> Self {
        let mut out = RatFunc { num: self.num.bar(), den: self.den.bar() };
        out.reduce();
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Invalid("inverse of zero".into()));
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentHalf::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.exact_div(&g).expect("gcd divides numerator");
            self.den = self.den.exact_div(&g).expect("gcd divides denominator");
        }
        // Normalize the denominator to a unit-free representative and move the
        // extracted unit into the numerator.
        let lo = self.den.min_exp().unwrap();
        let mut unit_num: i64 = -lo;
        let mut negate = false;
        if self.den.lead_coeff() < BigInt::from(0) {
            negate = true;
        }
        self.den = self.den.shifted(-lo);
        if negate {
            self.den = -&self.den;
        }
        self.num = self.num.shifted(unit_num);
        unit_num = 0;
        let _ = unit_num;
        if negate {
            self.num = -&self.num;
        }
        // Shared integer content.
        let cn = self.num.content();
        let cd = self.den.content();
        let c = num_integer::gcd(cn, cd);
        if c > BigInt::from(1) {
            let cpoly = LaurentHalf::monomial_half(0, c);
            self.num = self.num.exact_div(&cpoly).expect("content divides");
            self.den = self.den.exact_div(&cpoly).expect("content divides");
        }
    }
}

impl From<LaurentHalf> for RatFunc {
    fn from(num: LaurentHalf) -> Self {
        RatFunc { num, den: LaurentHalf::one() }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        let num = &self.num * &rhs.num;
        let den = &self.den * &rhs.den;
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        let num = &self.num * &rhs.den;
        let den = &self.den * &rhs.num;
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &RatFunc) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&RatFunc> for RatFunc {
    fn mul_assign(&mut self, rhs: &RatFunc) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_is_canonical() {
        // (v - v^-1)^2 / (v - v^-1) == (v - v^-1)
        let c = &LaurentHalf::v_pow(1) - &LaurentHalf::v_pow(-1);
        let sq = &c * &c;
        let r = RatFunc::new(sq, c.clone()).unwrap();
        assert!(r.is_laurent());
        assert_eq!(r.as_laurent().unwrap(), &c);
    }

    #[test]
    fn field_ops() {
        let c = RatFunc::from(&LaurentHalf::v_pow(1) - &LaurentHalf::v_pow(-1));
        let inv = c.inverse().unwrap();
        assert!((&c * &inv).is_one());
        let x = &RatFunc::v_pow(2) + &RatFunc::int(3);
        assert_eq!(&(&x - &x), &RatFunc::zero());
    }
}
