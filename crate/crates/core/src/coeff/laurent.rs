use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact Laurent polynomial in v^{1/2} with integer coefficients,
/// i.e. an element of Z[v^{1/2}, v^{-1/2}].
///
/// Exponents are stored in half units: the key `h` represents v^{h/2}.
/// Invariants: no stored coefficient is zero, so representations are
/// canonical and equality of values is equality of maps.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentHalf {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentHalf {
    pub fn zero() -> Self {
        LaurentHalf { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial_half(0, BigInt::one())
    }

    pub fn int(n: i64) -> Self {
        Self::monomial_half(0, BigInt::from(n))
    }

    /// c * v^{h/2}.
    pub fn monomial_half(h: i64, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(h, c);
        }
        LaurentHalf { terms }
    }

    /// v^{k} (integer power).
    pub fn v_pow(k: i64) -> Self {
        Self::monomial_half(2 * k, BigInt::one())
    }

    /// v^{h/2} (half-integer power in half units).
    pub fn v_half_pow(h: i64) -> Self {
        Self::monomial_half(h, BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn coeff_half(&self, h: i64) -> BigInt {
        self.terms.get(&h).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Lowest exponent in half units.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Highest exponent in half units.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Leading coefficient (at the highest exponent).
    pub fn lead_coeff(&self) -> BigInt {
        self.max_exp().map(|h| self.terms[&h].clone()).unwrap_or_else(BigInt::zero)
    }

    pub fn insert_add(&mut self, h: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(h).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&h);
        }
    }

    /// Multiply by v^{h/2}.
    pub fn shifted(&self, h: i64) -> Self {
        LaurentHalf {
            terms: self.terms.iter().map(|(k, c)| (k + h, c.clone())).collect(),
        }
    }

    /// The bar involution v^{1/2} -> v^{-1/2}, i.e. exponent negation.
    pub fn bar(&self) -> Self {
        LaurentHalf {
            terms: self.terms.iter().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// True when all coefficients are nonnegative, i.e. the value lies in
    /// N[v^{1/2}, v^{-1/2}].
    pub fn is_nonneg(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// True when the support uses only integer powers of v.
    pub fn is_integer_powers(&self) -> bool {
        self.terms.keys().all(|h| h % 2 == 0)
    }

    /// Strictly positive part of the support (exponents > 0 in half units).
    pub fn positive_part(&self) -> Self {
        LaurentHalf {
            terms: self.terms.iter().filter(|(h, _)| **h > 0).map(|(h, c)| (*h, c.clone())).collect(),
        }
    }

    /// Strictly negative part of the support.
    pub fn negative_part(&self) -> Self {
        LaurentHalf {
            terms: self.terms.iter().filter(|(h, _)| **h < 0).map(|(h, c)| (*h, c.clone())).collect(),
        }
    }

    /// Support restricted to exponents >= 2 half units (i.e. v*Z[v]).
    pub fn in_v_zv(&self) -> bool {
        self.terms.keys().all(|h| *h >= 2 && *h % 2 == 0)
    }

    /// Support restricted to exponents <= -2 half units (i.e. v^{-1}*Z[v^{-1}]).
    pub fn in_vinv_zvinv(&self) -> bool {
        self.terms.keys().all(|h| *h <= -2 && *h % 2 == 0)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division in Z[v^{1/2}, v^{-1/2}]. Errors with the remainder when
    /// the divisor does not divide self.
    pub fn exact_div(&self, q: &LaurentHalf) -> Result<LaurentHalf> {
        if q.is_zero() {
            return Err(Error::Invalid("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // Shift both operands so they are ordinary polynomials in x = v^{1/2}.
        let plo = self.min_exp().unwrap();
        let qlo = q.min_exp().unwrap();
        let pd = self.dense_from(plo);
        let qd = q.dense_from(qlo);
        let (quot, rem) = rational_divmod(&pd, &qd);
        if !rem.iter().all(|c| c.is_zero()) {
            let rem_l = LaurentHalf::from_dense(&rem, plo);
            return Err(Error::NonDivisible { remainder: rem_l.to_string() });
        }
        let mut out = LaurentHalf::zero();
        for (i, c) in quot.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !c.is_integer() {
                let rem_l = LaurentHalf::zero();
                let _ = rem_l;
                return Err(Error::NonDivisible { remainder: format!("non-integer quotient coefficient {c}") });
            }
            out.insert_add(plo - qlo + i as i64, c.to_integer());
        }
        Ok(out)
    }

    /// Greatest common divisor in Z[v^{1/2}, v^{-1/2}], up to units.
    /// The result is normalized: lowest exponent 0, positive leading coefficient.
    pub fn gcd(&self, other: &LaurentHalf) -> LaurentHalf {
        if self.is_zero() {
            return other.unit_normalized();
        }
        if other.is_zero() {
            return self.unit_normalized();
        }
        let a = self.dense_from(self.min_exp().unwrap());
        let b = other.dense_from(other.min_exp().unwrap());
        let g = poly_gcd(a, b);
        LaurentHalf::from_dense(&g, 0).unit_normalized()
    }

    /// Divide through by the unit +-v^{k/2} so that the lowest exponent is 0
    /// and the leading coefficient is positive.
    pub fn unit_normalized(&self) -> LaurentHalf {
        if self.is_zero() {
            return Self::zero();
        }
        let lo = self.min_exp().unwrap();
        let mut out = self.shifted(-lo);
        if out.lead_coeff().is_negative() {
            out = -&out;
        }
        out
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num_integer::gcd(g, c.abs());
        }
        g
    }

    fn dense_from(&self, lo: i64) -> Vec<BigRational> {
        let hi = self.max_exp().unwrap();
        let mut out = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (h, c) in &self.terms {
            out[(h - lo) as usize] = BigRational::from_integer(c.clone());
        }
        out
    }

    fn from_dense(d: &[BigRational], lo: i64) -> LaurentHalf {
        let mut out = LaurentHalf::zero();
        for (i, c) in d.iter().enumerate() {
            if !c.is_zero() {
                debug_assert!(c.is_integer());
                out.insert_add(lo + i as i64, c.to_integer());
            }
        }
        out
    }

    /// JSON form: array of [half_exponent, coefficient_string] pairs sorted by exponent.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(h, c)| serde_json::json!([h, c.to_string()]))
                .collect(),
        )
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::Invalid("coefficient JSON must be an array".into()))?;
        let mut out = Self::zero();
        for pair in arr {
            let pair = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Invalid("coefficient entry must be [exp, str]".into()))?;
            let h = pair[0]
                .as_i64()
                .ok_or_else(|| Error::Invalid("exponent must be an integer".into()))?;
            let c: BigInt = pair[1]
                .as_str()
                .ok_or_else(|| Error::Invalid("coefficient must be a string".into()))?
                .parse()
                .map_err(|_| Error::Invalid("bad integer literal in coefficient".into()))?;
            out.insert_add(h, c);
        }
        Ok(out)
    }
}

/// Long division over Q[x] on dense coefficient vectors (index = degree).
fn rational_divmod(p: &[BigRational], q: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let qdeg = q.len() - 1;
    let mut rem = p.to_vec();
    if p.len() < q.len() {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); p.len() - qdeg];
    for i in (0..quot.len()).rev() {
        let lead = rem[i + qdeg].clone();
        if lead.is_zero() {
            continue;
        }
        let c = lead / q[qdeg].clone();
        for (j, qc) in q.iter().enumerate() {
            let t = &c * qc;
            rem[i + j] -= t;
        }
        quot[i] = c;
    }
    (quot, rem)
}

/// Primitive-PRS gcd over Z[x] (computed with rational arithmetic, result primitive).
fn poly_gcd(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    let trim = |v: &mut Vec<BigRational>| {
        while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
    };
    let content_a = integer_content(&a);
    let content_b = integer_content(&b);
    let content_g = num_integer::gcd(content_a, content_b);
    trim(&mut a);
    trim(&mut b);
    primitive(&mut a);
    primitive(&mut b);
    while !(b.len() == 1 && b[0].is_zero()) {
        let (_, mut r) = rational_divmod(&a, &b);
        trim(&mut r);
        primitive(&mut r);
        a = b;
        b = r;
    }
    for c in a.iter_mut() {
        *c *= BigRational::from_integer(content_g.clone());
    }
    a
}

fn integer_content(v: &[BigRational]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        debug_assert!(c.is_integer());
        g = num_integer::gcd(g, c.to_integer().abs());
    }
    g
}

/// Scale a rational polynomial to a primitive integer polynomial.
fn primitive(v: &mut Vec<BigRational>) {
    let mut den = BigInt::one();
    for c in v.iter() {
        den = num_integer::lcm(den, c.denom().clone());
    }
    let mut num = BigInt::zero();
    for c in v.iter() {
        num = num_integer::gcd(num, (c * BigRational::from_integer(den.clone())).to_integer().abs());
    }
    if num.is_zero() {
        return;
    }
    let scale = BigRational::new(den, num);
    for c in v.iter_mut() {
        *c *= scale.clone();
    }
}

impl fmt::Display for LaurentHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (h, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vpart = match *h {
                0 => None,
                2 => Some("v".to_string()),
                h if h % 2 == 0 => Some(format!("v^{}", fmt_exp(h / 2))),
                h => Some(format!("v^({}/2)", h)),
            };
            match (abs.is_one(), vpart) {
                (true, None) => write!(f, "1")?,
                (false, None) => write!(f, "{abs}")?,
                (true, Some(vp)) => write!(f, "{vp}")?,
                (false, Some(vp)) => write!(f, "{abs}*{vp}")?,
            }
        }
        Ok(())
    }
}

fn fmt_exp(k: i64) -> String {
    if k < 0 {
        format!("({k})")
    } else {
        format!("{k}")
    }
}

impl fmt::Debug for LaurentHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &LaurentHalf {
    type Output = LaurentHalf;
    fn add(self, rhs: &LaurentHalf) -> LaurentHalf {
        let mut out = self.clone();
        for (h, c) in &rhs.terms {
            out.insert_add(*h, c.clone());
        }
        out
    }
}

impl Sub for &LaurentHalf {
    type Output = LaurentHalf;
    fn sub(self, rhs: &LaurentHalf) -> LaurentHalf {
        let mut out = self.clone();
        for (h, c) in &rhs.terms {
            out.insert_add(*h, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentHalf {
    type Output = LaurentHalf;
    fn mul(self, rhs: &LaurentHalf) -> LaurentHalf {
        let mut out = LaurentHalf::zero();
        for (h1, c1) in &self.terms {
            for (h2, c2) in &rhs.terms {
                out.insert_add(h1 + h2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentHalf {
    type Output = LaurentHalf;
    fn neg(self) -> LaurentHalf {
        LaurentHalf {
            terms: self.terms.iter().map(|(h, c)| (*h, -c.clone())).collect(),
        }
    }
}

impl AddAssign<&LaurentHalf> for LaurentHalf {
    fn add_assign(&mut self, rhs: &LaurentHalf) {
        for (h, c) in &rhs.terms {
            self.insert_add(*h, c.clone());
        }
    }
}

impl SubAssign<&LaurentHalf> for LaurentHalf {
    fn sub_assign(&mut self, rhs: &LaurentHalf) {
        for (h, c) in &rhs.terms {
            self.insert_add(*h, -c.clone());
        }
    }
}

impl MulAssign<&LaurentHalf> for LaurentHalf {
    fn mul_assign(&mut self, rhs: &LaurentHalf) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lh(pairs: &[(i64, i64)]) -> LaurentHalf {
        let mut out = LaurentHalf::zero();
        for (h, c) in pairs {
            out.insert_add(*h, BigInt::from(*c));
        }
        out
    }

    #[test]
    fn display_matches_text_form() {
        // v^2 + 2 + v^(-2)
        let p = lh(&[(4, 1), (0, 2), (-4, 1)]);
        assert_eq!(p.to_string(), "v^2 + 2 + v^(-2)");
        let q = lh(&[(1, 2), (2, 1)]);
        assert_eq!(q.to_string(), "v + 2*v^(1/2)");
        assert_eq!(LaurentHalf::zero().to_string(), "0");
    }

    #[test]
    fn bar_negates_exponents() {
        let p = lh(&[(2, 1), (1, 2)]);
        assert_eq!(p.bar(), lh(&[(-2, 1), (-1, 2)]));
        assert_eq!(p.bar().bar(), p);
        assert_eq!(LaurentHalf::zero().bar(), LaurentHalf::zero());
    }

    #[test]
    fn exact_div_works() {
        // [4]/[2] = v^2 + v^-2
        let p = lh(&[(6, 1), (2, 1), (-2, 1), (-6, 1)]);
        let q = lh(&[(2, 1), (-2, 1)]);
        assert_eq!(p.exact_div(&q).unwrap(), lh(&[(4, 1), (-4, 1)]));
        // unit divisor
        assert_eq!(p.exact_div(&LaurentHalf::one()).unwrap(), p);
        // [3]/[2] is not divisible
        let three = lh(&[(4, 1), (0, 1), (-4, 1)]);
        assert!(matches!(three.exact_div(&q), Err(Error::NonDivisible { .. })));
    }

    #[test]
    fn gcd_basic() {
        let p = lh(&[(2, 1), (-2, 1)]); // [2]
        let prod = &p * &lh(&[(4, 1), (0, 1), (-4, 1)]);
        let g = prod.gcd(&p);
        assert_eq!(g, p.unit_normalized());
    }
}
