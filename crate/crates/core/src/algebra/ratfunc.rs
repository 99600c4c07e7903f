//! Elements of F = 𝔽_q(t) as reduced fractions with monic denominators.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Fq};
use super::poly::PolyA;
use crate::error::{CoreError, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: PolyA,
    den: PolyA,
}

impl RatFunc {
    pub fn new(num: PolyA, den: PolyA) -> Result<Self> {
        if den.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(num.field()));
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let li = num.field().inv(den.lead())?;
        Ok(RatFunc { num: num.scale(li), den: den.scale(li) })
    }

    pub fn from_poly(p: PolyA) -> Self {
        let den = PolyA::one(p.field());
        RatFunc { num: p, den }
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_poly(PolyA::zero(field))
    }

    pub fn one(field: &Field) -> Self {
        Self::from_poly(PolyA::one(field))
    }

    pub fn t(field: &Field) -> Self {
        Self::from_poly(PolyA::t(field))
    }

    pub fn constant(field: &Field, c: Fq) -> Self {
        Self::from_poly(PolyA::constant(field, c))
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &PolyA {
        &self.num
    }

    pub fn den(&self) -> &PolyA {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&PolyA> {
        self.is_poly().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u64) -> RatFunc {
        // Powers of reduced fractions stay reduced.
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// `self^(q^i)`.
    pub fn frobenius(&self, i: u32) -> RatFunc {
        RatFunc { num: self.num.frobenius(i), den: self.den.frobenius(i) }
    }

    pub fn scale(&self, c: Fq) -> RatFunc {
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &PolyA| {
            if p.nonzero_terms() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_poly() && rhs.is_poly() {
            return RatFunc::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero den");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).expect("nonzero den")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
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
        if self.is_poly() && rhs.is_poly() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let split = |a: &PolyA, g: &PolyA| {
            if g.is_zero() || g.degree() == Some(0) {
                a.clone()
            } else {
                a.div_exact(g).expect("gcd divides")
            }
        };
        let num = &split(&self.num, &g1) * &split(&rhs.num, &g2);
        let den = &split(&self.den, &g2) * &split(&rhs.den, &g1);
        RatFunc::new(num, den).expect("nonzero den")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FqField;

    #[test]
    fn reduces_and_prints() {
        let f = FqField::prime(2).unwrap();
        let t = PolyA::t(&f);
        let t1 = PolyA::from_ints(&f, &[1, 1]);
        let x = RatFunc::new(&t * &t1, &t1 * &t1).unwrap();
        assert_eq!(x.to_string(), "t/(t+1)");
        let y = RatFunc::new(PolyA::from_ints(&f, &[1, 0, 1]), t1.clone()).unwrap();
        assert_eq!(y.to_string(), "t+1");
        let z = RatFunc::new(PolyA::one(&f), t.clone()).unwrap();
        assert_eq!(z.to_string(), "1/t");
    }

    #[test]
    fn field_operations() {
        let f = FqField::prime(3).unwrap();
        let a = RatFunc::new(PolyA::from_ints(&f, &[1, 1]), PolyA::from_ints(&f, &[0, 2])).unwrap();
        let b = RatFunc::new(PolyA::from_ints(&f, &[2, 0, 1]), PolyA::from_ints(&f, &[1, 1])).unwrap();
        let s = &a + &b;
        assert_eq!(&s - &b, a);
        let p = &a * &b;
        assert_eq!(p.div(&b).unwrap(), a);
        assert!(RatFunc::zero(&f).inv().is_err());
        assert!(a.den().is_monic());
    }
}
