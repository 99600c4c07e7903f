//! Places of 𝔽_q(t) and their normalized valuations.

use std::fmt;

use num_bigint::BigInt;

use super::poly::PolyA;
use super::ratfunc::RatFunc;
use crate::error::{CoreError, Result};
use crate::rational::{Rat, Valuation};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Place {
    Infinite,
    Finite(PolyA),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaceKind {
    Infinite,
    Finite,
}

impl Place {
    /// A finite place from a monic irreducible polynomial.
    pub fn finite(u: PolyA) -> Result<Place> {
        if !u.is_monic() || !u.is_irreducible() {
            return Err(CoreError::NotIrreducible(format!("place {u} must be monic irreducible")));
        }
        Ok(Place::Finite(u))
    }

    pub fn kind(&self) -> PlaceKind {
        match self {
            Place::Infinite => PlaceKind::Infinite,
            Place::Finite(_) => PlaceKind::Finite,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinite)
    }

    pub fn uniformizer(&self) -> Option<&PolyA> {
        match self {
            Place::Infinite => None,
            Place::Finite(u) => Some(u),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Infinite => 1,
            Place::Finite(u) => u.degree().expect("nonzero uniformizer"),
        }
    }

    pub fn valuation_poly(&self, a: &PolyA) -> Valuation {
        if a.is_zero() {
            return Valuation::Infinity;
        }
        let v: i64 = match self {
            Place::Infinite => -(a.degree().unwrap() as i64),
            Place::Finite(u) => a.ord(u).expect("nonzero") as i64,
        };
        Valuation::Finite(Rat::from_integer(BigInt::from(v)))
    }

    pub fn valuation(&self, x: &RatFunc) -> Valuation {
        if x.is_zero() {
            return Valuation::Infinity;
        }
        let v: i64 = match self {
            Place::Infinite => {
                x.den().degree().unwrap() as i64 - x.num().degree().unwrap() as i64
            }
            Place::Finite(u) => {
                x.num().ord(u).expect("nonzero") as i64 - x.den().ord(u).expect("nonzero") as i64
            }
        };
        Valuation::Finite(Rat::from_integer(BigInt::from(v)))
    }

    /// Valuation of a nonzero element as an exact rational.
    pub fn val(&self, x: &RatFunc) -> Result<Rat> {
        self.valuation(x).expect_finite("argument")
    }

    /// True iff the place divides the polynomial `u`.
    pub fn divides(&self, u: &PolyA) -> bool {
        match self {
            Place::Infinite => false,
            Place::Finite(w) => u.rem(w).is_ok_and(|r| r.is_zero()),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => f.write_str("infinite"),
            Place::Finite(u) => write!(f, "({u})"),
        }
    }
}

impl serde::Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FqField;
    use crate::rational::int;

    #[test]
    fn valuations() {
        let f = FqField::prime(2).unwrap();
        let t = PolyA::t(&f);
        let t1 = PolyA::from_ints(&f, &[1, 1]);
        assert_eq!(Place::Infinite.valuation_poly(&t.pow(3)), Valuation::Finite(int(-3)));
        let x = RatFunc::new(t.clone(), t1).unwrap();
        let at_t = Place::finite(t).unwrap();
        assert_eq!(at_t.valuation(&x), Valuation::Finite(int(1)));
        assert_eq!(at_t.valuation(&RatFunc::zero(&f)), Valuation::Infinity);
        assert!(Place::finite(PolyA::from_ints(&f, &[0, 1, 1])).is_err());
    }
}
