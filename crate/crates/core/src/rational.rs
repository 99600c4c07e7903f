//! Exact rationals and extended valuations.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{CoreError, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn uint(n: u64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"a"`, `"-a"` or `"a/b"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || CoreError::Parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(CoreError::DivisionByZero);
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

/// Integer value of `r` if it is one and fits in an `i64`.
pub fn as_i64(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

pub fn as_u64(r: &Rat) -> Option<u64> {
    if r.is_integer() && !r.is_negative() {
        r.to_integer().to_u64()
    } else {
        None
    }
}

pub fn pow_u64(base: u64, exp: u64) -> Result<u64> {
    let e = u32::try_from(exp).map_err(|_| CoreError::Overflow(format!("{base}^{exp}")))?;
    base.checked_pow(e)
        .ok_or_else(|| CoreError::Overflow(format!("{base}^{exp}")))
}

/// `base^exp` as an exact rational, exponent allowed to be large.
pub fn rat_pow(base: u64, exp: u64) -> Rat {
    Rat::from_integer(num_traits::pow(BigInt::from(base), exp as usize))
}

/// Smallest prime factor; the characteristic of a field of order `q`.
pub fn char_of(q: u64) -> u64 {
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            return p;
        }
        p += 1;
    }
    q
}

/// True iff the prime `p` divides the integer `r`.
pub fn divides(p: u64, r: &Rat) -> bool {
    r.is_integer() && (r.to_integer() % BigInt::from(p)).is_zero()
}

/// A valuation value: an exact rational or `+∞` for the zero element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(Rat),
    Infinity,
}

impl Valuation {
    pub fn zero() -> Self {
        Valuation::Finite(Rat::zero())
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Valuation::Finite(r) => Some(r),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    /// Unwraps a finite value or reports what was being computed.
    pub fn expect_finite(&self, what: &str) -> Result<Rat> {
        self.finite()
            .cloned()
            .ok_or_else(|| CoreError::Degenerate(format!("{what} has infinite valuation")))
    }

    pub fn scale(&self, k: &Rat) -> Valuation {
        match self {
            Valuation::Finite(r) => Valuation::Finite(r * k),
            Valuation::Infinity => Valuation::Infinity,
        }
    }
}

impl From<Rat> for Valuation {
    fn from(r: Rat) -> Self {
        Valuation::Finite(r)
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
            (Valuation::Infinity, _) => Ordering::Greater,
            (_, Valuation::Infinity) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Valuation {
    type Output = Valuation;
    fn add(self, rhs: &Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(r) => write!(f, "{r}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `serialize_with` helpers that write rationals as `"a/b"` strings.
pub mod serde_rat {
    use super::Rat;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn one<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn opt<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn vec<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&r.to_string())?;
        }
        seq.end()
    }

    pub fn opt_vec<S: Serializer>(v: &Option<Vec<Rat>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => vec(v, s),
            None => s.serialize_none(),
        }
    }
}
