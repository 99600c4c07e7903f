//! Dense polynomials in A = 𝔽_q[t], ascending coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Fq};
use crate::error::{CoreError, Result};

#[derive(Clone)]
pub struct PolyA {
    field: Field,
    coeffs: Vec<Fq>,
}

impl PolyA {
    pub fn new(field: &Field, mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyA { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Self {
        PolyA { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, Fq::ONE)
    }

    pub fn t(field: &Field) -> Self {
        Self::monomial(field, Fq::ONE, 1)
    }

    pub fn constant(field: &Field, c: Fq) -> Self {
        Self::new(field, vec![c])
    }

    pub fn monomial(field: &Field, c: Fq, e: usize) -> Self {
        let mut v = vec![Fq::ZERO; e + 1];
        v[e] = c;
        Self::new(field, v)
    }

    /// Coefficients given as integers in the prime subfield.
    pub fn from_ints(field: &Field, c: &[i64]) -> Self {
        Self::new(field, c.iter().map(|&x| field.from_int(x)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }

    /// `None` stands for deg 0 = -∞.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fq::ONE
    }

    pub fn lead(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Fq::ONE
    }

    pub fn is_t(&self) -> bool {
        self.coeffs.len() == 2 && self.coeffs[0].is_zero() && self.coeffs[1] == Fq::ONE
    }

    pub fn nonzero_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn scale(&self, c: Fq) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.field.inv(self.lead()) {
            Ok(i) => self.scale(i),
            Err(_) => self.clone(),
        }
    }

    /// `(quotient, remainder)` with `deg(rem) < deg(b)`.
    pub fn divrem(&self, b: &PolyA) -> Result<(PolyA, PolyA)> {
        let db = b.degree().ok_or(CoreError::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv(b.lead())?;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![Fq::ZERO; r.len() - db];
        for top in (db..r.len()).rev() {
            let c = r[top];
            if c.is_zero() {
                continue;
            }
            let m = f.mul(c, lead_inv);
            quot[top - db] = m;
            for (i, &bi) in b.coeffs.iter().enumerate() {
                if !bi.is_zero() {
                    let j = top - db + i;
                    r[j] = f.sub(r[j], f.mul(m, bi));
                }
            }
        }
        r.truncate(db);
        Ok((Self::new(f, quot), Self::new(f, r)))
    }

    pub fn rem(&self, b: &PolyA) -> Result<PolyA> {
        Ok(self.divrem(b)?.1)
    }

    /// Exact quotient; errors if `b` does not divide `self`.
    pub fn div_exact(&self, b: &PolyA) -> Result<PolyA> {
        let (q, r) = self.divrem(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(CoreError::Inconsistent("inexact polynomial division".into()))
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, b: &PolyA) -> PolyA {
        let mut a = self.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, mut e: u64) -> PolyA {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^(q^i)`: coefficients lie in 𝔽_q so only exponents spread.
    pub fn frobenius(&self, i: u32) -> PolyA {
        if i == 0 || self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let step = (self.field.q() as usize).pow(i);
        let mut v = vec![Fq::ZERO; (self.coeffs.len() - 1) * step + 1];
        for (j, &c) in self.coeffs.iter().enumerate() {
            v[j * step] = c;
        }
        PolyA { field: self.field.clone(), coeffs: v }
    }

    /// Evaluation at an element of 𝔽_q.
    pub fn eval(&self, x: Fq) -> Fq {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Fq::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Multiplicity of the irreducible `p` in `self` (nonzero).
    pub fn ord(&self, p: &PolyA) -> Result<u64> {
        if self.is_zero() {
            return Err(CoreError::Degenerate("order of the zero polynomial".into()));
        }
        if p.is_t() {
            return Ok(self.coeffs.iter().take_while(|c| c.is_zero()).count() as u64);
        }
        let mut n = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(p)?;
            if !r.is_zero() {
                return Ok(n);
            }
            n += 1;
            cur = q;
        }
    }

    /// Trial division by every monic polynomial of degree at most half.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        (1..=d / 2).all(|k| {
            monic_of_degree(&self.field, k).all(|g| !self.rem(&g).expect("monic divisor").is_zero())
        })
    }

    /// Monic irreducible factors with multiplicity, by trial division.
    pub fn factor(&self) -> Result<Vec<(PolyA, u64)>> {
        if self.is_zero() {
            return Err(CoreError::Degenerate("factoring zero".into()));
        }
        let mut rest = self.monic();
        let mut out = Vec::new();
        let mut k = 1;
        while rest.degree().unwrap_or(0) >= 2 * k {
            for g in monic_of_degree(&self.field, k) {
                let mut e = 0;
                loop {
                    let (q, r) = rest.divrem(&g)?;
                    if !r.is_zero() {
                        break;
                    }
                    rest = q;
                    e += 1;
                }
                if e > 0 {
                    out.push((g, e));
                }
            }
            k += 1;
        }
        if rest.degree().unwrap_or(0) > 0 {
            out.push((rest, 1));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            let cs = self.field.fmt_elem(c);
            terms.push(match (c == Fq::ONE, mono.is_empty()) {
                (_, true) => cs,
                (true, false) => mono,
                (false, false) => format!("{cs}*{mono}"),
            });
        }
        terms.join("+")
    }
}

/// All monic polynomials of degree exactly `d`, in code order.
pub fn monic_of_degree(field: &Field, d: usize) -> impl Iterator<Item = PolyA> + '_ {
    let q = field.q() as u64;
    let count = q.pow(d as u32);
    (0..count).map(move |code| {
        let mut c = code;
        let mut v = Vec::with_capacity(d + 1);
        for _ in 0..d {
            v.push(field.element((c % q) as u32));
            c /= q;
        }
        v.push(Fq::ONE);
        PolyA::new(field, v)
    })
}

/// All polynomials of degree `< d` (including zero), in code order.
pub fn all_below_degree(field: &Field, d: usize) -> impl Iterator<Item = PolyA> + '_ {
    let q = field.q() as u64;
    (0..q.pow(d as u32)).map(move |code| {
        let mut c = code;
        let mut v = Vec::with_capacity(d);
        for _ in 0..d {
            v.push(field.element((c % q) as u32));
            c /= q;
        }
        PolyA::new(field, v)
    })
}

impl PartialEq for PolyA {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for PolyA {}

impl Hash for PolyA {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for PolyA {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for PolyA {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PolyA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("t"))
    }
}

impl fmt::Debug for PolyA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyA({self})")
    }
}

impl Add for &PolyA {
    type Output = PolyA;
    fn add(self, rhs: &PolyA) -> PolyA {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyA::new(f, (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Sub for &PolyA {
    type Output = PolyA;
    fn sub(self, rhs: &PolyA) -> PolyA {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyA::new(f, (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Neg for &PolyA {
    type Output = PolyA;
    fn neg(self) -> PolyA {
        let f = &self.field;
        PolyA::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &PolyA {
    type Output = PolyA;
    /// Schoolbook product driven by the sparser operand's nonzero terms.
    fn mul(self, rhs: &PolyA) -> PolyA {
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return PolyA::zero(f);
        }
        let (sparse, dense) = if self.nonzero_terms() <= rhs.nonzero_terms() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = vec![Fq::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in sparse.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in dense.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        PolyA::new(f, out)
    }
}
