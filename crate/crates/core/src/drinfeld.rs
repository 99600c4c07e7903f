//! Twisted polynomials, Drinfeld modules, j-invariants and reduction data.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{parse_ratfunc, Field, Fq, Place, PolyA, RatFunc};
use crate::error::{CoreError, Result};
use crate::rational::{rat_pow, uint, Rat, Valuation};

/// `Σ c_i τ^i` with `τ c = c^q τ`.
#[derive(Clone, PartialEq, Eq)]
pub struct TwistedPoly {
    field: Field,
    coeffs: Vec<RatFunc>,
}

impl TwistedPoly {
    pub fn new(field: &Field, mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TwistedPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn constant(c: RatFunc) -> Self {
        let f = c.field().clone();
        Self::new(&f, vec![c])
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(RatFunc::one(field))
    }

    pub fn tau(field: &Field) -> Self {
        Self::new(field, vec![RatFunc::zero(field), RatFunc::one(field)])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs.get(i).cloned().unwrap_or_else(|| RatFunc::zero(&self.field))
    }

    pub fn tau_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &TwistedPoly) -> TwistedPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(&self.field, (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn scale(&self, c: Fq) -> TwistedPoly {
        Self::new(&self.field, self.coeffs.iter().map(|x| x.scale(c)).collect())
    }

    /// Coefficient at `τ^k` is `Σ_{i+j=k} f_i · g_j^{q^i}`.
    pub fn skew_mul(&self, g: &TwistedPoly) -> TwistedPoly {
        if self.is_zero() || g.is_zero() {
            return Self::zero(&self.field);
        }
        let n = self.coeffs.len() + g.coeffs.len() - 1;
        let mut out = vec![RatFunc::zero(&self.field); n];
        for (i, fi) in self.coeffs.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, gj) in g.coeffs.iter().enumerate() {
                if gj.is_zero() {
                    continue;
                }
                let term = fi * &gj.frobenius(i as u32);
                out[i + j] = &out[i + j] + &term;
            }
        }
        Self::new(&self.field, out)
    }

    /// Evaluates the additive polynomial `Σ c_i x^{q^i}`.
    pub fn eval(&self, x: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero(&self.field);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(c * &x.frobenius(i as u32));
            }
        }
        acc
    }

    pub fn valuations(&self, w: &Place) -> Vec<Valuation> {
        self.coeffs.iter().map(|c| w.valuation(c)).collect()
    }
}

impl fmt::Display for TwistedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl fmt::Debug for TwistedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistedPoly{self}")
    }
}

/// Rank-`r` Drinfeld module determined by `φ_t = t + a_1 τ + ... + a_r τ^r`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DrinfeldModule {
    field: Field,
    phi_t: TwistedPoly,
}

/// Stable-model data at a finite place.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ReductionProfile {
    pub place: Place,
    pub stable: bool,
    pub reduced_rank: usize,
    #[serde(serialize_with = "crate::rational::serde_rat::one")]
    pub twist_valuation: Rat,
}

impl DrinfeldModule {
    pub fn new(field: &Field, coeffs: Vec<RatFunc>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(CoreError::InvalidModule("rank must be at least 1".into()));
        }
        if coeffs[0] != RatFunc::t(field) {
            return Err(CoreError::InvalidModule("constant coefficient must be t".into()));
        }
        if coeffs.last().unwrap().is_zero() {
            return Err(CoreError::InvalidModule("leading coefficient must be nonzero".into()));
        }
        Ok(DrinfeldModule { field: field.clone(), phi_t: TwistedPoly::new(field, coeffs) })
    }

    /// From coefficient strings `[c_0, ..., c_r]`.
    pub fn parse(field: &Field, coeffs: &[&str]) -> Result<Self> {
        let cs = coeffs.iter().map(|s| parse_ratfunc(field, s)).collect::<Result<Vec<_>>>()?;
        Self::new(field, cs)
    }

    pub fn carlitz(field: &Field) -> Self {
        Self::new(field, vec![RatFunc::t(field), RatFunc::one(field)]).expect("valid")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn rank(&self) -> usize {
        self.phi_t.tau_degree().unwrap()
    }

    pub fn phi_t(&self) -> &TwistedPoly {
        &self.phi_t
    }

    /// `a_i`, the coefficient of `τ^i` in `φ_t`.
    pub fn a(&self, i: usize) -> RatFunc {
        self.phi_t.coeff(i)
    }

    /// `φ_a = Σ α_i φ_t^i`, powers by iterated skew products.
    pub fn phi_of(&self, a: &PolyA) -> TwistedPoly {
        let mut acc = TwistedPoly::zero(&self.field);
        let mut power = TwistedPoly::one(&self.field);
        let deg = a.degree().unwrap_or(0);
        for (i, &alpha) in a.coeffs().iter().enumerate() {
            if !alpha.is_zero() {
                acc = acc.add(&power.scale(alpha));
            }
            if i < deg {
                power = power.skew_mul(&self.phi_t);
            }
        }
        acc
    }

    /// `Some((s, r))` when `φ_t` has nonzero coefficients only at `τ^0, τ^s, τ^r`.
    pub fn two_term_shape(&self) -> Option<(usize, usize)> {
        let r = self.rank();
        let mids: Vec<usize> = (1..r).filter(|&i| !self.a(i).is_zero()).collect();
        match mids.as_slice() {
            [s] => Some((*s, r)),
            _ => None,
        }
    }

    /// `a_1^{q+1} / a_2`.
    pub fn j_invariant(&self) -> Result<RatFunc> {
        if self.rank() != 2 {
            return Err(CoreError::InvalidModule(format!(
                "j-invariant needs rank 2, got {}",
                self.rank()
            )));
        }
        (self.a(1).pow(self.q() + 1)).div(&self.a(2))
    }

    /// `w(j)` for rank 2 or two-term shapes, computed from coefficient valuations.
    pub fn j_valuation(&self, w: &Place) -> Result<Valuation> {
        let (s, r) = match (self.rank(), self.two_term_shape()) {
            (2, _) => (1, 2),
            (_, Some(sr)) => sr,
            _ => {
                return Err(CoreError::UnsupportedShape(
                    "j-invariant needs rank 2 or a two-term φ_t".into(),
                ))
            }
        };
        let q = self.q();
        let ws = w.valuation(&self.a(s));
        let wr = w.val(&self.a(r))?;
        let Valuation::Finite(ws) = ws else { return Ok(Valuation::Infinity) };
        let qm1 = uint(q - 1);
        let er = (rat_pow(q, r as u64) - Rat::one()) / &qm1;
        let es = (rat_pow(q, s as u64) - Rat::one()) / &qm1;
        Ok(Valuation::Finite(ws * er - wr * es))
    }

    /// Finds the stable model: `r′` is the largest index minimizing
    /// `w(a_i)/(q^i − 1)` and the twist valuation is that minimum.
    pub fn reduction_profile(&self, w: &Place) -> Result<ReductionProfile> {
        if w.is_infinite() {
            return Err(CoreError::InfinitePlace);
        }
        let q = self.q();
        let mut best: Option<(Rat, usize)> = None;
        for i in 1..=self.rank() {
            let Valuation::Finite(v) = w.valuation(&self.a(i)) else { continue };
            let ratio = v / (rat_pow(q, i as u64) - Rat::one());
            if best.as_ref().is_none_or(|(b, _)| ratio <= *b) {
                best = Some((ratio, i));
            }
        }
        let (beta, r_prime) = best.expect("leading coefficient nonzero");
        Ok(ReductionProfile {
            place: w.clone(),
            stable: beta.is_integer(),
            reduced_rank: r_prime,
            twist_valuation: beta,
        })
    }
}

/// Coefficient valuations of `b P b^{-1}` for `w(b) = beta`: `w(c_k) − (q^k − 1)β`.
pub fn twisted_valuations(vals: &[Valuation], q: u64, beta: &Rat) -> Vec<Valuation> {
    if beta.is_zero() {
        return vals.to_vec();
    }
    vals.iter()
        .enumerate()
        .map(|(k, v)| match v {
            Valuation::Finite(x) => {
                Valuation::Finite(x - (rat_pow(q, k as u64) - Rat::one()) * beta)
            }
            Valuation::Infinity => Valuation::Infinity,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FqField;
    use crate::rational::int;

    #[test]
    fn carlitz_square() {
        let f = FqField::prime(2).unwrap();
        let c = DrinfeldModule::carlitz(&f);
        let t2 = PolyA::t(&f).pow(2);
        assert_eq!(c.phi_of(&t2).to_string(), "[t^2, t^2+t, 1]");
        let tc = TwistedPoly::tau(&f).skew_mul(&TwistedPoly::constant(RatFunc::t(&f)));
        assert_eq!(tc.to_string(), "[0, t^2]");
    }

    #[test]
    fn phi_of_t_plus_one() {
        let f = FqField::prime(2).unwrap();
        let phi = DrinfeldModule::parse(&f, &["t", "t", "1"]).unwrap();
        let a = PolyA::from_ints(&f, &[1, 1]);
        assert_eq!(phi.phi_of(&a).to_string(), "[t+1, t, 1]");
        assert_eq!(phi.phi_of(&PolyA::one(&f)).to_string(), "[1]");
    }

    #[test]
    fn j_invariants() {
        let f = FqField::prime(2).unwrap();
        let phi = DrinfeldModule::parse(&f, &["t", "t", "1"]).unwrap();
        assert_eq!(phi.j_invariant().unwrap().to_string(), "t^3");
        let psi = DrinfeldModule::parse(&f, &["t", "1", "t"]).unwrap();
        assert_eq!(psi.j_invariant().unwrap().to_string(), "1/t");
    }

    #[test]
    fn reduction_profiles() {
        let f = FqField::prime(2).unwrap();
        let at_t = Place::finite(PolyA::t(&f)).unwrap();
        let bad = DrinfeldModule::parse(&f, &["t", "1", "t"]).unwrap();
        let rp = bad.reduction_profile(&at_t).unwrap();
        assert_eq!((rp.stable, rp.reduced_rank, rp.twist_valuation), (true, 1, int(0)));
        let good = DrinfeldModule::parse(&f, &["t", "1", "1"]).unwrap();
        let rp = good.reduction_profile(&at_t).unwrap();
        assert_eq!((rp.reduced_rank, rp.twist_valuation), (2, int(0)));
        assert_eq!(good.reduction_profile(&Place::Infinite), Err(CoreError::InfinitePlace));
    }
}
