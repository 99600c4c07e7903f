//! Closed-form SMB valuations for rank 2 and two-term `φ_t`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::lattice::LatticeModel;
use crate::rational::{rat_pow, uint, Rat, Valuation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Infinite place, `w(j)` below the threshold; carries `m`.
    Case1,
    /// Infinite place, `w(j)` at or above the threshold.
    Case2,
    FiniteBad,
    FiniteGood,
}

/// Where a rank-2 closed form is evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rank2Place {
    /// `w0 = w(t) < 0`.
    Infinite { w0: Rat },
    /// Coefficients already twisted to a stable model; `u_valuation = w(u)`.
    Finite { u_valuation: Rat },
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Xi {
    w0: Rat,
    w1: Rat,
    w2: Rat,
    q: u64,
    m: Option<u64>,
}

impl Xi {
    /// `w(ξ_{i,k})` for the rank-2 infinite-place tables.
    fn at(&self, i: usize, k: u64) -> Rat {
        let q = self.q;
        let qm1 = uint(q - 1);
        let kk = uint(k);
        match (self.m, i) {
            (Some(_), 0) => -(&self.w0 * (&kk - Rat::one()) + (&self.w1 - &self.w0) / &qm1),
            (Some(m), _) => {
                let head = |k: u64| {
                    -(&self.w2 + &self.w1 * (rat_pow(q, k) - uint(q) - Rat::one())) / (&qm1 * rat_pow(q, k))
                };
                if k <= m {
                    head(k)
                } else {
                    &self.w0 * (uint(m) - &kk) + head(m)
                }
            }
            (None, _) => {
                -(&self.w0 * (&kk - Rat::one()) + (&self.w2 - &self.w0) / (rat_pow(q, 2) - Rat::one()))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    pub branch: Branch,
    pub m: Option<u64>,
    pub w_j: Valuation,
    /// `w(j)` sits exactly on a closed end of its interval.
    pub on_boundary: bool,
    pub lattice: LatticeModel,
    /// Valuations of the good-reduction part at a finite place.
    #[serde(serialize_with = "crate::rational::serde_rat::vec")]
    pub good_part: Vec<Rat>,
    /// Level-`n` SMB valuations, when the closed form covers that level.
    #[serde(serialize_with = "crate::rational::serde_rat::opt_vec")]
    pub lambda: Option<Vec<Rat>>,
    #[serde(skip)]
    xi: Option<Xi>,
}

impl ClosedForm {
    /// `w(ξ_{i,k})`, defined for rank 2 at the infinite place.
    pub fn xi(&self, i: usize, k: u64) -> Option<Rat> {
        self.xi.as_ref().filter(|_| i < 2).map(|x| x.at(i, k))
    }
}

fn check_common(q: u64, d: u64, n: u64) -> Result<()> {
    if q < 2 || d == 0 || n == 0 {
        return Err(CoreError::InvalidModule(format!("need q ≥ 2, d ≥ 1, n ≥ 1 (got {q}, {d}, {n})")));
    }
    Ok(())
}

/// Rank 2 with `w(a_1) = w1` (possibly `∞`) and `w(a_2) = w2`.
pub fn closed_form_rank2(
    place: &Rank2Place,
    w1: &Valuation,
    w2: &Rat,
    q: u64,
    d: u64,
    n: u64,
) -> Result<ClosedForm> {
    check_common(q, d, n)?;
    let nd = n * d;
    let qm1 = uint(q - 1);
    let w_j = match w1 {
        Valuation::Finite(a) => Valuation::Finite(a * uint(q + 1) - w2),
        Valuation::Infinity => Valuation::Infinity,
    };
    match place {
        Rank2Place::Infinite { w0 } => {
            if !w0.is_negative() {
                return Err(CoreError::InvalidModule(format!("w(t) = {w0} must be negative")));
            }
            let threshold = w0 * uint(q);
            match (&w_j, w1) {
                (Valuation::Finite(wj), Valuation::Finite(w1)) if *wj < threshold => {
                    let mut m = 1u64;
                    while *wj <= w0 * rat_pow(q, m + 1) {
                        m += 1;
                    }
                    let on_boundary = *wj == w0 * rat_pow(q, m);
                    let omega1 = w0 + (w0 - w1) / &qm1;
                    let omega2 = w0 * uint(m) + wj / (&qm1 * rat_pow(q, m)) - w1 / &qm1;
                    let xi = Xi { w0: w0.clone(), w1: w1.clone(), w2: w2.clone(), q, m: Some(m) };
                    let lambda = vec![xi.at(0, nd), xi.at(1, nd)];
                    Ok(ClosedForm {
                        branch: Branch::Case1,
                        m: Some(m),
                        on_boundary,
                        lattice: LatticeModel::infinite(q, vec![omega1, omega2]),
                        good_part: vec![],
                        lambda: Some(lambda),
                        xi: Some(xi),
                        w_j,
                    })
                }
                _ => {
                    let omega = w0 + (w0 - w2) / (rat_pow(q, 2) - Rat::one());
                    let xi = Xi { w0: w0.clone(), w1: Rat::zero(), w2: w2.clone(), q, m: None };
                    let l = xi.at(0, nd);
                    Ok(ClosedForm {
                        branch: Branch::Case2,
                        m: None,
                        on_boundary: w_j == Valuation::Finite(threshold),
                        lattice: LatticeModel::infinite(q, vec![omega.clone(), omega]),
                        good_part: vec![],
                        lambda: Some(vec![l.clone(), l]),
                        xi: Some(xi),
                        w_j,
                    })
                }
            }
        }
        Rank2Place::Finite { u_valuation } => {
            let w1_zero = w1.finite().is_some_and(|v| v.is_zero());
            if w1_zero && w2.is_positive() {
                let wj = w_j.expect_finite("w(j)")?;
                let good = if u_valuation.is_zero() {
                    Rat::zero()
                } else {
                    u_valuation / ((rat_pow(q, d) - Rat::one()) * rat_pow(q, (n - 1) * d))
                };
                let omega0 = &wj / &qm1;
                let lambda2 = &omega0 / rat_pow(q, nd);
                Ok(ClosedForm {
                    branch: Branch::FiniteBad,
                    m: None,
                    on_boundary: false,
                    lattice: LatticeModel::tate(q, 1, vec![omega0])?,
                    good_part: vec![good.clone()],
                    lambda: Some(vec![good, lambda2]),
                    xi: None,
                    w_j,
                })
            } else if w2.is_zero() && !w1.finite().is_some_and(|v| v.is_negative()) {
                if !u_valuation.is_zero() {
                    return Err(CoreError::WDividesU);
                }
                Ok(ClosedForm {
                    branch: Branch::FiniteGood,
                    m: None,
                    on_boundary: false,
                    lattice: LatticeModel::tate(q, 2, vec![])?,
                    good_part: vec![Rat::zero(), Rat::zero()],
                    lambda: Some(vec![Rat::zero(), Rat::zero()]),
                    xi: None,
                    w_j,
                })
            } else {
                Err(CoreError::HypothesisFailed(format!(
                    "valuations ({w1}, {w2}) are not those of a stable model"
                )))
            }
        }
    }
}

/// `φ_t = t + a_s τ^s + a_r τ^r` at the infinite place.
pub fn closed_form_two_term(
    w0: &Rat,
    (s, r): (u64, u64),
    ws: &Rat,
    wr: &Rat,
    q: u64,
    d: u64,
    n: u64,
) -> Result<ClosedForm> {
    check_common(q, d, n)?;
    if s == 0 || s >= r {
        return Err(CoreError::UnsupportedShape(format!("need 0 < s < r, got s = {s}, r = {r}")));
    }
    if !w0.is_negative() {
        return Err(CoreError::InvalidModule(format!("w(t) = {w0} must be negative")));
    }
    let nd = n * d;
    let one = Rat::one();
    let qm1 = uint(q - 1);
    let qs1 = rat_pow(q, s) - &one;
    let qrs1 = rat_pow(q, r - s) - &one;
    let wj = ws * (rat_pow(q, r) - &one) / &qm1 - wr * &qs1 / &qm1;
    let t_of = |m: u64| w0 * rat_pow(q, m * s) * &qrs1 / &qm1;
    let shift = -(w0 * uint(nd));
    let rsz = r as usize;
    if wj < t_of(1) {
        let mut m = 1u64;
        while wj <= t_of(m + 1) {
            m += 1;
        }
        let low = w0 + (w0 - ws) / &qs1;
        let high = w0 * uint(m) + &wj * &qm1 / (rat_pow(q, m * s) * &qs1 * &qrs1) - ws / &qs1;
        let omega: Vec<Rat> = (0..rsz).map(|i| if i < s as usize { low.clone() } else { high.clone() }).collect();
        let lambda = (nd >= m).then(|| omega.iter().map(|o| &shift + o).collect());
        Ok(ClosedForm {
            branch: Branch::Case1,
            m: Some(m),
            on_boundary: wj == t_of(m),
            lattice: LatticeModel::infinite(q, omega),
            good_part: vec![],
            lambda,
            xi: None,
            w_j: Valuation::Finite(wj),
        })
    } else {
        let omega = w0 + (w0 - wr) / (rat_pow(q, r) - &one);
        Ok(ClosedForm {
            branch: Branch::Case2,
            m: None,
            on_boundary: wj == t_of(1),
            lattice: LatticeModel::infinite(q, vec![omega.clone(); rsz]),
            good_part: vec![],
            lambda: Some(vec![&shift + &omega; rsz]),
            xi: None,
            w_j: Valuation::Finite(wj),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn inf() -> Rank2Place {
        Rank2Place::Infinite { w0: int(-1) }
    }

    #[test]
    fn case_one_m_one() {
        let cf = closed_form_rank2(&inf(), &Valuation::Finite(int(-1)), &int(0), 2, 1, 1).unwrap();
        assert_eq!(cf.branch, Branch::Case1);
        assert_eq!(cf.m, Some(1));
        assert_eq!(cf.lattice.generator_valuations, vec![int(-1), rat(-3, 2)]);
        assert_eq!(cf.lambda, Some(vec![int(0), rat(-1, 2)]));
    }

    #[test]
    fn case_one_m_two() {
        let cf = closed_form_rank2(&inf(), &Valuation::Finite(int(-2)), &int(-1), 2, 1, 1).unwrap();
        assert_eq!(cf.m, Some(2));
        assert_eq!(cf.lattice.generator_valuations, vec![int(0), rat(-5, 4)]);
        assert_eq!(cf.lambda, Some(vec![int(1), rat(-1, 2)]));
        assert_eq!(cf.xi(1, 2), Some(rat(3, 4)));
        assert_eq!(cf.xi(1, 3), Some(rat(7, 4)));
    }

    #[test]
    fn case_two() {
        let cf = closed_form_rank2(&inf(), &Valuation::Finite(int(0)), &int(0), 2, 1, 1).unwrap();
        assert_eq!(cf.branch, Branch::Case2);
        assert_eq!(cf.lambda, Some(vec![rat(-1, 3), rat(-1, 3)]));
        let cf = closed_form_rank2(&inf(), &Valuation::Infinity, &int(0), 2, 1, 2).unwrap();
        assert_eq!(cf.lambda, Some(vec![rat(2, 3), rat(2, 3)]));
    }

    #[test]
    fn finite_bad() {
        let p = Rank2Place::Finite { u_valuation: int(0) };
        let cf = closed_form_rank2(&p, &Valuation::Finite(int(0)), &int(1), 2, 1, 2).unwrap();
        assert_eq!(cf.lambda, Some(vec![int(0), rat(-1, 4)]));
        assert_eq!(cf.lattice.generator_valuations, vec![int(-1)]);
    }

    #[test]
    fn two_term() {
        let cf = closed_form_two_term(&int(-1), (2, 3), &int(-1), &int(0), 2, 1, 1).unwrap();
        assert_eq!(cf.lambda, Some(vec![int(0), int(0), rat(-1, 4)]));
        let cf = closed_form_two_term(&int(-1), (1, 3), &int(0), &int(0), 2, 1, 1).unwrap();
        assert_eq!(cf.branch, Branch::Case2);
        assert_eq!(cf.lambda, Some(vec![rat(-1, 7); 3]));
    }
}
