//! Full root-valuation multiset of `φ_{u^n}(X)/X`: predicted from an SMB and a
//! degree rule table, or read off the Newton polygon of `φ_{u^n}` directly.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::closed_form::ClosedForm;
use super::engine::{closed_form_for, dictionary_level};
use super::recursion::{smb_recursion, SmbProfile};
use super::check_inputs;
use crate::algebra::{Place, PlaceKind, PolyA};
use crate::drinfeld::DrinfeldModule;
use crate::error::{CoreError, Result};
use crate::lattice::{exp_valuation, DictionaryLevel};
use crate::newton::{root_valuations, ValuationProfile};
use crate::rational::{pow_u64, rat_pow, uint, Rat};

/// `table[i][k] = w(a·λ_i)` for `deg a = k`, `0 ≤ k < nd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRules {
    q: u64,
    nd: u64,
    table: Vec<Vec<Rat>>,
}

impl DegreeRules {
    pub fn new(q: u64, nd: u64, table: Vec<Vec<Rat>>) -> Result<Self> {
        for (i, row) in table.iter().enumerate() {
            if (row.len() as u64) < nd {
                return Err(CoreError::MissingRule { element: i, degree: row.len() });
            }
        }
        Ok(DegreeRules { q, nd, table })
    }

    pub fn table(&self) -> &[Vec<Rat>] {
        &self.table
    }

    /// Rules from the exponential dictionary. `beta` untwists finite-place values.
    pub fn from_lattice(cf: &ClosedForm, level: &DictionaryLevel, beta: &Rat) -> Result<Self> {
        let lat = &cf.lattice;
        let nd = level.n * level.d;
        let mut table = Vec::with_capacity(level.rank);
        match lat.place_kind {
            PlaceKind::Infinite => {
                for g in &lat.generator_valuations {
                    let row = (0..nd)
                        .map(|k| exp_valuation(lat, &(g + &level.w0 * (uint(k) - uint(nd)))))
                        .collect::<Result<Vec<_>>>()?;
                    table.push(row);
                }
            }
            PlaceKind::Finite => {
                if !level.u_valuation.is_zero() {
                    return Err(CoreError::WDividesU);
                }
                let rp = lat.reduced_rank as u64;
                for _ in 0..rp {
                    table.push(vec![-beta; nd as usize]);
                }
                let top = rat_pow(level.q, rp * nd);
                for g in &lat.generator_valuations {
                    let row = (0..nd)
                        .map(|k| Ok(exp_valuation(lat, &(g * rat_pow(level.q, rp * k) / &top))? - beta))
                        .collect::<Result<Vec<_>>>()?;
                    table.push(row);
                }
            }
        }
        Self::new(level.q, nd, table)
    }

    /// Rules from the `ξ` tables: `w(a·λ_i) = w(ξ_{i, nd − deg a})`.
    pub fn from_xi(cf: &ClosedForm, q: u64, nd: u64) -> Result<Self> {
        let mut table = Vec::new();
        for i in 0..2 {
            let row = (0..nd)
                .map(|k| cf.xi(i, nd - k).ok_or(CoreError::MissingRule { element: i, degree: k as usize }))
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        Self::new(q, nd, table)
    }
}

/// Every nonzero `Σ a_i λ_i` with the min rule; `(q−1)q^k` choices of `a_i` per degree `k`.
pub fn predict_division_multiset(profile: &SmbProfile, rules: &DegreeRules) -> Result<ValuationProfile> {
    if profile.valuations.len() != rules.table.len() {
        return Err(CoreError::Inconsistent(format!(
            "profile has {} elements, rule table {}",
            profile.valuations.len(),
            rules.table.len()
        )));
    }
    for (i, (v, row)) in profile.valuations.iter().zip(&rules.table).enumerate() {
        if *v != row[0] {
            return Err(CoreError::Inconsistent(format!(
                "element {i}: SMB valuation {v} but degree-0 rule {}",
                row[0]
            )));
        }
    }
    let q = rules.q;
    let mut per: Vec<Vec<(Rat, u64)>> = Vec::new();
    for row in &rules.table {
        let mut opts = Vec::with_capacity(rules.nd as usize);
        for (k, v) in row.iter().take(rules.nd as usize).enumerate() {
            let c = pow_u64(q, k as u64)?
                .checked_mul(q - 1)
                .ok_or_else(|| CoreError::Overflow("degree count".into()))?;
            opts.push((v.clone(), c));
        }
        per.push(opts);
    }
    let mut counts = BTreeMap::new();
    combine(&per, 0, None, 1, &mut counts)?;
    Ok(ValuationProfile::from_counts(counts))
}

fn combine(per: &[Vec<(Rat, u64)>], i: usize, cur: Option<Rat>, mult: u64, out: &mut BTreeMap<Rat, u64>) -> Result<()> {
    let overflow = || CoreError::Overflow("multiset count".into());
    if i == per.len() {
        if let Some(v) = cur {
            let slot = out.entry(v).or_insert(0);
            *slot = slot.checked_add(mult).ok_or_else(overflow)?;
        }
        return Ok(());
    }
    combine(per, i + 1, cur.clone(), mult, out)?;
    for (v, c) in &per[i] {
        let m = match &cur {
            Some(x) if x < v => x.clone(),
            _ => v.clone(),
        };
        combine(per, i + 1, Some(m), mult.checked_mul(*c).ok_or_else(overflow)?, out)?;
    }
    Ok(())
}

/// Newton polygon of `φ_{u^n}(X)/X`; refuses when `q^{r·nd}` exceeds `budget`.
pub fn oracle_division_multiset(
    phi: &DrinfeldModule,
    u: &PolyA,
    n: u64,
    w: &Place,
    budget: u64,
) -> Result<ValuationProfile> {
    let local = check_inputs(phi, u, n, w)?;
    let exp = local.rank as u64 * local.nd();
    let needed = pow_u64(local.q, exp).unwrap_or(u64::MAX);
    if needed > budget {
        return Err(CoreError::BudgetExceeded { needed, budget });
    }
    root_valuations(&phi.phi_of(&u.pow(n)), None, w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultisetReport {
    pub smb: SmbProfile,
    pub predicted: ValuationProfile,
    pub oracle: ValuationProfile,
    pub equal: bool,
}

/// Recursion SMB + dictionary degree rules against the direct polygon.
pub fn verify_multiset(phi: &DrinfeldModule, u: &PolyA, n: u64, w: &Place, budget: u64) -> Result<MultisetReport> {
    let local = check_inputs(phi, u, n, w)?;
    let oracle = oracle_division_multiset(phi, u, n, w, budget)?;
    let smb = smb_recursion(phi, u, n, w)?.final_profile().clone();
    let cf = closed_form_for(phi, u, n, w)?;
    let level = dictionary_level(phi, u, n, w)?;
    let rules = DegreeRules::from_lattice(&cf, &level, &local.beta)?;
    let predicted = predict_division_multiset(&smb, &rules)?;
    let equal = predicted == oracle;
    Ok(MultisetReport { smb, predicted, oracle, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn predict_from_table() {
        let rules = DegreeRules::new(2, 1, vec![vec![int(0)], vec![rat(-1, 2)]]).unwrap();
        let smb = SmbProfile { level: 1, valuations: vec![int(0), rat(-1, 2)] };
        let p = predict_division_multiset(&smb, &rules).unwrap();
        assert_eq!(p, ValuationProfile::from_pairs([(int(0), 1), (rat(-1, 2), 2)]));
    }

    #[test]
    fn short_table_rejected() {
        let err = DegreeRules::new(2, 2, vec![vec![int(0)]]).unwrap_err();
        assert_eq!(err, CoreError::MissingRule { element: 0, degree: 1 });
    }
}
