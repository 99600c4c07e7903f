//! The Newton-polygon recursion: level-1 SMB by removing the `A/u`-span of the
//! roots already chosen, then one shifted polygon per higher level.

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::Serialize;

use super::{check_inputs, Local};
use crate::algebra::poly::all_below_degree;
use crate::algebra::{Place, PolyA};
use crate::drinfeld::DrinfeldModule;
use crate::error::{CoreError, Result};
use crate::newton::{additive_polygon, term_minimum, NewtonPolygon, ValuationProfile};
use crate::rational::{Rat, Valuation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmbProfile {
    pub level: u64,
    #[serde(serialize_with = "crate::rational::serde_rat::vec")]
    pub valuations: Vec<Rat>,
}

/// One polygon read-off. Polygons are those of the twisted model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionStep {
    pub element: usize,
    pub level: u64,
    #[serde(serialize_with = "crate::rational::serde_rat::opt")]
    pub shift: Option<Rat>,
    pub polygon: NewtonPolygon,
    #[serde(serialize_with = "crate::rational::serde_rat::one")]
    pub valuation: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionTrace {
    #[serde(serialize_with = "crate::rational::serde_rat::one")]
    pub twist_valuation: Rat,
    /// Root valuations of `φ_u(X)/X`, untwisted.
    pub torsion_profile: ValuationProfile,
    pub levels: Vec<SmbProfile>,
    pub steps: Vec<RecursionStep>,
}

impl RecursionTrace {
    pub fn final_profile(&self) -> &SmbProfile {
        self.levels.last().expect("at least one level")
    }
}

/// Knobs that must not change the result; used by the invariance tests.
#[derive(Clone, Copy, Debug, Default)]
pub struct RecursionOptions {
    /// Permutes the order in which residues `a mod u` are visited.
    pub shuffle_seed: Option<u64>,
}

pub fn smb_recursion(phi: &DrinfeldModule, u: &PolyA, n: u64, w: &Place) -> Result<RecursionTrace> {
    smb_recursion_with(phi, u, n, w, RecursionOptions::default())
}

pub fn smb_recursion_with(
    phi: &DrinfeldModule,
    u: &PolyA,
    n: u64,
    w: &Place,
    opts: RecursionOptions,
) -> Result<RecursionTrace> {
    let local = check_inputs(phi, u, n, w)?;
    let q = local.q;
    let vals_u = local.twisted(&phi.phi_of(u), w);
    let poly1 = additive_polygon(&vals_u, q, None)?;
    let torsion = poly1.profile();

    let mut residues: Vec<PolyA> = all_below_degree(phi.field(), local.d as usize)
        .filter(|a| !a.is_zero())
        .collect();
    if let Some(seed) = opts.shuffle_seed {
        shuffle(&mut residues, seed);
    }
    let residue_vals: Vec<Vec<Valuation>> =
        residues.iter().map(|a| local.twisted(&phi.phi_of(a), w)).collect();

    let mut steps = Vec::new();
    let mut level1 = Vec::with_capacity(local.rank);
    let mut span = ValuationProfile::default();
    for i in 0..local.rank {
        let rest = torsion.remove(&span)?;
        let v = rest
            .max()
            .cloned()
            .ok_or_else(|| CoreError::Inconsistent("ran out of roots before rank".into()))?;
        steps.push(RecursionStep { element: i, level: 1, shift: None, polygon: poly1.clone(), valuation: v.clone() });
        if i + 1 < local.rank {
            let multiples = multiples_of(&local, w, &residue_vals, &v)?;
            span = extend_span(&span, &multiples)?;
        }
        level1.push(v);
    }

    let mut levels = vec![level1];
    for j in 2..=n {
        let prev = levels.last().unwrap().clone();
        let mut cur = Vec::with_capacity(local.rank);
        for (i, c) in prev.iter().enumerate() {
            let poly = additive_polygon(&vals_u, q, Some(c))?;
            let v = poly.largest_root_valuation();
            match term_minimum(&vals_u, q, &v) {
                Some((m, _)) if m == *c => {}
                _ => {
                    return Err(CoreError::Inconsistent(format!(
                        "tower check failed at element {i}, level {j}"
                    )))
                }
            }
            steps.push(RecursionStep { element: i, level: j, shift: Some(c.clone()), polygon: poly, valuation: v.clone() });
            cur.push(v);
        }
        levels.push(cur);
    }

    let beta = &local.beta;
    let untwist = |v: &Rat| v - beta;
    for s in &mut steps {
        s.valuation = untwist(&s.valuation);
        s.shift = s.shift.as_ref().map(untwist);
    }
    Ok(RecursionTrace {
        twist_valuation: beta.clone(),
        torsion_profile: torsion.shift(&-beta),
        levels: levels
            .into_iter()
            .zip(1..)
            .map(|(vals, level)| SmbProfile { level, valuations: vals.iter().map(untwist).collect() })
            .collect(),
        steps,
    })
}

/// `w(a·λ)` for every nonzero `a` with `deg a < d`, given `w(λ) = v` (twisted).
fn multiples_of(local: &Local, w: &Place, residue_vals: &[Vec<Valuation>], v: &Rat) -> Result<Vec<Rat>> {
    if !w.is_infinite() && !v.is_negative() {
        // The good part is an A/u-module of units: every nonzero multiple keeps valuation v.
        return Ok(vec![v.clone(); residue_vals.len()]);
    }
    residue_vals
        .iter()
        .map(|vals| match term_minimum(vals, local.q, v) {
            Some((m, true)) => Ok(m),
            Some((m, false)) => Err(CoreError::AmbiguousCancellation(format!(
                "two terms of φ_a(λ) share valuation {m} at w(λ) = {v}"
            ))),
            None => Err(CoreError::Degenerate("φ_a vanishes".into())),
        })
        .collect()
}

/// The min rule: `w(x + aλ) = min(w(x), w(aλ))` for `x` in the old span.
fn extend_span(span: &ValuationProfile, multiples: &[Rat]) -> Result<ValuationProfile> {
    let overflow = || CoreError::Overflow("span multiplicity".into());
    let mut counts: BTreeMap<Rat, u64> = BTreeMap::new();
    let mut bump = |v: &Rat, k: u64| -> Result<()> {
        let slot = counts.entry(v.clone()).or_insert(0);
        *slot = slot.checked_add(k).ok_or_else(overflow)?;
        Ok(())
    };
    for (x, k) in span.entries() {
        bump(x, *k)?;
    }
    for m in multiples {
        bump(m, 1)?;
        for (x, k) in span.entries() {
            bump(if x < m { x } else { m }, *k)?;
        }
    }
    Ok(ValuationProfile::from_counts(counts))
}

fn shuffle<T>(xs: &mut [T], seed: u64) {
    let mut s = seed | 1;
    for i in (1..xs.len()).rev() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        xs.swap(i, (s % (i as u64 + 1)) as usize);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, FqField};
    use crate::rational::{int, rat};

    fn module(q: u32, cs: &[&str]) -> DrinfeldModule {
        DrinfeldModule::parse(&FqField::prime(q).unwrap(), cs).unwrap()
    }

    #[test]
    fn infinite_case_one_levels() {
        let phi = module(2, &["t", "t", "1"]);
        let u = parse_poly(phi.field(), "t").unwrap();
        let tr = smb_recursion(&phi, &u, 3, &Place::Infinite).unwrap();
        let got: Vec<Vec<Rat>> = tr.levels.iter().map(|l| l.valuations.clone()).collect();
        assert_eq!(
            got,
            vec![vec![int(0), rat(-1, 2)], vec![int(1), rat(1, 2)], vec![int(2), rat(3, 2)]]
        );
    }

    #[test]
    fn finite_bad_level_two() {
        let phi = module(2, &["t", "1", "t"]);
        let w = Place::finite(parse_poly(phi.field(), "t").unwrap()).unwrap();
        let u = parse_poly(phi.field(), "t+1").unwrap();
        let tr = smb_recursion(&phi, &u, 2, &w).unwrap();
        assert_eq!(tr.final_profile().valuations, vec![int(0), rat(-1, 4)]);
    }

    #[test]
    fn rejects_w_dividing_u() {
        let phi = module(2, &["t", "1", "t"]);
        let w = Place::finite(parse_poly(phi.field(), "t").unwrap()).unwrap();
        let u = parse_poly(phi.field(), "t").unwrap();
        assert_eq!(smb_recursion(&phi, &u, 1, &w), Err(CoreError::WDividesU));
    }

    #[test]
    fn span_min_rule() {
        let span = ValuationProfile::from_pairs([(int(0), 1)]);
        let out = extend_span(&span, &[int(-1)]).unwrap();
        assert_eq!(out, ValuationProfile::from_pairs([(int(0), 1), (int(-1), 2)]));
    }
}
