//! Valuation-level model of period lattices and the exponential dictionary.
//!
//! A lattice is represented only by the valuations of an SMB plus its scaling
//! law: `w(bω) = w(ω) − deg b` at the infinite place, `w(b·ω) = q^{r′ deg b} w(ω)`
//! for Tate lattices at a finite place. Sums obey the min rule.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::PlaceKind;
use crate::error::{CoreError, Result};
use crate::newton::ValuationProfile;
use crate::rational::{rat_pow, uint, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeModel {
    pub place_kind: PlaceKind,
    pub reduced_rank: usize,
    #[serde(serialize_with = "crate::rational::serde_rat::vec")]
    pub generator_valuations: Vec<Rat>,
    pub q: u64,
}

impl LatticeModel {
    pub fn infinite(q: u64, mut gens: Vec<Rat>) -> Self {
        gens.sort_by(|a, b| b.cmp(a));
        LatticeModel { place_kind: PlaceKind::Infinite, reduced_rank: 0, generator_valuations: gens, q }
    }

    /// Tate lattice of a finite place; all generators must be negative.
    pub fn tate(q: u64, reduced_rank: usize, mut gens: Vec<Rat>) -> Result<Self> {
        if reduced_rank == 0 {
            return Err(CoreError::InvalidModule("Tate lattice needs r′ ≥ 1".into()));
        }
        if gens.iter().any(|g| !g.is_negative()) {
            return Err(CoreError::InvalidModule("Tate lattice valuations must be < 0".into()));
        }
        gens.sort_by(|a, b| b.cmp(a));
        Ok(LatticeModel { place_kind: PlaceKind::Finite, reduced_rank, generator_valuations: gens, q })
    }

    pub fn rank(&self) -> usize {
        self.generator_valuations.len()
    }

    /// Valuation of `b·ω` for `deg b = deg`.
    pub fn scaled(&self, v: &Rat, deg: u64) -> Rat {
        match self.place_kind {
            PlaceKind::Infinite => v - uint(deg),
            PlaceKind::Finite => v * rat_pow(self.q, self.reduced_rank as u64 * deg),
        }
    }
}

/// Exact multiset of `w(μ) > threshold` over nonzero lattice points.
pub fn lattice_values_above(lat: &LatticeModel, threshold: &Rat) -> Result<ValuationProfile> {
    let q = lat.q;
    // Per generator: (valuation, number of b with that degree).
    let mut per_gen: Vec<Vec<(Rat, u64)>> = Vec::new();
    for g in &lat.generator_valuations {
        if lat.place_kind == PlaceKind::Finite && !g.is_negative() {
            return Err(CoreError::InvalidModule("Tate lattice valuations must be < 0".into()));
        }
        let mut opts = Vec::new();
        let mut deg = 0u64;
        loop {
            let v = lat.scaled(g, deg);
            if v <= *threshold {
                break;
            }
            let count = q
                .checked_pow(deg as u32)
                .and_then(|x| x.checked_mul(q - 1))
                .ok_or_else(|| CoreError::Overflow("lattice enumeration count".into()))?;
            opts.push((v, count));
            deg += 1;
        }
        per_gen.push(opts);
    }
    let mut counts: BTreeMap<Rat, u64> = BTreeMap::new();
    enumerate(&per_gen, 0, None, 1, &mut counts)?;
    Ok(ValuationProfile::from_counts(counts))
}

fn enumerate(
    per_gen: &[Vec<(Rat, u64)>],
    i: usize,
    cur: Option<Rat>,
    mult: u64,
    out: &mut BTreeMap<Rat, u64>,
) -> Result<()> {
    if i == per_gen.len() {
        if let Some(v) = cur {
            let slot = out.entry(v).or_insert(0);
            *slot = slot
                .checked_add(mult)
                .ok_or_else(|| CoreError::Overflow("lattice multiplicity".into()))?;
        }
        return Ok(());
    }
    enumerate(per_gen, i + 1, cur.clone(), mult, out)?;
    for (v, c) in &per_gen[i] {
        let m = match &cur {
            Some(x) if x < v => x.clone(),
            _ => v.clone(),
        };
        let mult = mult
            .checked_mul(*c)
            .ok_or_else(|| CoreError::Overflow("lattice multiplicity".into()))?;
        enumerate(per_gen, i + 1, Some(m), mult, out)?;
    }
    Ok(())
}

/// `v + Σ_{μ ≠ 0, w(μ) > v} (v − w(μ))`.
pub fn exp_valuation(lat: &LatticeModel, v: &Rat) -> Result<Rat> {
    let above = lattice_values_above(lat, v)?;
    let mut acc = v.clone();
    for (w, m) in above.entries() {
        acc += (v - w) * uint(*m);
    }
    Ok(acc)
}

/// Level data for the dictionary between `Λ` and `φ[u^n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DictionaryLevel {
    pub q: u64,
    pub d: u64,
    pub n: u64,
    /// `w(t)`; only read at the infinite place.
    pub w0: Rat,
    /// `w(u)`; only read at a finite place.
    pub u_valuation: Rat,
    pub rank: usize,
}

impl DictionaryLevel {
    fn nd(&self) -> u64 {
        self.n * self.d
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    LatticeToDivision,
    DivisionToLattice,
}

/// Result of either dictionary direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DictionaryOutput {
    Division(Vec<Rat>),
    Lattice(LatticeModel),
}

/// Dispatches on `direction`; `division` is read only for the inverse direction.
pub fn smb_dictionary(
    lat: Option<&LatticeModel>,
    division: Option<&[Rat]>,
    kind: PlaceKind,
    level: &DictionaryLevel,
    direction: Direction,
) -> Result<DictionaryOutput> {
    let missing = |what: &str| CoreError::InvalidModule(format!("dictionary needs {what}"));
    match direction {
        Direction::LatticeToDivision => {
            Ok(DictionaryOutput::Division(lattice_to_division(lat.ok_or_else(|| missing("a lattice"))?, level)?))
        }
        Direction::DivisionToLattice => Ok(DictionaryOutput::Lattice(division_to_lattice(
            division.ok_or_else(|| missing("a division profile"))?,
            kind,
            level,
        )?)),
    }
}

/// Valuations of the good-reduction SMB of `ψ[u^n]` for `ψ` of rank `r′`.
fn good_part(r_prime: usize, level: &DictionaryLevel) -> Result<Vec<Rat>> {
    if level.u_valuation.is_zero() {
        return Ok(vec![Rat::zero(); r_prime]);
    }
    if r_prime == 1 {
        let denom = (rat_pow(level.q, level.d) - Rat::one()) * rat_pow(level.q, (level.n - 1) * level.d);
        return Ok(vec![&level.u_valuation / denom]);
    }
    Err(CoreError::WDividesU)
}

/// `w(λ_i)` from the lattice SMB valuations.
pub fn lattice_to_division(lat: &LatticeModel, level: &DictionaryLevel) -> Result<Vec<Rat>> {
    let nd = level.nd();
    let mut out = Vec::with_capacity(level.rank);
    match lat.place_kind {
        PlaceKind::Infinite => {
            let w_un = &level.w0 * uint(nd);
            for g in &lat.generator_valuations {
                out.push(exp_valuation(lat, &(g - &w_un))?);
            }
        }
        PlaceKind::Finite => {
            let r_prime = lat.reduced_rank;
            if r_prime + lat.rank() != level.rank {
                return Err(CoreError::InvalidModule("r′ + rank Λ must equal r".into()));
            }
            out.extend(good_part(r_prime, level)?);
            let scale = rat_pow(level.q, r_prime as u64 * nd);
            for g in &lat.generator_valuations {
                out.push(exp_valuation(lat, &(g / &scale))?);
            }
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Inverse direction under the largeness condition.
pub fn division_to_lattice(vals: &[Rat], kind: PlaceKind, level: &DictionaryLevel) -> Result<LatticeModel> {
    let nd = level.nd();
    let mut vals = vals.to_vec();
    vals.sort_by(|a, b| b.cmp(a));
    match kind {
        PlaceKind::Infinite => {
            let spread = &vals[0] - vals.last().unwrap();
            let size = -&level.w0 * uint(nd);
            if size <= spread {
                return Err(CoreError::Largeness(format!(
                    "nd·(−w_0) = {size} must exceed w(λ_1) − w(λ_r) = {spread}"
                )));
            }
            let w_un = &level.w0 * uint(nd);
            Ok(LatticeModel::infinite(level.q, vals.iter().map(|v| v + &w_un).collect()))
        }
        PlaceKind::Finite => {
            let r_prime = vals.iter().filter(|v| !v.is_negative()).count();
            let bad = &vals[r_prime..];
            if r_prime == 0 {
                return Err(CoreError::InvalidModule("no good part in a finite-place profile".into()));
            }
            let scale = rat_pow(level.q, r_prime as u64 * nd);
            if let (Some(first), Some(last)) = (bad.first(), bad.last()) {
                let ratio = last / first;
                if scale <= ratio {
                    return Err(CoreError::Largeness(format!(
                        "q^(r′nd) = {scale} must exceed w(λ_r)/w(λ_(r′+1)) = {ratio}"
                    )));
                }
            }
            LatticeModel::tate(level.q, r_prime, bad.iter().map(|v| v * &scale).collect())
        }
    }
}
