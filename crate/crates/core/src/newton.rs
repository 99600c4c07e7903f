//! Newton polygons of additive polynomials and root-valuation multisets.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::algebra::Place;
use crate::drinfeld::TwistedPoly;
use crate::error::{CoreError, Result};
use crate::rational::{pow_u64, uint, Rat, Valuation};

/// Multiset of exact valuations, sorted strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValuationProfile {
    entries: Vec<(Rat, u64)>,
}

impl ValuationProfile {
    pub fn from_counts(counts: BTreeMap<Rat, u64>) -> Self {
        ValuationProfile {
            entries: counts.into_iter().rev().filter(|(_, m)| *m > 0).collect(),
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Rat, u64)>) -> Self {
        let mut m = BTreeMap::new();
        for (v, k) in pairs {
            *m.entry(v).or_insert(0) += k;
        }
        Self::from_counts(m)
    }

    pub fn entries(&self) -> &[(Rat, u64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn max(&self) -> Option<&Rat> {
        self.entries.first().map(|(v, _)| v)
    }

    pub fn min(&self) -> Option<&Rat> {
        self.entries.last().map(|(v, _)| v)
    }

    pub fn multiplicity(&self, v: &Rat) -> u64 {
        self.entries.iter().find(|(x, _)| x == v).map_or(0, |(_, m)| *m)
    }

    /// Multiset difference; errors unless `other ⊆ self`.
    pub fn remove(&self, other: &ValuationProfile) -> Result<ValuationProfile> {
        let mut m: BTreeMap<Rat, u64> = self.entries.iter().cloned().collect();
        for (v, k) in &other.entries {
            let slot = m.get_mut(v).filter(|c| **c >= *k).ok_or_else(|| {
                CoreError::Inconsistent(format!("span value {v} (x{k}) missing from root multiset"))
            })?;
            *slot -= k;
        }
        Ok(Self::from_counts(m))
    }
}

impl Serialize for ValuationProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            v: String,
            mult: u64,
        }
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (v, m) in &self.entries {
            seq.serialize_element(&Entry { v: v.to_string(), mult: *m })?;
        }
        seq.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(u64, Rat)>,
}

impl NewtonPolygon {
    /// `(slope, horizontal span)` per segment, left to right.
    pub fn segments(&self) -> Vec<(Rat, u64)> {
        self.vertices
            .windows(2)
            .map(|w| {
                let dx = w[1].0 - w[0].0;
                ((&w[1].1 - &w[0].1) / uint(dx), dx)
            })
            .collect()
    }

    /// Each segment of slope `s` and span `ℓ` gives `ℓ` roots of valuation `−s`.
    pub fn profile(&self) -> ValuationProfile {
        ValuationProfile::from_pairs(self.segments().into_iter().map(|(s, l)| (-s, l)))
    }

    /// Valuation of the roots on the leftmost segment (the largest one).
    pub fn largest_root_valuation(&self) -> Rat {
        -self.segments()[0].0.clone()
    }
}

impl Serialize for NewtonPolygon {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.vertices.len()))?;
        for (x, y) in &self.vertices {
            seq.serialize_element(&(x, y.to_string()))?;
        }
        seq.end()
    }
}

/// Lower convex hull; `+∞` points are dropped and collinear interior points removed.
pub fn lower_hull(points: &[(u64, Valuation)]) -> Result<NewtonPolygon> {
    let mut pts: Vec<(u64, Rat)> = points
        .iter()
        .filter_map(|(x, v)| v.finite().map(|y| (*x, y.clone())))
        .collect();
    if pts.len() < 2 {
        return Err(CoreError::TooFewPoints(pts.len()));
    }
    pts.sort_by_key(|p| p.0);
    if pts.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(CoreError::Degenerate("repeated x-coordinate".into()));
    }
    let slope = |a: &(u64, Rat), b: &(u64, Rat)| (&b.1 - &a.1) / uint(b.0 - a.0);
    let mut hull: Vec<(u64, Rat)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 && slope(&hull[hull.len() - 2], &hull[hull.len() - 1]) >= slope(&hull[hull.len() - 1], &p) {
            hull.pop();
        }
        hull.push(p);
    }
    Ok(NewtonPolygon { vertices: hull })
}

/// Newton polygon of the additive polynomial with coefficient valuations `vals`
/// (index = τ-degree). Unshifted: the polygon of `P(X)/X`. Shifted by a constant
/// of valuation `c`: the polygon of `P(X) − c`.
pub fn additive_polygon(vals: &[Valuation], q: u64, shift: Option<&Rat>) -> Result<NewtonPolygon> {
    if vals.iter().skip(1).all(|v| v.is_infinite()) {
        return Err(CoreError::Degenerate("constant additive polynomial".into()));
    }
    let mut pts = Vec::with_capacity(vals.len() + 1);
    match shift {
        None => {
            if vals[0].is_infinite() {
                return Err(CoreError::Degenerate("inseparable: zero linear coefficient".into()));
            }
            for (k, v) in vals.iter().enumerate() {
                pts.push((pow_u64(q, k as u64)? - 1, v.clone()));
            }
        }
        Some(c) => {
            pts.push((0, Valuation::Finite(c.clone())));
            for (k, v) in vals.iter().enumerate() {
                pts.push((pow_u64(q, k as u64)?, v.clone()));
            }
        }
    }
    lower_hull(&pts)
}

/// Root valuations of `P(X)/X` (no shift) or of `P(X) − c` with `w(c)` given.
pub fn root_valuations(p: &TwistedPoly, shift: Option<&Valuation>, w: &Place) -> Result<ValuationProfile> {
    let q = p.field().q() as u64;
    let shift = match shift {
        None => None,
        Some(Valuation::Finite(c)) => Some(c),
        Some(Valuation::Infinity) => {
            return Err(CoreError::Degenerate("shift by the zero constant".into()))
        }
    };
    if p.is_zero() {
        return Err(CoreError::Degenerate("zero polynomial".into()));
    }
    Ok(additive_polygon(&p.valuations(w), q, shift)?.profile())
}

/// `min_k (vals[k] + q^k v)` and whether the minimum is attained once.
pub fn term_minimum(vals: &[Valuation], q: u64, v: &Rat) -> Option<(Rat, bool)> {
    let mut best: Option<(Rat, usize)> = None;
    let mut qk = Rat::from_integer(1.into());
    for val in vals {
        if let Valuation::Finite(c) = val {
            let t = c + &qk * v;
            match &mut best {
                Some((b, n)) if t == *b => *n += 1,
                Some((b, _)) if t > *b => {}
                _ => best = Some((t, 1)),
            }
        }
        qk *= uint(q);
    }
    best.map(|(b, n)| (b, n == 1))
}

impl ValuationProfile {
    /// Adds a scalar to every valuation.
    pub fn shift(&self, by: &Rat) -> ValuationProfile {
        if by.is_zero() {
            return self.clone();
        }
        ValuationProfile { entries: self.entries.iter().map(|(v, m)| (v + by, *m)).collect() }
    }
}
