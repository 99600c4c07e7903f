//! Local and global conductors of rank-2 modules, the J-height and the Szpiro check.

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::{Place, PlaceKind, PolyA};
use crate::drinfeld::DrinfeldModule;
use crate::error::{CoreError, Result};
use crate::ramification::{
    conductor_from_breaks, psi_finite_bad, psi_infinite_wild, rank2_steps_from_psi, PiecewiseLinear,
};
use crate::rational::{char_of, divides, int, uint, Rat, Valuation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConductorCase {
    C1Wild,
    C2Tame,
    HypothesisFailed,
}

impl ConductorCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConductorCase::C1Wild => "C1_wild",
            ConductorCase::C2Tame => "C2_tame",
            ConductorCase::HypothesisFailed => "hypothesis_failed",
        }
    }
}

impl Serialize for ConductorCase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Conductor data that depends only on `w(j)`, `w(t)` and `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalConductor {
    pub case: ConductorCase,
    #[serde(serialize_with = "crate::rational::serde_rat::opt")]
    pub conductor: Option<Rat>,
    /// ψ with `E = 1` used for the break cross-check (wild case only).
    pub psi: Option<PiecewiseLinear>,
    pub note: Option<String>,
}

/// Closed form, checked against the integral over the ψ-derived rank function.
pub fn conductor_from_invariants(w_j: &Valuation, w0: &Rat, q: u64, kind: PlaceKind) -> Result<LocalConductor> {
    let p = char_of(q);
    let tame = || LocalConductor { case: ConductorCase::C2Tame, conductor: Some(Rat::zero()), psi: None, note: None };
    let Valuation::Finite(wj) = w_j else { return Ok(tame()) };
    let threshold = match kind {
        PlaceKind::Infinite => w0 * uint(q),
        PlaceKind::Finite => Rat::zero(),
    };
    if *wj >= threshold {
        return Ok(tame());
    }
    if divides(p, wj) {
        return Ok(LocalConductor {
            case: ConductorCase::HypothesisFailed,
            conductor: None,
            psi: None,
            note: Some(format!("p divides w(j): p = {p}, w(j) = {wj}")),
        });
    }
    let (closed, psi) = match kind {
        PlaceKind::Infinite => ((-wj + w0 * uint(q)) / uint(q - 1), psi_infinite_wild(wj, w0, 1, q)?),
        PlaceKind::Finite => (-wj / uint(q - 1), psi_finite_bad(q, 1, 1, 1, wj)?),
    };
    let from_breaks = conductor_from_breaks(&rank2_steps_from_psi(&psi), 2)?;
    if from_breaks != closed {
        return Err(CoreError::Inconsistent(format!(
            "closed-form conductor {closed} but break integral {from_breaks}"
        )));
    }
    Ok(LocalConductor { case: ConductorCase::C1Wild, conductor: Some(closed), psi: Some(psi), note: None })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConductorReport {
    pub place: Place,
    pub degree: usize,
    pub w_j: Valuation,
    #[serde(flatten)]
    pub local: LocalConductor,
}

impl ConductorReport {
    /// `deg(w)·𝔣_w`, absent when the hypothesis failed.
    pub fn weighted(&self) -> Option<Rat> {
        self.local.conductor.as_ref().map(|c| c * uint(self.degree as u64))
    }
}

fn require_rank2(phi: &DrinfeldModule) -> Result<()> {
    if phi.rank() != 2 {
        return Err(CoreError::UnsupportedShape(format!("conductors need rank 2, got {}", phi.rank())));
    }
    Ok(())
}

pub fn conductor_local(phi: &DrinfeldModule, w: &Place) -> Result<ConductorReport> {
    require_rank2(phi)?;
    let w_j = phi.j_valuation(w)?;
    let local = conductor_from_invariants(&w_j, &int(-1), phi.q(), w.kind())?;
    Ok(ConductorReport { place: w.clone(), degree: w.degree(), w_j, local })
}

/// Places where `w(j) ≠ 0`: infinity and the prime factors of `j`.
fn candidate_places(phi: &DrinfeldModule) -> Result<Vec<Place>> {
    let j = phi.j_invariant()?;
    let mut primes: Vec<PolyA> = Vec::new();
    if !j.is_zero() {
        for part in [j.num(), j.den()] {
            primes.extend(part.monic().factor()?.into_iter().map(|(f, _)| f));
        }
    }
    primes.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    primes.dedup();
    let mut places = vec![Place::Infinite];
    for f in primes {
        places.push(Place::finite(f)?);
    }
    Ok(places)
}

/// `Σ_w deg(w)·max(−w(j), 0)`; only poles of `j` contribute.
pub fn j_height(phi: &DrinfeldModule) -> Result<Rat> {
    require_rank2(phi)?;
    let j = phi.j_invariant()?;
    if j.is_zero() {
        return Err(CoreError::JZero);
    }
    let mut h = Rat::zero();
    let at_inf = Place::Infinite.val(&j)?;
    if at_inf.is_negative() {
        h -= at_inf;
    }
    for (f, e) in j.den().factor()? {
        h += uint(f.degree().unwrap() as u64 * e);
    }
    Ok(h)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalConductor {
    pub per_place: Vec<ConductorReport>,
    /// `None` when some place failed the hypothesis.
    #[serde(serialize_with = "crate::rational::serde_rat::opt")]
    pub total: Option<Rat>,
    pub failed_places: Vec<String>,
}

pub fn global_conductor(phi: &DrinfeldModule) -> Result<GlobalConductor> {
    require_rank2(phi)?;
    let mut per_place = Vec::new();
    let mut total = Some(Rat::zero());
    let mut failed_places = Vec::new();
    for w in candidate_places(phi)? {
        let rep = conductor_local(phi, &w)?;
        match rep.weighted() {
            Some(c) => total = total.map(|t| t + c),
            None => {
                total = None;
                failed_places.push(w.to_string());
            }
        }
        per_place.push(rep);
    }
    Ok(GlobalConductor { per_place, total, failed_places })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SzpiroReport {
    #[serde(serialize_with = "crate::rational::serde_rat::one")]
    pub h_j: Rat,
    #[serde(serialize_with = "crate::rational::serde_rat::opt")]
    pub global_conductor: Option<Rat>,
    pub extension_degree: u64,
    #[serde(serialize_with = "crate::rational::serde_rat::opt")]
    pub bound: Option<Rat>,
    pub holds: Option<bool>,
    pub per_place: Vec<ConductorReport>,
    pub failed_places: Vec<String>,
}

/// `h_J ≤ 𝔣·(q − 1)/[F : 𝔽_q(t)] + q` with `[F : 𝔽_q(t)] = 1`.
pub fn szpiro_report(phi: &DrinfeldModule) -> Result<SzpiroReport> {
    let h_j = j_height(phi)?;
    let g = global_conductor(phi)?;
    let degree = 1u64;
    let q = phi.q();
    let bound = g.total.as_ref().map(|f| f * uint(q - 1) / uint(degree) + uint(q));
    let holds = bound.as_ref().map(|b| h_j <= *b);
    Ok(SzpiroReport {
        h_j,
        global_conductor: g.total,
        extension_degree: degree,
        bound,
        holds,
        per_place: g.per_place,
        failed_places: g.failed_places,
    })
}

impl SzpiroReport {
    pub fn equality(&self) -> bool {
        self.bound.as_ref().is_some_and(|b| *b == self.h_j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, FqField};

    fn module(q: u32, cs: &[&str]) -> DrinfeldModule {
        DrinfeldModule::parse(&FqField::prime(q).unwrap(), cs).unwrap()
    }

    fn at_t(phi: &DrinfeldModule) -> Place {
        Place::finite(parse_poly(phi.field(), "t").unwrap()).unwrap()
    }

    #[test]
    fn local_examples() {
        let phi = module(2, &["t", "t", "1"]);
        let inf = conductor_local(&phi, &Place::Infinite).unwrap();
        assert_eq!(inf.local.case, ConductorCase::C1Wild);
        assert_eq!(inf.local.conductor, Some(int(1)));
        let t = conductor_local(&phi, &at_t(&phi)).unwrap();
        assert_eq!((t.local.case, t.local.conductor), (ConductorCase::C2Tame, Some(int(0))));
        let bad = module(2, &["t", "1", "t"]);
        assert_eq!(conductor_local(&bad, &at_t(&bad)).unwrap().local.conductor, Some(int(1)));
    }

    #[test]
    fn heights() {
        assert_eq!(j_height(&module(2, &["t", "t", "1"])).unwrap(), int(3));
        assert_eq!(j_height(&module(2, &["t", "1", "t"])).unwrap(), int(1));
        assert_eq!(j_height(&module(2, &["t", "1", "1"])).unwrap(), int(0));
        assert_eq!(j_height(&module(2, &["t", "0", "1"])), Err(CoreError::JZero));
    }

    #[test]
    fn szpiro_examples() {
        let r = szpiro_report(&module(2, &["t", "t", "1"])).unwrap();
        assert_eq!((r.h_j.clone(), r.global_conductor.clone(), r.bound.clone()), (int(3), Some(int(1)), Some(int(3))));
        assert!(r.holds.unwrap() && r.equality());
        let r = szpiro_report(&module(2, &["t", "1", "t"])).unwrap();
        assert_eq!((r.h_j.clone(), r.global_conductor.clone()), (int(1), Some(int(1))));
        assert_eq!(r.holds, Some(true));
        let r = szpiro_report(&module(3, &["t", "1", "2"])).unwrap();
        assert_eq!((r.h_j.clone(), r.global_conductor.clone()), (int(0), Some(int(0))));
    }

    #[test]
    fn divisible_w_j_is_reported() {
        let l = conductor_from_invariants(&Valuation::Finite(int(-6)), &int(-2), 2, PlaceKind::Infinite).unwrap();
        assert_eq!(l.case, ConductorCase::HypothesisFailed);
        assert_eq!(l.conductor, None);
    }
}
