//! Successive-minimum-basis valuations of `φ[u^n]`.
//!
//! Three independent routes: the Newton-polygon recursion, the closed-form
//! tables, and the lattice dictionary. `engine` runs all three side by side.

mod closed_form;
mod engine;
mod multiset;
mod recursion;

pub use closed_form::{closed_form_rank2, closed_form_two_term, Branch, ClosedForm, Rank2Place};
pub use engine::{closed_form_for, dictionary_level, smb_report, SmbReport};
pub use multiset::{oracle_division_multiset, predict_division_multiset, verify_multiset, DegreeRules, MultisetReport};
pub use recursion::{smb_recursion, smb_recursion_with, RecursionOptions, RecursionStep, RecursionTrace, SmbProfile};

use crate::algebra::{Place, PolyA};
use crate::drinfeld::{twisted_valuations, DrinfeldModule};
use crate::error::{CoreError, Result};
use crate::rational::{Rat, Valuation};
use num_traits::Zero;

/// Validated inputs shared by every route, in twisted coordinates at a finite place.
#[derive(Clone, Debug)]
pub(crate) struct Local {
    pub q: u64,
    pub d: u64,
    pub n: u64,
    pub rank: usize,
    /// `β`; zero at the infinite place.
    pub beta: Rat,
}

pub(crate) fn check_inputs(phi: &DrinfeldModule, u: &PolyA, n: u64, w: &Place) -> Result<Local> {
    if n == 0 {
        return Err(CoreError::InvalidModule("level n must be at least 1".into()));
    }
    if u.field() != phi.field() {
        return Err(CoreError::InvalidModule("u lives over a different field".into()));
    }
    if !u.is_monic() || !u.is_irreducible() {
        return Err(CoreError::NotIrreducible(u.to_string()));
    }
    if w.divides(u) {
        return Err(CoreError::WDividesU);
    }
    let rank = phi.rank();
    if rank > 2 && phi.two_term_shape().is_none() {
        return Err(CoreError::UnsupportedShape(format!(
            "rank {rank} with more than one middle coefficient"
        )));
    }
    let beta = match w {
        Place::Infinite => Rat::zero(),
        Place::Finite(_) => phi.reduction_profile(w)?.twist_valuation,
    };
    Ok(Local { q: phi.q(), d: u.degree().unwrap() as u64, n, rank, beta })
}

impl Local {
    pub fn nd(&self) -> u64 {
        self.n * self.d
    }

    pub fn twisted(&self, phi_a: &crate::drinfeld::TwistedPoly, w: &Place) -> Vec<Valuation> {
        twisted_valuations(&phi_a.valuations(w), self.q, &self.beta)
    }
}
