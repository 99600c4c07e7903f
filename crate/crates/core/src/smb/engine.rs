//! Runs the recursion, the closed forms and the dictionary on one input.

use serde::Serialize;

use super::closed_form::{closed_form_rank2, closed_form_two_term, ClosedForm, Rank2Place};
use super::recursion::{smb_recursion, RecursionTrace};
use super::check_inputs;
use crate::algebra::{Place, PolyA};
use crate::drinfeld::DrinfeldModule;
use crate::error::{CoreError, Result};
use crate::lattice::{lattice_to_division, DictionaryLevel};
use crate::rational::{int, Rat, Valuation};

pub fn dictionary_level(phi: &DrinfeldModule, u: &PolyA, n: u64, w: &Place) -> Result<DictionaryLevel> {
    let local = check_inputs(phi, u, n, w)?;
    let u_valuation = match w {
        Place::Infinite => int(-(local.d as i64)),
        Place::Finite(_) => w.valuation_poly(u).expect_finite("w(u)")?,
    };
    Ok(DictionaryLevel { q: local.q, d: local.d, n, w0: int(-1), u_valuation, rank: local.rank })
}

/// Closed form for `φ`. `lambda` and `good_part` are untwisted; the lattice
/// belongs to the stable model.
pub fn closed_form_for(phi: &DrinfeldModule, u: &PolyA, n: u64, w: &Place) -> Result<ClosedForm> {
    let local = check_inputs(phi, u, n, w)?;
    let (q, d) = (local.q, local.d);
    let vals = local.twisted(phi.phi_t(), w);
    match (w, local.rank, phi.two_term_shape()) {
        (Place::Infinite, 2, _) => {
            let w2 = vals[2].expect_finite("a_2")?;
            closed_form_rank2(&Rank2Place::Infinite { w0: int(-1) }, &vals[1], &w2, q, d, n)
        }
        (Place::Infinite, r, Some((s, _))) if r > 2 => {
            let ws = vals[s].expect_finite("a_s")?;
            let wr = vals[r].expect_finite("a_r")?;
            closed_form_two_term(&int(-1), (s as u64, r as u64), &ws, &wr, q, d, n)
        }
        (Place::Finite(_), 2, _) => {
            let level = dictionary_level(phi, u, n, w)?;
            let w2 = vals[2].expect_finite("a_2")?;
            let mut cf = closed_form_rank2(&Rank2Place::Finite { u_valuation: level.u_valuation }, &vals[1], &w2, q, d, n)?;
            let beta = &local.beta;
            cf.good_part.iter_mut().for_each(|v| *v -= beta);
            if let Some(l) = cf.lambda.as_mut() {
                l.iter_mut().for_each(|v| *v -= beta);
            }
            Ok(cf)
        }
        _ => Err(CoreError::UnsupportedShape(format!(
            "no closed form for rank {} at {w}",
            local.rank
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmbReport {
    pub place: Place,
    pub u: String,
    pub n: u64,
    pub q: u64,
    pub rank: usize,
    pub j_valuation: Option<Valuation>,
    pub recursion: RecursionTrace,
    pub closed_form: Option<ClosedForm>,
    /// Lattice-to-division dictionary applied to the closed-form lattice.
    #[serde(serialize_with = "crate::rational::serde_rat::opt_vec")]
    pub dictionary: Option<Vec<Rat>>,
    /// Why the closed-form routes are absent, if they are.
    pub note: Option<String>,
    pub agree: bool,
}

pub fn smb_report(phi: &DrinfeldModule, u: &PolyA, n: u64, w: &Place) -> Result<SmbReport> {
    let local = check_inputs(phi, u, n, w)?;
    let recursion = smb_recursion(phi, u, n, w)?;
    let (closed_form, dictionary, note) = match closed_form_for(phi, u, n, w) {
        Ok(cf) => {
            let level = dictionary_level(phi, u, n, w)?;
            let dict = lattice_to_division(&cf.lattice, &level)?
                .into_iter()
                .map(|v| v - &local.beta)
                .collect::<Vec<_>>();
            (Some(cf), Some(dict), None)
        }
        Err(e @ (CoreError::UnsupportedShape(_) | CoreError::WDividesU | CoreError::HypothesisFailed(_))) => {
            (None, None, Some(e.to_string()))
        }
        Err(e) => return Err(e),
    };
    let rec = &recursion.final_profile().valuations;
    let agree = dictionary.as_ref().is_none_or(|d| d == rec)
        && closed_form
            .as_ref()
            .and_then(|cf| cf.lambda.as_ref())
            .is_none_or(|l| l == rec);
    Ok(SmbReport {
        place: w.clone(),
        u: u.to_string(),
        n,
        q: local.q,
        rank: local.rank,
        j_valuation: phi.j_valuation(w).ok(),
        recursion,
        closed_form,
        dictionary,
        note,
        agree,
    })
}
