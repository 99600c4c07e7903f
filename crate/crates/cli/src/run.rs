//! Executes one job and collects the report.

use clap::ValueEnum;
use drinfeld_smb::algebra::Place;
use drinfeld_smb::conductor::{conductor_local, szpiro_report, ConductorCase};
use drinfeld_smb::newton::{additive_polygon, NewtonPolygon, ValuationProfile};
use drinfeld_smb::ramification::{
    filtration_from_psi, psi_finite_bad, psi_infinite_wild, psi_splitting_field, FiltrationReport, PiecewiseLinear,
};
use drinfeld_smb::rational::{int, pow_u64};
use drinfeld_smb::smb::{smb_report, verify_multiset};
use drinfeld_smb::{CoreError, Valuation};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{rat_field, Job, PsiConfig};
use crate::error::CliError;
use crate::report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Smb,
    Newton,
    Psi,
    Conductor,
    Szpiro,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Smb => "smb",
            Command::Newton => "newton",
            Command::Psi => "psi",
            Command::Conductor => "conductor",
            Command::Szpiro => "szpiro",
            Command::Verify => "verify",
        }
    }
}

/// A finished report: JSON document, Markdown rendering and exit code.
pub struct Outcome {
    pub json: Value,
    pub markdown: String,
    pub exit_code: i32,
}

#[derive(Serialize)]
pub struct NewtonReport {
    pub element: String,
    pub polygon: NewtonPolygon,
    pub profile: ValuationProfile,
    pub total: u64,
}

#[derive(Serialize)]
pub struct PsiReport {
    pub source: &'static str,
    pub w_j: Option<Valuation>,
    pub psi: PiecewiseLinear,
    pub filtration: FiltrationReport,
}

fn input_echo(job: &Job, budget: u64) -> Value {
    let f = &job.field;
    json!({
        "field": { "p": f.p(), "k": f.k(), "q": f.q(), "modulus": f.modulus() },
        "phi_t": job.phi.phi_t().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "place": job.place.as_ref().map(|p| p.to_string()),
        "u": job.u.as_ref().map(|u| u.to_string()),
        "n": job.n,
        "e": job.e,
        "budget": budget,
    })
}

pub fn run(job: &Job, command: Command, budget: u64) -> Result<Outcome, CliError> {
    let (result, markdown, exit_code) = match command {
        Command::Smb => {
            let rep = smb_report(&job.phi, job.u()?, job.n, job.place()?)?;
            let code = if rep.agree { 0 } else { 4 };
            (to_value(&rep)?, report::smb_md(&rep), code)
        }
        Command::Newton => {
            let rep = newton(job, budget)?;
            (to_value(&rep)?, report::newton_md(&rep), 0)
        }
        Command::Psi => {
            let rep = psi(job)?;
            (to_value(&rep)?, report::psi_md(&rep), 0)
        }
        Command::Conductor => {
            let rep = conductor_local(&job.phi, job.place()?)?;
            let code = if rep.local.case == ConductorCase::HypothesisFailed { 3 } else { 0 };
            (to_value(&rep)?, report::conductor_md(std::slice::from_ref(&rep)), code)
        }
        Command::Szpiro => {
            let rep = szpiro_report(&job.phi)?;
            let code = match rep.holds {
                _ if !rep.failed_places.is_empty() => 3,
                Some(false) => 4,
                _ => 0,
            };
            (to_value(&rep)?, report::szpiro_md(&rep), code)
        }
        Command::Verify => {
            let rep = verify_multiset(&job.phi, job.u()?, job.n, job.place()?, budget)?;
            let code = if rep.equal { 0 } else { 4 };
            (to_value(&rep)?, report::verify_md(&rep), code)
        }
    };
    let json = json!({ "command": command.name(), "input": input_echo(job, budget), "result": result });
    let markdown = format!("# {}\n\n{}", command.name(), markdown);
    Ok(Outcome { json, markdown, exit_code })
}

fn to_value<T: Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Io(format!("serialization: {e}")))
}

/// Polygon and root profile of `φ_{u^n}(X)/X`; `φ_{u^n}` has `X`-degree `q^{r·nd}`.
fn newton(job: &Job, budget: u64) -> Result<NewtonReport, CliError> {
    let (w, u) = (job.place()?, job.u()?);
    let q = job.phi.q();
    let d = u.degree().unwrap_or(0) as u64;
    let exp = job.phi.rank() as u64 * job.n * d;
    let needed = pow_u64(q, exp).unwrap_or(u64::MAX);
    if needed > budget {
        return Err(CoreError::BudgetExceeded { needed, budget }.into());
    }
    let un = u.pow(job.n);
    let polygon = additive_polygon(&job.phi.phi_of(&un).valuations(w), q, None)?;
    let profile = polygon.profile();
    let total = profile.total();
    Ok(NewtonReport { element: un.to_string(), polygon, profile, total })
}

fn psi(job: &Job) -> Result<PsiReport, CliError> {
    let e = job.e;
    let (source, w_j, f) = match &job.psi {
        Some(PsiConfig::InfiniteWild { w_j, w0, q }) => {
            let wj = rat_field("psi.w_j", w_j)?;
            let f = psi_infinite_wild(&wj, &rat_field("psi.w0", w0)?, e, *q)?;
            ("infinite_wild", Some(Valuation::Finite(wj)), f)
        }
        Some(PsiConfig::SplittingField { q_pow, v_c, v_a }) => {
            let f = psi_splitting_field(*q_pow, &rat_field("psi.v_c", v_c)?, &rat_field("psi.v_a", v_a)?, e)?;
            ("splitting_field", None, f)
        }
        Some(PsiConfig::FiniteBad { q, d, n, w_j }) => {
            let wj = rat_field("psi.w_j", w_j)?;
            let f = psi_finite_bad(*q, *d, *n, e, &wj)?;
            ("finite_bad", Some(Valuation::Finite(wj)), f)
        }
        None => {
            let w = job.place()?;
            let q = job.phi.q();
            let w_j = job.phi.j_valuation(w)?;
            let Valuation::Finite(wj) = &w_j else {
                return Err(CoreError::HypothesisFailed("j = 0: no wild ramification".into()).into());
            };
            match w {
                Place::Infinite => ("infinite_wild", Some(w_j.clone()), psi_infinite_wild(wj, &int(-1), e, q)?),
                Place::Finite(_) => {
                    let d = job.u.as_ref().and_then(|u| u.degree()).unwrap_or(1) as u64;
                    ("finite_bad", Some(w_j.clone()), psi_finite_bad(q, d, job.n, e, wj)?)
                }
            }
        }
    };
    let filtration = filtration_from_psi(&f)?;
    Ok(PsiReport { source, w_j, psi: f, filtration })
}
