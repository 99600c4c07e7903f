//! TOML job files.

use std::path::Path;

use drinfeld_smb::algebra::parse::parse_prime_modulus;
use drinfeld_smb::algebra::{parse_poly, Field, FqField, Place, PolyA};
use drinfeld_smb::drinfeld::DrinfeldModule;
use drinfeld_smb::rational::{parse_rat, Rat};
use serde::Deserialize;

use crate::error::CliError;

pub const DEFAULT_BUDGET: u64 = 65536;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub place: Option<String>,
    pub u: Option<String>,
    pub n: Option<u64>,
    pub field: FieldConfig,
    pub module: ModuleConfig,
    #[serde(default)]
    pub options: Options,
    pub psi: Option<PsiConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    pub p: u32,
    #[serde(default = "one")]
    pub k: u32,
    pub modulus: Option<String>,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleConfig {
    pub rank: Option<usize>,
    pub phi_t: Vec<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub e: Option<u64>,
    pub budget: Option<u64>,
}

/// Explicit ψ parameters, bypassing the module.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "snake_case")]
pub enum PsiConfig {
    InfiniteWild { w_j: String, w0: String, q: u64 },
    SplittingField { q_pow: u64, v_c: String, v_a: String },
    FiniteBad { q: u64, d: u64, n: u64, w_j: String },
}

/// A validated job.
pub struct Job {
    pub field: Field,
    pub phi: DrinfeldModule,
    pub place: Option<Place>,
    pub u: Option<PolyA>,
    pub n: u64,
    pub e: u64,
    pub budget: Option<u64>,
    pub psi: Option<PsiConfig>,
}

fn invalid(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{field}: {msg}"))
}

pub fn rat_field(field: &str, s: &str) -> Result<Rat, CliError> {
    parse_rat(s).map_err(|e| invalid(field, e))
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<(Self, Vec<u8>), CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let text = std::str::from_utf8(&bytes).map_err(|e| invalid("config", e))?;
        let cfg = toml::from_str(text).map_err(|e| invalid("config", e.message()))?;
        Ok((cfg, bytes))
    }

    pub fn validate(self) -> Result<Job, CliError> {
        let modulus = self
            .field
            .modulus
            .as_deref()
            .map(|m| parse_prime_modulus(self.field.p, m))
            .transpose()
            .map_err(|e| invalid("field.modulus", e))?;
        let field = FqField::new(self.field.p, self.field.k, modulus).map_err(|e| invalid("field", e))?;
        let coeffs: Vec<&str> = self.module.phi_t.iter().map(String::as_str).collect();
        let phi = DrinfeldModule::parse(&field, &coeffs).map_err(|e| invalid("module.phi_t", e))?;
        if let Some(r) = self.module.rank {
            if r != phi.rank() {
                return Err(invalid("module.rank", format!("{r} but phi_t has τ-degree {}", phi.rank())));
            }
        }
        let place = match self.place.as_deref() {
            None => None,
            Some("infinite" | "inf") => Some(Place::Infinite),
            Some(s) => {
                let p = parse_poly(&field, s).map_err(|e| invalid("place", e))?;
                Some(Place::finite(p).map_err(|e| invalid("place", e))?)
            }
        };
        let u = self
            .u
            .as_deref()
            .map(|s| {
                let u = parse_poly(&field, s).map_err(|e| invalid("u", e))?;
                if !u.is_monic() || !u.is_irreducible() {
                    return Err(invalid("u", format!("'{u}' is not monic irreducible")));
                }
                Ok(u)
            })
            .transpose()?;
        let n = self.n.unwrap_or(1);
        if n == 0 {
            return Err(invalid("n", "must be at least 1"));
        }
        let e = self.options.e.unwrap_or(1);
        Ok(Job { field, phi, place, u, n, e, budget: self.options.budget, psi: self.psi })
    }
}

impl Job {
    pub fn place(&self) -> Result<&Place, CliError> {
        self.place.as_ref().ok_or_else(|| invalid("place", "required for this command"))
    }

    pub fn u(&self) -> Result<&PolyA, CliError> {
        self.u.as_ref().ok_or_else(|| invalid("u", "required for this command"))
    }
}
