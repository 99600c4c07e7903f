//! Valuation profiles of successive minimal bases for Drinfeld 𝔽_q[t]-modules
//! over 𝔽_q(t), with Newton polygons, lattice dictionaries, Herbrand
//! ψ-functions, conductors and the Szpiro check. All arithmetic is exact.

pub mod algebra;
pub mod conductor;
pub mod drinfeld;
pub mod error;
pub mod lattice;
pub mod newton;
pub mod ramification;
pub mod rational;
pub mod smb;

pub use error::{CoreError, Result};
pub use rational::{Rat, Valuation};
