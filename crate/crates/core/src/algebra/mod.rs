//! Arithmetic substrate: 𝔽_q, A = 𝔽_q[t], F = 𝔽_q(t) and its places.

pub mod field;
pub mod parse;
pub mod place;
pub mod poly;
pub mod ratfunc;

pub use field::{Field, Fq, FqField};
pub use parse::{parse_poly, parse_ratfunc};
pub use place::{Place, PlaceKind};
pub use poly::PolyA;
pub use ratfunc::RatFunc;
