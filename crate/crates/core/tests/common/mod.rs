#![allow(dead_code)]

use drinfeld_smb::algebra::{parse_poly, FqField, Place, PolyA};
use drinfeld_smb::drinfeld::DrinfeldModule;

pub struct Case {
    pub name: &'static str,
    pub q: u32,
    pub coeffs: &'static [&'static str],
    /// `None` is the infinite place.
    pub place: Option<&'static str>,
}

pub const CORPUS: &[Case] = &[
    Case { name: "M1", q: 2, coeffs: &["t", "t", "1"], place: None },
    Case { name: "M2", q: 2, coeffs: &["t", "1", "1"], place: None },
    Case { name: "M3", q: 2, coeffs: &["t", "1", "t"], place: Some("t") },
    Case { name: "M4", q: 2, coeffs: &["t", "t^2", "t"], place: None },
    Case { name: "M5", q: 2, coeffs: &["t", "1", "1"], place: Some("t") },
    Case { name: "M6", q: 2, coeffs: &["t", "t", "t^4"], place: Some("t") },
    Case { name: "M7", q: 2, coeffs: &["t", "1", "t^3"], place: Some("t") },
    Case { name: "N1", q: 3, coeffs: &["t", "t", "1"], place: None },
    Case { name: "N2", q: 3, coeffs: &["t", "1", "1"], place: None },
    Case { name: "N3", q: 3, coeffs: &["t", "1", "t"], place: Some("t") },
    Case { name: "N4", q: 3, coeffs: &["t", "t^2", "2"], place: None },
    Case { name: "N5", q: 3, coeffs: &["t", "t+1", "1"], place: Some("t") },
];

pub const TWO_TERM: &[Case] = &[
    Case { name: "T1", q: 2, coeffs: &["t", "t", "0", "1"], place: None },
    Case { name: "T2", q: 2, coeffs: &["t", "1", "0", "1"], place: None },
    Case { name: "T3", q: 2, coeffs: &["t", "0", "t", "1"], place: None },
];

impl Case {
    pub fn module(&self) -> DrinfeldModule {
        let f = FqField::prime(self.q).unwrap();
        DrinfeldModule::parse(&f, self.coeffs).unwrap()
    }

    pub fn place(&self) -> Place {
        let f = FqField::prime(self.q).unwrap();
        match self.place {
            None => Place::Infinite,
            Some(p) => Place::finite(parse_poly(&f, p).unwrap()).unwrap(),
        }
    }

    /// Primes `u` prime to the place, of degree 1 and 2.
    pub fn primes(&self) -> Vec<PolyA> {
        let f = FqField::prime(self.q).unwrap();
        let list: &[&str] = match (self.q, self.place) {
            (2, None) => &["t", "t+1", "t^2+t+1"],
            (3, None) => &["t", "t+1", "t^2+1"],
            (2, Some(_)) => &["t+1", "t^2+t+1"],
            _ => &["t+1", "t^2+1"],
        };
        list.iter().map(|s| parse_poly(&f, s).unwrap()).collect()
    }
}

/// Levels `n ≥ 1` whose oracle size `q^{r·nd}` stays within `budget`.
pub fn levels(q: u64, rank: usize, d: u64, budget: u64) -> Vec<u64> {
    (1..=3u64)
        .filter(|n| (q as f64).powi((rank as u64 * n * d) as i32) <= budget as f64)
        .collect()
}
