//! Hand-checked values for every public operation.

use drinfeld_smb::algebra::{parse_poly, parse_ratfunc, FqField, Place, PolyA, RatFunc};
use drinfeld_smb::drinfeld::{DrinfeldModule, TwistedPoly};
use drinfeld_smb::lattice::{
    division_to_lattice, exp_valuation, lattice_to_division, lattice_values_above, DictionaryLevel, LatticeModel,
};
use drinfeld_smb::newton::{lower_hull, root_valuations, ValuationProfile};
use drinfeld_smb::rational::{int, rat, Rat, Valuation};
use drinfeld_smb::smb::{
    closed_form_rank2, closed_form_two_term, oracle_division_multiset, predict_division_multiset, smb_recursion,
    Branch, DegreeRules, Rank2Place, SmbProfile,
};
use drinfeld_smb::algebra::PlaceKind;
use drinfeld_smb::CoreError;

fn f2() -> drinfeld_smb::algebra::Field {
    FqField::prime(2).unwrap()
}

fn module(cs: &[&str]) -> DrinfeldModule {
    DrinfeldModule::parse(&f2(), cs).unwrap()
}

fn at_t() -> Place {
    Place::finite(parse_poly(&f2(), "t").unwrap()).unwrap()
}

fn poly(s: &str) -> PolyA {
    parse_poly(&f2(), s).unwrap()
}

#[test]
fn polynomial_arithmetic_over_f2() {
    assert_eq!((&poly("t^2+t") * &poly("t+1")).to_string(), "t^3+t");
    let (q, r) = poly("t^3+t").divrem(&poly("t^2")).unwrap();
    assert_eq!((q.to_string(), r.to_string()), ("t".into(), "t".into()));
    assert_eq!(&poly("t^2+1") * &PolyA::one(&f2()), poly("t^2+1"));
    assert_eq!(poly("t").divrem(&PolyA::zero(&f2())), Err(CoreError::DivisionByZero));
}

#[test]
fn irreducibility_small_cases() {
    assert!(poly("t").is_irreducible());
    assert!(!poly("t^2+t").is_irreducible());
    assert!(poly("t^2+t+1").is_irreducible());
}

#[test]
fn place_valuations() {
    let f = f2();
    assert_eq!(Place::Infinite.valuation(&parse_ratfunc(&f, "t^3").unwrap()), Valuation::Finite(int(-3)));
    assert_eq!(at_t().valuation(&parse_ratfunc(&f, "t/(t+1)").unwrap()), Valuation::Finite(int(1)));
    assert_eq!(at_t().valuation(&RatFunc::zero(&f)), Valuation::Infinity);
}

#[test]
fn skew_products() {
    let f = f2();
    let c = DrinfeldModule::carlitz(&f);
    let sq = c.phi_t().skew_mul(c.phi_t());
    assert_eq!(sq.to_string(), "[t^2, t^2+t, 1]");
    assert_eq!(c.phi_of(&poly("t^2")), sq);
    assert_eq!(sq.skew_mul(&TwistedPoly::one(&f)), sq);
    let tc = TwistedPoly::tau(&f).skew_mul(&TwistedPoly::constant(RatFunc::t(&f)));
    assert_eq!(tc.to_string(), "[0, t^2]");
}

#[test]
fn phi_of_small_elements() {
    let phi = module(&["t", "t", "1"]);
    assert_eq!(phi.phi_of(&PolyA::one(&f2())), TwistedPoly::one(&f2()));
    // Adding X only moves the linear coefficient.
    assert_eq!(phi.phi_of(&poly("t+1")).to_string(), "[t+1, t, 1]");
}

#[test]
fn j_invariants() {
    assert_eq!(module(&["t", "t", "1"]).j_invariant().unwrap().to_string(), "t^3");
    assert_eq!(module(&["t", "1", "t"]).j_invariant().unwrap().to_string(), "1/t");
    assert!(matches!(module(&["t", "1"]).j_invariant(), Err(CoreError::InvalidModule(_))));
}

#[test]
fn j_valuation_of_shifted_carlitz() {
    // The Carlitz action of s = t^2 + a viewed as a rank-2 module in s.
    for q in [2u32, 3, 5] {
        let f = FqField::prime(q).unwrap();
        let c = DrinfeldModule::carlitz(&f);
        let s = parse_poly(&f, "t^2+1").unwrap();
        let phi_s = c.phi_of(&s);
        let j = phi_s.coeff(1).pow(q as u64 + 1).div(&phi_s.coeff(2)).unwrap();
        let qq = q as i64;
        assert_eq!(Place::Infinite.val(&j).unwrap(), int(-qq * (qq + 1)));
        assert_eq!(Place::Infinite.val(&phi_s.coeff(0)).unwrap(), int(-2));
    }
}

#[test]
fn reduction_profiles() {
    let bad = module(&["t", "1", "t"]).reduction_profile(&at_t()).unwrap();
    assert!(bad.stable);
    assert_eq!((bad.reduced_rank, bad.twist_valuation), (1, int(0)));
    let good = module(&["t", "1", "1"]).reduction_profile(&at_t()).unwrap();
    assert_eq!((good.reduced_rank, good.twist_valuation), (2, int(0)));
    assert_eq!(module(&["t", "1", "1"]).reduction_profile(&Place::Infinite), Err(CoreError::InfinitePlace));
}

fn pts(v: &[(u64, i64, i64)]) -> Vec<(u64, Valuation)> {
    v.iter().map(|(x, n, d)| (*x, Valuation::Finite(rat(*n, *d)))).collect()
}

#[test]
fn hulls() {
    let h = lower_hull(&pts(&[(0, -1, 1), (1, -1, 1), (3, 0, 1)])).unwrap();
    assert_eq!(h.vertices, vec![(0, int(-1)), (1, int(-1)), (3, int(0))]);
    let h = lower_hull(&pts(&[(0, 0, 1), (1, 5, 1), (2, 0, 1)])).unwrap();
    assert_eq!(h.vertices, vec![(0, int(0)), (2, int(0))]);
    let h = lower_hull(&pts(&[(0, -1, 1), (3, 0, 1)])).unwrap();
    assert_eq!(h.segments(), vec![(rat(1, 3), 3)]);
}

#[test]
fn root_valuation_profiles() {
    let phi = module(&["t", "t", "1"]);
    let p = root_valuations(phi.phi_t(), None, &Place::Infinite).unwrap();
    assert_eq!(p, ValuationProfile::from_pairs([(int(0), 1), (rat(-1, 2), 2)]));
    let phi = module(&["t", "1", "1"]);
    let p = root_valuations(phi.phi_t(), None, &Place::Infinite).unwrap();
    assert_eq!(p, ValuationProfile::from_pairs([(rat(-1, 3), 3)]));
    let c = DrinfeldModule::carlitz(&f2());
    let p = root_valuations(&c.phi_of(&poly("t+1")), None, &at_t()).unwrap();
    assert_eq!(p, ValuationProfile::from_pairs([(int(0), 1)]));
}

#[test]
fn lattice_enumeration() {
    let lat = LatticeModel::infinite(2, vec![int(-1), rat(-3, 2)]);
    let got = lattice_values_above(&lat, &int(-3)).unwrap();
    // Brute force over pairs (a_1, a_2) with deg ≤ 1, which covers every value above −3.
    let mut want = std::collections::BTreeMap::new();
    let f = f2();
    let all: Vec<PolyA> = drinfeld_smb::algebra::poly::all_below_degree(&f, 3).collect();
    for a1 in &all {
        for a2 in &all {
            let v1 = a1.degree().map(|d| int(-1) - int(d as i64));
            let v2 = a2.degree().map(|d| rat(-3, 2) - int(d as i64));
            let v = match (v1, v2) {
                (None, None) => continue,
                (Some(x), None) | (None, Some(x)) => x,
                (Some(x), Some(y)) => x.min(y),
            };
            if v > int(-3) {
                *want.entry(v).or_insert(0u64) += 1;
            }
        }
    }
    assert_eq!(got, ValuationProfile::from_counts(want));
    assert_eq!(
        got,
        ValuationProfile::from_pairs([(int(-1), 1), (rat(-3, 2), 2), (int(-2), 4), (rat(-5, 2), 8)])
    );
    let tate = LatticeModel::tate(2, 1, vec![rat(-1, 2)]).unwrap();
    assert_eq!(
        lattice_values_above(&tate, &int(-3)).unwrap(),
        ValuationProfile::from_pairs([(rat(-1, 2), 1), (int(-1), 2), (int(-2), 4)])
    );
    assert!(lattice_values_above(&LatticeModel::infinite(2, vec![]), &int(-5)).unwrap().is_empty());
}

#[test]
fn exponential_corrections() {
    let tate = LatticeModel::tate(2, 1, vec![rat(-1, 2)]).unwrap();
    assert_eq!(exp_valuation(&tate, &rat(-1, 4)).unwrap(), rat(-1, 4));
    assert_eq!(exp_valuation(&tate, &int(-1)).unwrap(), rat(-3, 2));
    let lat = LatticeModel::infinite(2, vec![int(-1), rat(-3, 2)]);
    assert_eq!(exp_valuation(&lat, &int(0)).unwrap(), int(0));
}

fn level(n: u64, rank: usize) -> DictionaryLevel {
    DictionaryLevel { q: 2, d: 1, n, w0: int(-1), u_valuation: int(0), rank }
}

#[test]
fn dictionary_examples() {
    let lat = LatticeModel::infinite(2, vec![int(-1), rat(-3, 2)]);
    for n in 1..=4 {
        let nn = n as i64;
        let got = lattice_to_division(&lat, &level(n, 2)).unwrap();
        assert_eq!(got, vec![int(nn - 1), int(nn - 1) - rat(1, 2)]);
    }
    let tate = LatticeModel::tate(2, 1, vec![int(-1)]).unwrap();
    assert_eq!(lattice_to_division(&tate, &level(1, 2)).unwrap(), vec![int(0), rat(-1, 2)]);
    let rank1 = LatticeModel::tate(2, 1, vec![]).unwrap();
    assert_eq!(lattice_to_division(&rank1, &level(2, 1)).unwrap(), vec![int(0)]);
    let err = division_to_lattice(&[int(0), rat(-3, 2)], PlaceKind::Infinite, &level(1, 2)).unwrap_err();
    assert!(matches!(err, CoreError::Largeness(_)));
}

#[test]
fn recursion_examples() {
    let u = poly("t");
    let tr = smb_recursion(&module(&["t", "t", "1"]), &u, 3, &Place::Infinite).unwrap();
    let l1: Vec<Rat> = tr.levels.iter().map(|l| l.valuations[0].clone()).collect();
    let l2: Vec<Rat> = tr.levels.iter().map(|l| l.valuations[1].clone()).collect();
    assert_eq!(l1, vec![int(0), int(1), int(2)]);
    assert_eq!(l2, vec![rat(-1, 2), rat(1, 2), rat(3, 2)]);
    let tr = smb_recursion(&module(&["t", "1", "1"]), &u, 1, &Place::Infinite).unwrap();
    assert_eq!(tr.final_profile().valuations, vec![rat(-1, 3), rat(-1, 3)]);
    let tr = smb_recursion(&module(&["t", "1", "t"]), &poly("t+1"), 2, &at_t()).unwrap();
    assert_eq!(tr.final_profile().valuations, vec![int(0), rat(-1, 4)]);
}

#[test]
fn closed_form_examples() {
    let inf = Rank2Place::Infinite { w0: int(-1) };
    for n in 1..=3u64 {
        let nn = n as i64;
        let cf = closed_form_rank2(&inf, &Valuation::Finite(int(-1)), &int(0), 2, 1, n).unwrap();
        assert_eq!(cf.m, Some(1));
        assert_eq!(cf.lambda, Some(vec![int(nn - 1), int(nn) - rat(3, 2)]));
        assert_eq!(cf.lattice.generator_valuations, vec![int(-1), rat(-3, 2)]);
        let cf = closed_form_rank2(&inf, &Valuation::Finite(int(0)), &int(0), 2, 1, n).unwrap();
        assert_eq!(cf.branch, Branch::Case2);
        assert_eq!(cf.lambda, Some(vec![int(nn - 1) - rat(1, 3); 2]));
    }
    let fin = Rank2Place::Finite { u_valuation: int(0) };
    let cf = closed_form_rank2(&fin, &Valuation::Finite(int(0)), &int(1), 2, 1, 1).unwrap();
    assert_eq!(cf.lambda, Some(vec![int(0), rat(-1, 2)]));
}

#[test]
fn two_term_examples() {
    let cf = closed_form_two_term(&int(-1), (1, 3), &int(-1), &int(0), 2, 1, 1).unwrap();
    assert_eq!((cf.branch, cf.m), (Branch::Case1, Some(1)));
    assert_eq!(cf.w_j, Valuation::Finite(int(-7)));
    assert_eq!(cf.lattice.generator_valuations, vec![int(-1), rat(-7, 6), rat(-7, 6)]);
    let cf = closed_form_two_term(&int(-1), (1, 3), &int(0), &int(0), 2, 1, 1).unwrap();
    assert_eq!(cf.lattice.generator_valuations, vec![rat(-8, 7); 3]);
    // s = 1, r = 2 specializes to the rank-2 tables.
    let inf = Rank2Place::Infinite { w0: int(-1) };
    for (w1, w2) in [(-1, 0), (0, 0), (-2, -1)] {
        for n in 1..=3 {
            let a = closed_form_two_term(&int(-1), (1, 2), &int(w1), &int(w2), 2, 1, n).unwrap();
            let b = closed_form_rank2(&inf, &Valuation::Finite(int(w1)), &int(w2), 2, 1, n).unwrap();
            assert_eq!(a.lattice, b.lattice);
            if a.lambda.is_some() {
                assert_eq!(a.lambda, b.lambda);
            }
        }
    }
}

#[test]
fn multiset_examples() {
    let phi = module(&["t", "t", "1"]);
    let u = poly("t");
    let smb = SmbProfile { level: 1, valuations: vec![int(0), rat(-1, 2)] };
    let rules = DegreeRules::new(2, 1, vec![vec![int(0)], vec![rat(-1, 2)]]).unwrap();
    let want = ValuationProfile::from_pairs([(int(0), 1), (rat(-1, 2), 2)]);
    assert_eq!(predict_division_multiset(&smb, &rules).unwrap(), want);
    assert_eq!(oracle_division_multiset(&phi, &u, 1, &Place::Infinite, 1 << 16).unwrap(), want);
    let oracle2 = oracle_division_multiset(&phi, &u, 2, &Place::Infinite, 1 << 16).unwrap();
    assert_eq!(oracle2.total(), 15);
    let bad = module(&["t", "1", "t"]);
    assert_eq!(oracle_division_multiset(&bad, &poly("t+1"), 1, &at_t(), 1 << 16).unwrap(), want);
    assert_eq!(
        oracle_division_multiset(&phi, &u, 2, &Place::Infinite, 8),
        Err(CoreError::BudgetExceeded { needed: 16, budget: 8 })
    );
}

#[test]
fn unsupported_shapes_rejected() {
    let phi = DrinfeldModule::parse(&f2(), &["t", "1", "1", "1"]).unwrap();
    assert!(matches!(
        smb_recursion(&phi, &poly("t"), 1, &Place::Infinite),
        Err(CoreError::UnsupportedShape(_))
    ));
}
