//! Herbrand ψ-functions as exact piecewise-linear maps on `[−1, ∞)`, their
//! composition, filtration bookkeeping, and conductors from rank step functions.

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{CoreError, Result};
use crate::rational::{as_u64, char_of, divides, int, rat_pow, uint, Rat};

/// Continuous, convex, identity on `[−1, 0]`. Stored in normal form: knot `i`
/// starts the piece of slope `slopes[i]`, and adjacent slopes differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseLinear {
    knots: Vec<(Rat, Rat)>,
    slopes: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub from: Rat,
    pub to: Option<Rat>,
    pub slope: Rat,
    pub intercept: Rat,
}

impl PiecewiseLinear {
    pub fn identity() -> Self {
        Self::tame(Rat::one())
    }

    /// `y ↦ ey` for `y ≥ 0`.
    pub fn tame(e: Rat) -> Self {
        PiecewiseLinear { knots: vec![(Rat::zero(), Rat::zero())], slopes: vec![e] }
    }

    /// Pieces given by `(start, slope)`; the first must start at 0.
    pub fn from_slopes(pieces: &[(Rat, Rat)]) -> Result<Self> {
        let Some((first, _)) = pieces.first() else {
            return Err(CoreError::InvalidPsi("no pieces".into()));
        };
        if !first.is_zero() {
            return Err(CoreError::InvalidPsi(format!("first piece starts at {first}, not 0")));
        }
        let mut knots = vec![(Rat::zero(), Rat::zero())];
        let mut slopes = vec![pieces[0].1.clone()];
        for w in pieces.windows(2) {
            let ((y0, s0), (y1, s1)) = (&w[0], &w[1]);
            if y1 <= y0 {
                return Err(CoreError::InvalidPsi(format!("breakpoints {y0}, {y1} out of order")));
            }
            let (_, v0) = knots.last().unwrap();
            let v1 = v0 + s0 * (y1 - y0);
            knots.push((y1.clone(), v1));
            slopes.push(s1.clone());
        }
        let f = PiecewiseLinear { knots, slopes }.normalized();
        f.validate()?;
        Ok(f)
    }

    /// Through the points `(0,0) = p_0 < p_1 < ...`, continuing with `final_slope`.
    fn from_points(points: &[(Rat, Rat)], final_slope: Rat) -> Self {
        let mut slopes: Vec<Rat> = points
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .collect();
        slopes.push(final_slope);
        PiecewiseLinear { knots: points.to_vec(), slopes }.normalized()
    }

    fn normalized(mut self) -> Self {
        let mut i = 1;
        while i < self.slopes.len() {
            if self.slopes[i] == self.slopes[i - 1] {
                self.slopes.remove(i);
                self.knots.remove(i);
            } else {
                i += 1;
            }
        }
        self
    }

    /// Convexity, positivity, identity on `[−1,0]` and continuity at every knot.
    pub fn validate(&self) -> Result<()> {
        if self.knots.first() != Some(&(Rat::zero(), Rat::zero())) {
            return Err(CoreError::InvalidPsi("must pass through (0, 0)".into()));
        }
        if !self.slopes[0].is_positive() {
            return Err(CoreError::InvalidPsi("slopes must be positive".into()));
        }
        if self.slopes.windows(2).any(|w| w[1] < w[0]) {
            return Err(CoreError::InvalidPsi("slopes must be non-decreasing".into()));
        }
        for (i, w) in self.knots.windows(2).enumerate() {
            let left = &w[0].1 + &self.slopes[i] * (&w[1].0 - &w[0].0);
            if left != w[1].1 {
                return Err(CoreError::InvalidPsi(format!("discontinuous at y = {}", w[1].0)));
            }
        }
        Ok(())
    }

    pub fn final_slope(&self) -> &Rat {
        self.slopes.last().unwrap()
    }

    /// Points `y > 0` where the slope changes.
    pub fn breakpoints(&self) -> Vec<Rat> {
        self.knots.iter().skip(1).map(|(y, _)| y.clone()).collect()
    }

    pub fn slopes(&self) -> &[Rat] {
        &self.slopes
    }

    pub fn eval(&self, y: &Rat) -> Rat {
        if !y.is_positive() {
            return y.clone();
        }
        let i = self.knots.iter().rposition(|(k, _)| k <= y).unwrap();
        let (ky, kv) = &self.knots[i];
        kv + &self.slopes[i] * (y - ky)
    }

    /// Inverse; defined since the function is strictly increasing.
    pub fn preimage(&self, x: &Rat) -> Rat {
        if !x.is_positive() {
            return x.clone();
        }
        let i = self.knots.iter().rposition(|(_, v)| v <= x).unwrap();
        let (ky, kv) = &self.knots[i];
        ky + (x - kv) / &self.slopes[i]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PiecewiseLinear) -> PiecewiseLinear {
        let mut ys: Vec<Rat> = inner.breakpoints();
        ys.extend(self.breakpoints().iter().map(|b| inner.preimage(b)));
        ys.sort();
        ys.dedup();
        let mut points = vec![(Rat::zero(), Rat::zero())];
        points.extend(ys.into_iter().map(|y| {
            let v = self.eval(&inner.eval(&y));
            (y, v)
        }));
        PiecewiseLinear::from_points(&points, self.final_slope() * inner.final_slope())
    }

    /// All pieces from `−1`; the last has `to = None`.
    pub fn pieces(&self) -> Vec<Piece> {
        let mut out = vec![Piece { from: int(-1), to: Some(Rat::zero()), slope: Rat::one(), intercept: Rat::zero() }];
        for (i, (y, v)) in self.knots.iter().enumerate() {
            out.push(Piece {
                from: y.clone(),
                to: self.knots.get(i + 1).map(|k| k.0.clone()),
                slope: self.slopes[i].clone(),
                intercept: v - &self.slopes[i] * y,
            });
        }
        out
    }
}

impl Serialize for PiecewiseLinear {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct P {
            from: String,
            to: String,
            slope: String,
            intercept: String,
        }
        let pieces: Vec<P> = self
            .pieces()
            .into_iter()
            .map(|p| P {
                from: p.from.to_string(),
                to: p.to.map_or_else(|| "inf".to_string(), |t| t.to_string()),
                slope: p.slope.to_string(),
                intercept: p.intercept.to_string(),
            })
            .collect();
        let mut st = s.serialize_struct("PiecewiseLinear", 1)?;
        st.serialize_field("pieces", &pieces)?;
        st.end()
    }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(CoreError::HypothesisFailed(msg()))
    }
}

fn check_e(p: u64, e: u64) -> Result<()> {
    require(e >= 1, || "E must be positive".into())?;
    require(!e.is_multiple_of(p), || format!("p = {p} divides E = {e}"))
}

/// `m` with `w(j) ∈ (w0 q^{m+1}, w0 q^m)`, or an error on an endpoint.
pub fn wild_index(w_j: &Rat, w0: &Rat, q: u64) -> Result<u64> {
    require(w0.is_negative(), || format!("w0 = {w0} must be negative"))?;
    require(*w_j < w0 * uint(q), || format!("w(j) = {w_j} is not below w0·q = {}", w0 * uint(q)))?;
    let mut m = 1u64;
    while *w_j <= w0 * rat_pow(q, m + 1) {
        m += 1;
    }
    if *w_j == w0 * rat_pow(q, m) {
        return Err(CoreError::Boundary(format!("w(j) = w0·q^{m}")));
    }
    Ok(m)
}

/// `r_n = (−w(j) + w0 q^n)/(q − 1)`.
pub fn wild_break(w_j: &Rat, w0: &Rat, q: u64, n: u64) -> Rat {
    (-w_j + w0 * rat_pow(q, n)) / uint(q - 1)
}

/// The `m + 2`-piece ψ of the wild extension at the infinite place.
pub fn psi_infinite_wild(w_j: &Rat, w0: &Rat, e: u64, q: u64) -> Result<PiecewiseLinear> {
    let p = char_of(q);
    require(w_j.is_integer(), || format!("w(j) = {w_j} is not an integer"))?;
    require(!divides(p, w_j), || format!("p divides w(j): p = {p}, w(j) = {w_j}"))?;
    check_e(p, e)?;
    let m = wild_index(w_j, w0, q)?;
    let e = uint(e);
    let mut pieces = vec![(Rat::zero(), e.clone())];
    for j in 1..=m {
        pieces.push((wild_break(w_j, w0, q, m - j + 1), &e * rat_pow(q, j)));
    }
    PiecewiseLinear::from_slopes(&pieces)
}

/// ψ of the splitting field of `X^{q^s} + aX + c`-type polynomials with one segment.
pub fn psi_splitting_field(q_pow: u64, v_c: &Rat, v_a: &Rat, e: u64) -> Result<PiecewiseLinear> {
    let p = char_of(q_pow);
    require(q_pow >= 2, || "q^s must be at least 2".into())?;
    require(!divides(p, v_c), || format!("p = {p} divides v_c = {v_c}"))?;
    let qs = uint(q_pow);
    require(-v_c / &qs < v_a - v_c, || "polygon has more than one segment".into())?;
    check_e(p, e)?;
    let r = v_a * &qs / (&qs - Rat::one()) - v_c;
    require(r.is_positive(), || format!("R = {r} is not positive"))?;
    let e = uint(e);
    PiecewiseLinear::from_slopes(&[(Rat::zero(), e.clone()), (r, e * qs)])
}

/// ψ at a finite place of bad reduction, `R = −w(j)/(q − 1)`.
pub fn psi_finite_bad(q: u64, d: u64, n: u64, e: u64, w_j: &Rat) -> Result<PiecewiseLinear> {
    let p = char_of(q);
    check_e(p, e)?;
    let r = -w_j / uint(q - 1);
    require(r.is_positive(), || "good reduction: tame".into())?;
    require(!divides(p, w_j), || format!("p divides w(j): p = {p}, w(j) = {w_j}"))?;
    let e = uint(e);
    PiecewiseLinear::from_slopes(&[(Rat::zero(), e.clone()), (r, e * rat_pow(q, n * d))])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationBreak {
    pub upper: Rat,
    pub lower: Rat,
    pub order: u64,
}

impl Serialize for FiltrationBreak {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FiltrationBreak", 3)?;
        st.serialize_field("upper", &self.upper.to_string())?;
        st.serialize_field("lower", &self.lower.to_string())?;
        st.serialize_field("order", &self.order)?;
        st.end()
    }
}

/// `#G^0` and, from each knot `y` on, the order `#G^y` valid up to the next knot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub g0_order: u64,
    pub breaks: Vec<FiltrationBreak>,
}

impl FiltrationReport {
    pub fn orders(&self) -> Vec<u64> {
        self.breaks.iter().map(|b| b.order).collect()
    }
}

pub fn filtration_from_psi(f: &PiecewiseLinear) -> Result<FiltrationReport> {
    let g0 = f.final_slope();
    let g0_order = as_u64(g0).ok_or_else(|| CoreError::InvalidPsi(format!("final slope {g0} is not a positive integer")))?;
    let mut breaks = Vec::new();
    for ((y, v), s) in f.knots.iter().zip(&f.slopes) {
        let ratio = g0 / s;
        let order = as_u64(&ratio)
            .filter(|o| *o > 0)
            .ok_or_else(|| CoreError::InvalidPsi(format!("#G⁰/slope = {ratio} is not an integer")))?;
        breaks.push(FiltrationBreak { upper: y.clone(), lower: v.clone(), order });
    }
    Ok(FiltrationReport { g0_order, breaks })
}

/// Rebuilds ψ from group orders: slope `#G⁰ / #G^y` on each piece.
pub fn psi_from_filtration(rep: &FiltrationReport) -> Result<PiecewiseLinear> {
    let g0 = uint(rep.g0_order);
    let pieces: Vec<(Rat, Rat)> = rep
        .breaks
        .iter()
        .map(|b| {
            if b.order == 0 || !rep.g0_order.is_multiple_of(b.order) {
                Err(CoreError::InvalidPsi(format!("order {} does not divide {}", b.order, rep.g0_order)))
            } else {
                Ok((b.upper.clone(), &g0 / uint(b.order)))
            }
        })
        .collect::<Result<_>>()?;
    PiecewiseLinear::from_slopes(&pieces)
}

/// `rank T^{G^y}` is `rank` on `(from, next from]`; the last step runs to `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankStep {
    pub from: Rat,
    pub rank: usize,
}

/// `∫_0^∞ (r − rank T^{G^y}) dy` for a step function.
pub fn conductor_from_breaks(steps: &[RankStep], r: usize) -> Result<Rat> {
    let mut total = Rat::zero();
    for (i, st) in steps.iter().enumerate() {
        if st.rank > r {
            return Err(CoreError::InvalidPsi(format!("rank {} exceeds r = {r}", st.rank)));
        }
        if i > 0 && st.rank < steps[i - 1].rank {
            return Err(CoreError::InvalidPsi("rank function must be non-decreasing".into()));
        }
        match steps.get(i + 1) {
            Some(next) => {
                if next.from <= st.from {
                    return Err(CoreError::InvalidPsi("steps out of order".into()));
                }
                total += uint((r - st.rank) as u64) * (&next.from - &st.from);
            }
            None if st.rank != r => {
                return Err(CoreError::InvalidPsi("rank never reaches r: integral diverges".into()))
            }
            None => {}
        }
    }
    Ok(total)
}

/// Rank-2 step function from a ψ: the wild group acts on one rank-1 piece until
/// the last break, then `G^y` is trivial.
pub fn rank2_steps_from_psi(f: &PiecewiseLinear) -> Vec<RankStep> {
    match f.breakpoints().last() {
        None => vec![RankStep { from: Rat::zero(), rank: 2 }],
        Some(last) => vec![RankStep { from: Rat::zero(), rank: 1 }, RankStep { from: last.clone(), rank: 2 }],
    }
}
