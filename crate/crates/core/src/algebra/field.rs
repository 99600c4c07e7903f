//! Finite fields 𝔽_q = 𝔽_p[x]/(modulus) with table-driven arithmetic.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` where
//! `c_i` is the coefficient of `x^i` in the canonical representative.

use std::fmt;
use std::sync::Arc;

use crate::error::{CoreError, Result};

/// Largest supported field order; keeps the `q × q` tables small.
pub const MAX_Q: u32 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub(crate) u16);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub type Field = Arc<FqField>;

pub struct FqField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    generator: Fq,
    log: Vec<u32>,
    exp: Vec<u16>,
}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.k, self.modulus)
    }
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FqField {}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

// Small dense polynomial helpers over 𝔽_p, ascending coefficients.

fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = fp_inv(b[db], p);
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            let j = top - db + i;
            r[j] = (r[j] + p * p - c * bi % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|x| a * x % p == 1).expect("nonzero element of a prime field")
}

fn fp_is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for dg in 1..=deg / 2 {
        let count = p.pow(dg as u32);
        for code in 0..count {
            let mut g = digits(code, p, dg);
            g.push(1);
            if fp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut code: u32, p: u32, len: usize) -> Vec<u32> {
    let mut v = Vec::with_capacity(len);
    for _ in 0..len {
        v.push(code % p);
        code /= p;
    }
    v
}

impl FqField {
    /// Builds 𝔽_{p^k}. Without a modulus, picks the smallest monic irreducible
    /// (ordered by the integer code of its lower coefficients) whose root
    /// generates the multiplicative group.
    pub fn new(p: u32, k: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        if !is_prime(p) {
            return Err(CoreError::InvalidField(format!("p = {p} is not prime")));
        }
        if k == 0 {
            return Err(CoreError::InvalidField("k must be positive".into()));
        }
        let q = p
            .checked_pow(k)
            .filter(|q| *q <= MAX_Q)
            .ok_or_else(|| CoreError::InvalidField(format!("q = {p}^{k} exceeds {MAX_Q}")))?;
        match modulus {
            Some(m) => {
                let mut m: Vec<u32> = m.into_iter().map(|c| c % p).collect();
                fp_trim(&mut m);
                if m.len() != k as usize + 1 || m[k as usize] != 1 {
                    return Err(CoreError::InvalidField(format!(
                        "modulus must be monic of degree {k}"
                    )));
                }
                if !fp_is_irreducible(&m, p) {
                    return Err(CoreError::NotIrreducible("field modulus".into()));
                }
                Ok(Arc::new(Self::build(p, k, q, m)))
            }
            None => {
                if k == 1 {
                    return Ok(Arc::new(Self::build(p, 1, q, vec![0, 1])));
                }
                for code in 0..q {
                    let mut m = digits(code, p, k as usize);
                    m.push(1);
                    if !fp_is_irreducible(&m, p) {
                        continue;
                    }
                    let f = Self::build(p, k, q, m);
                    if f.generator == Fq(p as u16) {
                        return Ok(Arc::new(f));
                    }
                }
                Err(CoreError::InvalidField("no primitive modulus found".into()))
            }
        }
    }

    /// The prime field 𝔽_p.
    pub fn prime(p: u32) -> Result<Field> {
        Self::new(p, 1, None)
    }

    fn build(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> Self {
        let qs = q as usize;
        let ku = k as usize;
        let decode = |e: usize| digits(e as u32, p, ku);
        let encode = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &c| acc * p + c) as u16;
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        let mut neg = vec![0u16; qs];
        for a in 0..qs {
            let da = decode(a);
            neg[a] = encode(&da.iter().map(|&c| (p - c) % p).collect::<Vec<_>>());
            for b in 0..qs {
                let db = decode(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = encode(&s);
                let mut prod = vec![0u32; 2 * ku - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = fp_rem(&prod, &modulus, p);
                r.resize(ku, 0);
                mul[a * qs + b] = encode(&r);
            }
        }
        let mut inv = vec![0u16; qs];
        for a in 1..qs {
            inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).expect("field") as u16;
        }
        let order = |g: usize| {
            let mut x = g;
            let mut n = 1;
            while x != 1 {
                x = mul[x * qs + g] as usize;
                n += 1;
            }
            n
        };
        // Prefer the class of x itself when it is primitive.
        let x_class = if ku > 1 { p as usize } else { usize::MAX };
        let gen = if x_class < qs && order(x_class) == qs - 1 {
            x_class
        } else {
            (1..qs).find(|&g| order(g) == qs - 1).expect("cyclic group")
        };
        let mut exp = vec![0u16; qs - 1];
        let mut log = vec![u32::MAX; qs];
        let mut x = 1usize;
        for (j, slot) in exp.iter_mut().enumerate() {
            *slot = x as u16;
            log[x] = j as u32;
            x = mul[x * qs + gen] as usize;
        }
        FqField { p, k, q, modulus, add, mul, neg, inv, generator: Fq(gen as u16), log, exp }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Fq {
        self.generator
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.add[a.index() * self.q as usize + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.mul[a.index() * self.q as usize + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.neg[a.index()])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.is_zero() {
            Err(CoreError::DivisionByZero)
        } else {
            Ok(Fq(self.inv[a.index()]))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p as i64) as u16)
    }

    /// `g^j` for the fixed generator `g`.
    pub fn gen_pow(&self, j: i64) -> Fq {
        let n = (self.q - 1) as i64;
        Fq(self.exp[j.rem_euclid(n) as usize])
    }

    /// Discrete log base `g`; `None` for zero.
    pub fn log(&self, a: Fq) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.index()])
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q as u16).map(Fq)
    }

    pub fn element(&self, code: u32) -> Fq {
        assert!(code < self.q, "element code out of range");
        Fq(code as u16)
    }

    /// Integers for prime fields, `g^j` powers otherwise.
    pub fn fmt_elem(&self, a: Fq) -> String {
        if self.k == 1 {
            return a.0.to_string();
        }
        match self.log(a) {
            None => "0".into(),
            Some(0) => "1".into(),
            Some(1) => "g".into(),
            Some(j) => format!("g^{j}"),
        }
    }
}
