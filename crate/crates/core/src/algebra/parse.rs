//! Parser for polynomial and rational-function strings such as
//! `"t^3+t+1"`, `"(t^2+1)/(t+1)"` or `"g^2*t+1"`.
//!
//! Grammar: sums of products of powers; juxtaposition multiplies (`2t`).
//! Integer literals map into the prime subfield, `g` is the fixed generator.

use super::field::Field;
use super::poly::PolyA;
use super::ratfunc::RatFunc;
use crate::error::{CoreError, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(cs[st..i].iter().collect()));
        } else if c.is_ascii_alphabetic() {
            out.push(Tok::Ident(c.to_string()));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(CoreError::Parse(format!("unexpected '{c}' in '{s}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    field: &'a Field,
    var: char,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> CoreError {
        CoreError::Parse(format!("{msg} in '{}'", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = if self.eat('-') { -&self.term()? } else { self.term()? };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let d = self.power()?;
                acc = acc.div(&d)?;
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_)) | Some(Tok::Op('('))) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e: u64 = match self.peek() {
            Some(Tok::Num(n)) => n.parse().map_err(|_| self.err("bad exponent"))?,
            _ => return Err(self.err("expected exponent")),
        };
        self.pos += 1;
        let r = base.pow(e);
        if neg {
            r.inv()
        } else {
            Ok(r)
        }
    }

    fn atom(&mut self) -> Result<RatFunc> {
        let f = self.field;
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let p = f.p() as u64;
                let v = n.bytes().fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p);
                Ok(RatFunc::constant(f, f.from_int(v as i64)))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                if id.starts_with(self.var) {
                    Ok(RatFunc::t(f))
                } else if id == "g" {
                    Ok(RatFunc::constant(f, f.generator()))
                } else {
                    Err(self.err(&format!("unknown symbol '{id}'")))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("missing ')'"));
                }
                Ok(e)
            }
            _ => Err(self.err("unexpected end or token")),
        }
    }
}

/// Parses an element of F in the variable `var`.
pub fn parse_ratfunc_in(field: &Field, s: &str, var: char) -> Result<RatFunc> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(CoreError::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, field, var, src: s };
    let r = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(r)
}

pub fn parse_ratfunc(field: &Field, s: &str) -> Result<RatFunc> {
    parse_ratfunc_in(field, s, 't')
}

pub fn parse_poly(field: &Field, s: &str) -> Result<PolyA> {
    let r = parse_ratfunc(field, s)?;
    r.as_poly()
        .cloned()
        .ok_or_else(|| CoreError::Parse(format!("'{s}' is not a polynomial")))
}

/// Parses a modulus over 𝔽_p written in `x`, returning ascending integer coefficients.
pub fn parse_prime_modulus(p: u32, s: &str) -> Result<Vec<u32>> {
    let fp = super::field::FqField::prime(p)?;
    let r = parse_ratfunc_in(&fp, s, 'x')?;
    let poly = r
        .as_poly()
        .ok_or_else(|| CoreError::Parse(format!("modulus '{s}' is not a polynomial")))?;
    Ok(poly.coeffs().iter().map(|c| c.index() as u32).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FqField;

    #[test]
    fn canonical_round_trip() {
        let f = FqField::prime(2).unwrap();
        for s in ["t^3+t+1", "(t^2+1)/(t+1)", "1/t", "t/(t+1)", "0", "1"] {
            let r = parse_ratfunc(&f, s).unwrap();
            let back = parse_ratfunc(&f, &r.to_string()).unwrap();
            assert_eq!(r, back);
        }
        assert_eq!(parse_ratfunc(&f, "(t^2+1)/(t+1)").unwrap().to_string(), "t+1");
        assert_eq!(parse_ratfunc(&f, "(t^2+t+1)/(t+1)").unwrap().to_string(), "(t^2+t+1)/(t+1)");
    }

    #[test]
    fn coefficients_and_generators() {
        let f3 = FqField::prime(3).unwrap();
        assert_eq!(parse_poly(&f3, "2t^2 + 4t - 1").unwrap().to_string(), "2*t^2+t+2");
        let f4 = FqField::new(2, 2, None).unwrap();
        let a = parse_poly(&f4, "g^2*t+g").unwrap();
        assert_eq!(a.to_string(), "g^2*t+g");
        assert_eq!(parse_poly(&f4, &a.to_string()).unwrap(), a);
        assert!(parse_poly(&f4, "1/t").is_err());
        assert!(parse_poly(&f4, "t+").is_err());
        assert_eq!(parse_prime_modulus(2, "x^4+x+1").unwrap(), vec![1, 1, 0, 0, 1]);
    }
}
