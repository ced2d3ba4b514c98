//! Text form of polynomials: `3*x0^2*x1 - 1/2*x1^3`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{ExponentVector, HomogeneousPoly, Ring};
use crate::Rational;

pub const GRAMMAR: &str = "\
polynomial := term (('+'|'-') term)*      (a leading '-' is allowed)
term       := coef | [coef ['*']] mono
coef       := integer | integer '/' integer
mono       := var ['^' integer] ('*' var ['^' integer])*
var        := 'x' index   (point ring)   |   'a' index   (dual ring)
whitespace is ignored; every term must have the same total degree";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    pub message: String,
    pub offset: usize,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { message: message.into(), offset: self.pos })
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn small(&mut self) -> Result<u32, ParseError> {
        let at = self.pos;
        let n = self.number()?;
        u32::try_from(n).map_err(|_| ParseError { message: "number too large".into(), offset: at })
    }

    fn coef(&mut self) -> Result<Option<Rational>, ParseError> {
        if !matches!(self.peek(), Some(b'0'..=b'9')) {
            return Ok(None);
        }
        let num = self.number()?;
        if self.eat(b'/') {
            let den = self.number()?;
            if den.is_zero() {
                return self.err("zero denominator");
            }
            Ok(Some(Rational::new(num, den)))
        } else {
            Ok(Some(Rational::from_integer(num)))
        }
    }

    /// Returns `(ring, var, exponent)` factors.
    fn mono(&mut self) -> Result<Vec<(Ring, usize, u32)>, ParseError> {
        let mut factors = Vec::new();
        loop {
            let ring = match self.peek() {
                Some(b'x') => Ring::Point,
                Some(b'a') => Ring::Dual,
                _ => return self.err("expected a variable"),
            };
            self.pos += 1;
            let var = self.small()? as usize;
            let exp = if self.eat(b'^') { self.small()? } else { 1 };
            factors.push((ring, var, exp));
            if !self.eat(b'*') {
                return Ok(factors);
            }
        }
    }
}

/// Parse a homogeneous polynomial with rational coefficients.
///
/// The ring is read off the variable letters. `num_vars` fixes the number of
/// variables; when absent it is one more than the largest index used (at
/// least one).
pub fn parse_poly(s: &str, num_vars: Option<usize>) -> Result<HomogeneousPoly<Rational>, ParseError> {
    let compact: Vec<u8> = s.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
    let mut p = Parser { bytes: &compact, pos: 0 };
    if compact.is_empty() {
        return p.err("empty polynomial");
    }

    let mut raw: Vec<(Rational, Vec<(Ring, usize, u32)>, usize)> = Vec::new();
    let mut first = true;
    while p.pos < compact.len() {
        let negative = if p.eat(b'-') {
            true
        } else if p.eat(b'+') || first {
            false
        } else {
            return p.err("expected '+' or '-'");
        };
        first = false;
        let at = p.pos;
        let coef = p.coef()?;
        let factors = match (&coef, p.peek()) {
            (Some(_), Some(b'*')) => {
                p.pos += 1;
                p.mono()?
            }
            (Some(_), Some(b'x' | b'a')) | (None, _) => p.mono()?,
            (Some(_), _) => Vec::new(),
        };
        let mut c = coef.unwrap_or_else(Rational::one);
        if negative {
            c = -c;
        }
        raw.push((c, factors, at));
    }

    let mut ring = None;
    let mut max_var = 0;
    for (_, factors, at) in &raw {
        for &(r, v, _) in factors {
            if ring.is_some_and(|seen| seen != r) {
                return Err(ParseError { message: "mixes point and dual variables".into(), offset: *at });
            }
            ring = Some(r);
            max_var = max_var.max(v + 1);
        }
    }
    let n = match num_vars {
        Some(n) if n < max_var => {
            return Err(ParseError {
                message: format!("variable index {} exceeds the {n} declared variables", max_var - 1),
                offset: 0,
            })
        }
        Some(0) => return Err(ParseError { message: "need at least one variable".into(), offset: 0 }),
        Some(n) => n,
        None => max_var.max(1),
    };
    let ring = ring.unwrap_or(Ring::Point);

    let mut terms = Vec::with_capacity(raw.len());
    let mut degree = None;
    for (c, factors, at) in raw {
        let mut e = vec![0u32; n];
        for (_, v, k) in factors {
            e[v] += k;
        }
        let m = ExponentVector::new(e);
        let d = m.degree();
        if degree.is_some_and(|deg| deg != d) {
            return Err(ParseError { message: "polynomial is not homogeneous".into(), offset: at });
        }
        degree = Some(d);
        terms.push((m, c));
    }
    Ok(HomogeneousPoly::from_terms(n, degree.unwrap_or(0), ring, terms))
}

fn format_mono(m: &ExponentVector, ring: Ring) -> String {
    let prefix = ring.var_prefix();
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { format!("{prefix}{v}") } else { format!("{prefix}{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// Canonical text form; terms appear in basis order, no whitespace.
pub fn format_poly(p: &HomogeneousPoly<Rational>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        if c.is_negative() {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let abs = c.abs();
        let mono = format_mono(m, p.ring());
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}
