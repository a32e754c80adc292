//! Multivariate polynomials with rational coefficients, and a small parser
//! for vector fields written as `y1^2 - y2; y1*y2`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Polynomial in `nvars` variables; monomials are exponent vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Poly {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, v) in self.terms() {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, a) in self.terms() {
            for (f, b) in other.terms() {
                let g = e.iter().zip(f).map(|(x, y)| x + y).collect();
                out.add_term(g, a * b);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::constant(self.nvars, Rational::one()), |acc, _| acc.mul(self))
    }

    /// `∂/∂y_i`
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in self.terms() {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c * Rational::from_integer(e[i].into()));
        }
        out
    }

    /// Value at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in self.terms() {
            let mut m = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    m *= x;
                }
            }
            acc += m;
        }
        acc
    }

    pub fn parse(text: &str, nvars: usize) -> Result<Poly> {
        let mut p = Parser { src: text.chars().collect(), pos: 0, nvars };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(out)
    }
}

fn var_name(nvars: usize, i: usize) -> String {
    if nvars == 1 {
        "y".to_string()
    } else {
        format!("y{}", i + 1)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.iter().sum::<u32>().cmp(&a.0.iter().sum::<u32>()).then(b.0.cmp(a.0)));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = rational::is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i == 0, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(var_name(self.nvars, v)),
                    _ => factors.push(format!("{}^{k}", var_name(self.nvars, v))),
                }
            }
            if factors.is_empty() || !abs.is_one() {
                factors.insert(0, abs.to_string());
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Recursive descent over `+ - * ^ ( )`, rational literals and variables
/// `y` (one variable) or `y1 … yd`.
struct Parser {
    src: Vec<char>,
    pos: usize,
    nvars: usize,
}

impl Parser {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                self.term()?.scale(&-Rational::one())
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                // implicit product: `2y`, `y1 y2`, `3(y+1)`
                Some(c) if c == 'y' || c == '(' => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.digits().ok_or_else(|| self.error("expected an exponent"))?;
            let k: u32 = k.parse().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.src[start..self.pos].iter().collect())
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('y') => {
                self.pos += 1;
                let index = match self.digits() {
                    Some(d) => d.parse::<usize>().map_err(|_| self.error("bad variable index"))?,
                    None if self.nvars == 1 => 1,
                    None => return Err(self.error("variables are y1 … yd in dimension d > 1")),
                };
                if index == 0 || index > self.nvars {
                    return Err(self.error("variable index out of range"));
                }
                Ok(Poly::var(self.nvars, index - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits().unwrap_or_default();
                let mut text = num;
                // `3/4` is a literal; `/` does not occur elsewhere
                if self.src.get(self.pos) == Some(&'/') {
                    self.pos += 1;
                    let den = self.digits().ok_or_else(|| self.error("expected a denominator"))?;
                    text = format!("{text}/{den}");
                }
                let c = rational::parse(&text).map_err(|_| self.error("bad rational literal"))?;
                Ok(Poly::constant(self.nvars, c))
            }
            _ => Err(self.error("expected a number, a variable or '('")),
        }
    }
}

/// Components separated by `;`, one per dimension.
pub fn parse_field(text: &str, dim: usize) -> Result<Vec<Poly>> {
    let parts: Vec<&str> = text.split(';').collect();
    if parts.len() != dim {
        return Err(Error::Dimension { expected: dim, got: parts.len() });
    }
    parts.into_iter().map(|p| Poly::parse(p, dim)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn parse_and_print() {
        let p = Poly::parse("y^2", 1).unwrap();
        assert_eq!(p.to_string(), "y^2");
        let q = Poly::parse("1/2*y1^2 - y2 + 3", 2).unwrap();
        assert_eq!(q.to_string(), "1/2*y1^2 - y2 + 3");
        assert_eq!(Poly::parse(&q.to_string(), 2).unwrap(), q);
        assert_eq!(Poly::parse("2(y+1)^2", 1).unwrap().to_string(), "2*y^2 + 4*y + 2");
        assert!(Poly::parse("y3", 2).is_err());
        assert!(Poly::parse("y +", 1).is_err());
    }

    #[test]
    fn calculus() {
        let p = Poly::parse("y1^2*y2 + y2", 2).unwrap();
        assert_eq!(p.derivative(0).to_string(), "2*y1*y2");
        assert_eq!(p.derivative(1).to_string(), "y1^2 + 1");
        assert_eq!(p.eval(&[int(2), rat(1, 2)]), rat(5, 2));
        let s = p.sub(&p);
        assert!(s.is_zero());
    }

    #[test]
    fn fields() {
        let f = parse_field("y1*y2; -y1", 2).unwrap();
        assert_eq!(f.len(), 2);
        assert!(parse_field("y1", 2).is_err());
    }
}
