//! Rational linear combinations of forests, their tensor powers, and
//! truncated linear forms on the forest basis.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::trees::{self, Forest, Tree};

/// The four coproducts on forests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algebra {
    /// Edge-contraction Hopf algebra, unit `•`.
    H,
    /// `H` with the σ-normalized coproduct.
    HSigma,
    /// Vertex-graded bialgebra of spanning subforests, unit `∅`.
    HTilde,
    /// Connes–Kreimer Hopf algebra, unit `∅`.
    CK,
}

impl Algebra {
    pub fn grading(self) -> Grading {
        match self {
            Algebra::H | Algebra::HSigma => Grading::Edge,
            Algebra::HTilde | Algebra::CK => Grading::Vertex,
        }
    }

    pub fn unit(self) -> Forest {
        match self.grading() {
            Grading::Edge => Forest::bullet(),
            Grading::Vertex => Forest::empty(),
        }
    }

    /// Product of two basis forests.
    pub fn multiply(self, a: &Forest, b: &Forest) -> Forest {
        match self.grading() {
            Grading::Edge => a.h_product(b),
            Grading::Vertex => a.concat(b),
        }
    }

    /// Every basis forest of the given degree.
    pub fn basis(self, degree: usize) -> Vec<Forest> {
        match self.grading() {
            Grading::Edge => trees::h_forests_with_edges(degree),
            Grading::Vertex => trees::forests_with_vertices(degree),
        }
    }

    /// Every tree of the given degree (for `H` this excludes nothing: degree
    /// 0 is the unit `•`).
    pub fn trees_of_degree(self, degree: usize) -> Vec<Tree> {
        match self.grading() {
            Grading::Edge => trees::trees_with_vertices(degree + 1).as_ref().clone(),
            Grading::Vertex => trees::trees_with_vertices(degree).as_ref().clone(),
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::H => "H",
            Algebra::HSigma => "H_sigma",
            Algebra::HTilde => "Htilde",
            Algebra::CK => "CK",
        })
    }
}

impl FromStr for Algebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "h" => Ok(Algebra::H),
            "h_sigma" | "hsigma" | "sigma" => Ok(Algebra::HSigma),
            "htilde" | "h_tilde" | "tilde" => Ok(Algebra::HTilde),
            "ck" | "connes_kreimer" => Ok(Algebra::CK),
            _ => Err(Error::Malformed(format!("unknown algebra {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grading {
    Edge,
    Vertex,
}

impl Grading {
    pub fn degree(self, s: &Forest) -> usize {
        match self {
            Grading::Edge => s.edges(),
            Grading::Vertex => s.vertices(),
        }
    }

    pub fn tree_degree(self, t: &Tree) -> usize {
        match self {
            Grading::Edge => t.edges(),
            Grading::Vertex => t.vertices(),
        }
    }
}

fn write_signed_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (String, &'a Rational)>,
{
    let mut first = true;
    for (body, c) in terms {
        let neg = rational::is_negative(c);
        let abs = if neg { -c.clone() } else { c.clone() };
        match (first, neg) {
            (true, true) => f.write_str("−")?,
            (true, false) => {}
            (false, true) => f.write_str(" − ")?,
            (false, false) => f.write_str(" + ")?,
        }
        write!(f, "{}{}", rational::coefficient_prefix(&abs), body)?;
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Finite rational combination of forests.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ForestSum {
    terms: BTreeMap<Forest, Rational>,
}

impl ForestSum {
    pub fn zero() -> ForestSum {
        ForestSum::default()
    }

    pub fn from_forest(s: Forest) -> ForestSum {
        ForestSum::term(s, Rational::one())
    }

    pub fn term(s: Forest, c: Rational) -> ForestSum {
        let mut out = ForestSum::zero();
        out.add_term(s, c);
        out
    }

    pub fn add_term(&mut self, s: Forest, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(s) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &ForestSum, c: &Rational) {
        for (s, v) in &other.terms {
            self.add_term(s.clone(), v * c);
        }
    }

    pub fn coeff(&self, s: &Forest) -> Rational {
        self.terms.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Forest, &Rational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rational) -> ForestSum {
        let mut out = ForestSum::zero();
        out.add_scaled(self, c);
        out
    }

    /// Bilinear extension of a product on basis forests.
    pub fn product_with(&self, other: &ForestSum, mul: impl Fn(&Forest, &Forest) -> Forest) -> ForestSum {
        let mut out = ForestSum::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(mul(a, b), x * y);
            }
        }
        out
    }

    /// Product extending forest concatenation.
    pub fn mul(&self, other: &ForestSum) -> ForestSum {
        self.product_with(other, Forest::concat)
    }

    /// Product in `H`, where `•` is the unit.
    pub fn h_mul(&self, other: &ForestSum) -> ForestSum {
        self.product_with(other, Forest::h_product)
    }

    /// Applies a linear map given on basis forests.
    pub fn map_linear<F>(&self, mut f: F) -> Result<ForestSum>
    where
        F: FnMut(&Forest) -> Result<ForestSum>,
    {
        let mut out = ForestSum::zero();
        for (s, c) in &self.terms {
            out.add_scaled(&f(s)?, c);
        }
        Ok(out)
    }

    /// Reads the printed form back: `−[[[]]] + 2·[[]]·[[]]`, `0`. Both `−`
    /// and `-` are accepted as minus signs.
    pub fn parse(text: &str) -> Result<ForestSum> {
        let text = text.trim();
        let mut out = ForestSum::zero();
        if text == "0" {
            return Ok(out);
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut negative = false;
        let mut current = String::new();
        for ch in text.chars() {
            match ch {
                '+' | '-' | '−' => {
                    if !current.trim().is_empty() {
                        pieces.push((negative, std::mem::take(&mut current)));
                    } else if !pieces.is_empty() || negative {
                        return Err(Error::Malformed(format!("repeated sign in {text:?}")));
                    }
                    negative = ch != '+';
                }
                _ => current.push(ch),
            }
        }
        if current.trim().is_empty() {
            return Err(Error::Malformed(format!("dangling sign in {text:?}")));
        }
        pieces.push((negative, current));
        for (negative, body) in pieces {
            let body = body.trim();
            let (c, forest) = match body.split_once('·') {
                Some((head, tail)) if !head.trim_start().starts_with(['[', '∅']) => (rational::parse(head)?, tail),
                _ => (Rational::one(), body),
            };
            let c = if negative { -c } else { c };
            out.add_term(Forest::parse(forest)?, c);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.terms
                .iter()
                .map(|(s, c)| (s.to_string(), serde_json::Value::String(rational::format(c))))
                .collect(),
        )
    }
}

impl std::ops::Add for &ForestSum {
    type Output = ForestSum;
    fn add(self, rhs: &ForestSum) -> ForestSum {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl std::ops::Sub for &ForestSum {
    type Output = ForestSum;
    fn sub(self, rhs: &ForestSum) -> ForestSum {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl std::ops::Neg for &ForestSum {
    type Output = ForestSum;
    fn neg(self) -> ForestSum {
        self.scale(&-Rational::one())
    }
}

impl From<Forest> for ForestSum {
    fn from(s: Forest) -> Self {
        ForestSum::from_forest(s)
    }
}

impl From<Tree> for ForestSum {
    fn from(t: Tree) -> Self {
        ForestSum::from_forest(Forest::single(t))
    }
}

impl fmt::Display for ForestSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_terms(f, self.terms.iter().map(|(s, c)| (s.to_string(), c)))
    }
}

impl fmt::Debug for ForestSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// How a tensor slot multiplies: `H` slots drop `•` factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    H,
    Plain,
}

impl Slot {
    pub fn of(algebra: Algebra) -> Slot {
        match algebra.grading() {
            Grading::Edge => Slot::H,
            Grading::Vertex => Slot::Plain,
        }
    }

    pub fn multiply(self, a: &Forest, b: &Forest) -> Forest {
        match self {
            Slot::H => a.h_product(b),
            Slot::Plain => a.concat(b),
        }
    }

    pub fn unit(self) -> Forest {
        match self {
            Slot::H => Forest::bullet(),
            Slot::Plain => Forest::empty(),
        }
    }
}

/// Rational combination of tensors of forests, all of the same arity.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorSum {
    arity: usize,
    terms: BTreeMap<Vec<Forest>, Rational>,
}

impl TensorSum {
    pub fn zero(arity: usize) -> TensorSum {
        TensorSum { arity, terms: BTreeMap::new() }
    }

    pub fn single(factors: Vec<Forest>, c: Rational) -> TensorSum {
        let mut out = TensorSum::zero(factors.len());
        out.add_term(factors, c);
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_term(&mut self, factors: Vec<Forest>, c: Rational) {
        assert_eq!(factors.len(), self.arity, "tensor arity mismatch");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(factors) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorSum, c: &Rational) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn coeff(&self, factors: &[Forest]) -> Rational {
        self.terms.get(factors).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Forest>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients (the number of terms counted with multiplicity).
    pub fn total_weight(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, b| a + b)
    }

    pub fn scale(&self, c: &Rational) -> TensorSum {
        let mut out = TensorSum::zero(self.arity);
        out.add_scaled(self, c);
        out
    }

    /// Componentwise product, slot `i` multiplying by rule `slots[i]`.
    pub fn product(&self, other: &TensorSum, slots: &[Slot]) -> TensorSum {
        assert_eq!(self.arity, other.arity);
        assert_eq!(slots.len(), self.arity);
        let mut out = TensorSum::zero(self.arity);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let f = a.iter().zip(b).zip(slots).map(|((p, q), s)| s.multiply(p, q)).collect();
                out.add_term(f, x * y);
            }
        }
        out
    }

    /// Replaces each term by `f(term)` scaled by its coefficient.
    pub fn flat_map<F>(&self, arity: usize, mut f: F) -> Result<TensorSum>
    where
        F: FnMut(&[Forest]) -> Result<TensorSum>,
    {
        let mut out = TensorSum::zero(arity);
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(k, c)| {
                    serde_json::json!({
                        "factors": k.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                        "coefficient": rational::format(c),
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for TensorSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = |k: &Vec<Forest>| k.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("⊗");
        write_signed_terms(f, self.terms.iter().map(|(k, c)| (body(k), c)))
    }
}

impl fmt::Debug for TensorSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Generic,
    Infinitesimal,
    Character,
}

/// `max_degree` of functionals that are exact in every degree, such as the
/// dual basis elements and `δ`.
pub const UNBOUNDED: usize = usize::MAX;

/// Degree-truncated linear form on forests.
///
/// Characters and infinitesimal characters store tree values only. Missing
/// values read as zero; constructors check that every tree in range is given.
/// Edge-graded forms treat `•` as the unit of `H` and normalize their input
/// accordingly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Functional {
    grading: Grading,
    kind: Kind,
    max_degree: usize,
    values: BTreeMap<Forest, Rational>,
}

impl Functional {
    pub fn generic(grading: Grading, max_degree: usize, values: BTreeMap<Forest, Rational>) -> Functional {
        let values = values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Functional { grading, kind: Kind::Generic, max_degree, values }
    }

    /// Infinitesimal character from its values on trees (the unit is ignored
    /// and reads as zero).
    pub fn infinitesimal(grading: Grading, max_degree: usize, values: BTreeMap<Tree, Rational>) -> Functional {
        let values = values
            .into_iter()
            .filter(|(t, v)| !v.is_zero() && !(grading == Grading::Edge && t.is_bullet()))
            .map(|(t, v)| (Forest::single(t), v))
            .collect();
        Functional { grading, kind: Kind::Infinitesimal, max_degree, values }
    }

    /// Character from tree values, without checking completeness.
    pub fn character_unchecked(grading: Grading, max_degree: usize, values: BTreeMap<Tree, Rational>) -> Functional {
        let values = values
            .into_iter()
            .filter(|(t, v)| !v.is_zero() && !(grading == Grading::Edge && t.is_bullet()))
            .map(|(t, v)| (Forest::single(t), v))
            .collect();
        Functional { grading, kind: Kind::Character, max_degree, values }
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn is_bounded(&self) -> bool {
        self.max_degree != UNBOUNDED
    }

    pub fn degree(&self, s: &Forest) -> usize {
        self.grading.degree(s)
    }

    /// Same functional, reinterpreted with a smaller truncation degree.
    pub fn truncated(&self, max_degree: usize) -> Functional {
        let max_degree = max_degree.min(self.max_degree);
        let grading = self.grading;
        let values = self
            .values
            .iter()
            .filter(|(s, _)| grading.degree(s) <= max_degree)
            .map(|(s, v)| (s.clone(), v.clone()))
            .collect();
        Functional { grading, kind: self.kind, max_degree, values }
    }

    /// Value on a tree; missing values are zero.
    pub fn tree_value(&self, t: &Tree) -> Result<Rational> {
        self.eval(&Forest::single(t.clone()))
    }

    fn stored(&self, s: &Forest) -> Rational {
        self.values.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, s: &Forest) -> Result<Rational> {
        let d = self.degree(s);
        if d > self.max_degree {
            return Err(Error::InsufficientDegree { needed: d, available: self.max_degree });
        }
        let s = match self.grading {
            Grading::Edge => s.h_normalized(),
            Grading::Vertex => s.clone(),
        };
        Ok(match self.kind {
            Kind::Generic => self.stored(&s),
            Kind::Infinitesimal => match s.as_tree() {
                Some(_) => self.stored(&s),
                None => Rational::zero(),
            },
            Kind::Character => {
                if self.grading == Grading::Edge && s.is_h_unit() {
                    return Ok(Rational::one());
                }
                let mut acc = Rational::one();
                for t in s.trees() {
                    let v = self.stored(&Forest::single(t.clone()));
                    if v.is_zero() {
                        return Ok(v);
                    }
                    acc *= v;
                }
                acc
            }
        })
    }

    /// Linear extension to a combination of forests.
    pub fn eval_sum(&self, x: &ForestSum) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (s, c) in x.iter() {
            acc += self.eval(s)? * c;
        }
        Ok(acc)
    }

    /// A generic functional holding the values of `self` on every basis forest
    /// of the given algebra, up to `max_degree`.
    pub fn materialize(&self, algebra: Algebra, max_degree: usize) -> Result<Functional> {
        if algebra.grading() != self.grading {
            return Err(Error::GradingMismatch(format!("{:?} functional on {algebra}", self.grading)));
        }
        let max_degree = max_degree.min(self.max_degree);
        let mut values = BTreeMap::new();
        for d in 0..=max_degree {
            for s in algebra.basis(d) {
                let v = self.eval(&s)?;
                values.insert(s, v);
            }
        }
        Ok(Functional::generic(self.grading, max_degree, values))
    }

    /// Linear combination `a·self + b·other` as a generic functional.
    pub fn combine(&self, a: &Rational, other: &Functional, b: &Rational, algebra: Algebra) -> Result<Functional> {
        if self.grading != other.grading {
            return Err(Error::GradingMismatch("cannot combine functionals of different gradings".into()));
        }
        let n = self.max_degree.min(other.max_degree);
        if self.kind == Kind::Infinitesimal && other.kind == Kind::Infinitesimal {
            let mut values: BTreeMap<Forest, Rational> = BTreeMap::new();
            for s in self.values.keys().chain(other.values.keys()) {
                if self.degree(s) <= n {
                    values.insert(s.clone(), a * self.stored(s) + b * other.stored(s));
                }
            }
            values.retain(|_, v| !v.is_zero());
            return Ok(Functional { grading: self.grading, kind: Kind::Infinitesimal, max_degree: n, values });
        }
        if n == UNBOUNDED {
            return Err(Error::Precondition("linear combination of unbounded functionals needs a bound".into()));
        }
        let mut values = BTreeMap::new();
        for d in 0..=n {
            for s in algebra.basis(d) {
                let v = a * self.eval(&s)? + b * other.eval(&s)?;
                values.insert(s, v);
            }
        }
        Ok(Functional::generic(self.grading, n, values))
    }

    /// First basis forest (up to `max_degree`) where the two functionals differ.
    pub fn first_difference(&self, other: &Functional, algebra: Algebra, max_degree: usize) -> Result<Option<Forest>> {
        for d in 0..=max_degree {
            for s in algebra.basis(d) {
                if self.eval(&s)? != other.eval(&s)? {
                    return Ok(Some(s));
                }
            }
        }
        Ok(None)
    }

    /// Value table on trees of degree ≤ `max_degree`, in canonical order.
    pub fn tree_table(&self, max_degree: usize) -> Result<Vec<(Tree, Rational)>> {
        let lo = match self.grading {
            Grading::Edge => 0,
            Grading::Vertex => 1,
        };
        let mut out = Vec::new();
        for d in lo..=max_degree.min(self.max_degree) {
            let ts = match self.grading {
                Grading::Edge => trees::trees_with_vertices(d + 1),
                Grading::Vertex => trees::trees_with_vertices(d),
            };
            for t in ts.iter() {
                out.push((t.clone(), self.tree_value(t)?));
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "grading": self.grading,
            "kind": self.kind,
            "max_degree": if self.is_bounded() { serde_json::json!(self.max_degree) } else { serde_json::Value::Null },
            "values": self
                .values
                .iter()
                .map(|(s, v)| (s.to_string(), serde_json::Value::String(rational::format(v))))
                .collect::<serde_json::Map<_, _>>(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Functional> {
        #[derive(Deserialize)]
        struct Raw {
            grading: Grading,
            kind: Kind,
            max_degree: Option<usize>,
            values: BTreeMap<String, String>,
        }
        let raw: Raw = serde_json::from_value(value.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
        let mut values = BTreeMap::new();
        for (k, v) in raw.values {
            values.insert(Forest::parse(&k)?, rational::parse(&v)?);
        }
        Ok(Functional {
            grading: raw.grading,
            kind: raw.kind,
            max_degree: raw.max_degree.unwrap_or(UNBOUNDED),
            values,
        })
    }
}

/// Builds the character of `algebra` with the given tree values, checking
/// that every tree of degree ≤ `max_degree` has a value. For `H` the value on
/// `•` is 1 and may be omitted.
pub fn character_from_tree_values(
    tv: &BTreeMap<Tree, Rational>,
    algebra: Algebra,
    max_degree: usize,
) -> Result<Functional> {
    let grading = algebra.grading();
    if grading == Grading::Edge {
        if let Some(v) = tv.get(&Tree::bullet()) {
            if !v.is_one() {
                return Err(Error::Precondition(format!("a character of {algebra} takes the value 1 on •")));
            }
        }
    }
    for d in 1..=max_degree {
        for t in algebra.trees_of_degree(d) {
            if !tv.contains_key(&t) {
                return Err(Error::MissingTreeValue(t.to_string()));
            }
        }
    }
    let values = tv.iter().filter(|(t, _)| grading.tree_degree(t) <= max_degree).map(|(t, v)| (t.clone(), v.clone()));
    Ok(Functional::character_unchecked(grading, max_degree, values.collect()))
}

/// Dual basis element: 1 on `s` and 0 on every other basis forest.
pub fn delta_basis(s: &Forest, algebra: Algebra) -> Result<Functional> {
    let grading = algebra.grading();
    if grading == Grading::Edge && !s.is_h_forest() {
        return Err(Error::NotInH(s.to_string()));
    }
    if *s == algebra.unit() {
        // The dual of the unit is the counit, a character vanishing on every tree.
        return Ok(Functional::character_unchecked(grading, UNBOUNDED, BTreeMap::new()));
    }
    Ok(match s.as_tree() {
        Some(t) => Functional::infinitesimal(grading, UNBOUNDED, BTreeMap::from([(t.clone(), Rational::one())])),
        None => Functional::generic(grading, UNBOUNDED, BTreeMap::from([(s.clone(), Rational::one())])),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn f(s: &str) -> Forest {
        Forest::parse(s).unwrap()
    }

    #[test]
    fn sum_round_trip() {
        let mut x = ForestSum::zero();
        x.add_term(f("[[[]]]"), int(-1));
        x.add_term(f("[[]]·[[]]"), int(2));
        x.add_term(f("[[][]]"), rat(-1, 2));
        assert_eq!(ForestSum::parse(&x.to_string()).unwrap(), x);
        assert_eq!(ForestSum::parse("- [[]] + 3/4·∅").unwrap().coeff(&Forest::empty()), rat(3, 4));
        assert!(ForestSum::parse("0").unwrap().is_zero());
        assert!(ForestSum::parse("[[]] +").is_err());
        assert!(ForestSum::parse("[[]] + − [[]]").is_err());
    }

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }

    #[test]
    fn forest_sum_arithmetic() {
        let mut a = ForestSum::from_forest(f("[[]]"));
        a.add_term(f("[]·[]"), int(2));
        let b = &a - &a;
        assert!(b.is_zero());
        assert_eq!(b.to_string(), "0");
        let sq = a.mul(&a);
        assert_eq!(sq.coeff(&f("[[]]·[[]]")), int(1));
        assert_eq!(sq.coeff(&f("[]·[]·[[]]")), int(4));
        assert_eq!(sq.coeff(&f("[]·[]·[]·[]")), int(4));
    }

    #[test]
    fn display_uses_minus_sign() {
        let mut a = ForestSum::term(f("[[[]]]"), int(-1));
        a.add_term(f("[[]]·[[]]"), int(2));
        assert_eq!(a.to_string(), "−[[[]]] + 2·[[]]·[[]]");
        let half = ForestSum::term(f("[[]]"), rat(-1, 2));
        assert_eq!(half.to_string(), "−1/2·[[]]");
    }

    #[test]
    fn h_product_unit() {
        let unit = ForestSum::from_forest(Forest::bullet());
        let e = ForestSum::from_forest(f("[[]]"));
        assert_eq!(unit.h_mul(&e), e);
        assert_eq!(e.mul(&ForestSum::from_forest(Forest::empty())), e);
    }

    #[test]
    fn tensor_product_slots() {
        let a = TensorSum::single(vec![f("[[]]"), Forest::bullet()], int(1));
        let b = TensorSum::single(vec![Forest::bullet(), f("[]")], int(3));
        let p = a.product(&b, &[Slot::H, Slot::Plain]);
        assert_eq!(p.coeff(&[f("[[]]"), f("[]·[]")]), int(3));
        assert_eq!(p.to_string(), "3·[[]]⊗[]·[]");
    }

    #[test]
    fn characters_are_multiplicative() {
        let mut tv = BTreeMap::new();
        tv.insert(t("[]"), int(2));
        tv.insert(t("[[]]"), rat(1, 3));
        let c = character_from_tree_values(&tv, Algebra::CK, 2).unwrap();
        assert_eq!(c.eval(&f("[]·[]")).unwrap(), int(4));
        assert_eq!(c.eval(&Forest::empty()).unwrap(), int(1));
        assert!(matches!(c.eval(&f("[[][]]")), Err(Error::InsufficientDegree { .. })));
        tv.remove(&t("[]"));
        assert!(matches!(character_from_tree_values(&tv, Algebra::CK, 2), Err(Error::MissingTreeValue(_))));
    }

    #[test]
    fn edge_graded_character_ignores_bullets() {
        let tv = BTreeMap::from([(t("[[]]"), rat(1, 2))]);
        let c = character_from_tree_values(&tv, Algebra::H, 1).unwrap();
        assert_eq!(c.eval(&Forest::bullet()).unwrap(), int(1));
        assert_eq!(c.eval(&f("[]·[[]]")).unwrap(), rat(1, 2));
    }

    #[test]
    fn dual_basis() {
        let d = delta_basis(&Forest::bullet(), Algebra::CK).unwrap();
        assert_eq!(d.kind(), Kind::Infinitesimal);
        assert_eq!(d.eval(&f("[]")).unwrap(), int(1));
        assert_eq!(d.eval(&Forest::empty()).unwrap(), int(0));
        assert_eq!(d.eval(&f("[]·[]")).unwrap(), int(0));
        let eps = delta_basis(&Forest::empty(), Algebra::CK).unwrap();
        assert_eq!(eps.eval(&Forest::empty()).unwrap(), int(1));
        assert_eq!(eps.eval(&f("[]")).unwrap(), int(0));
        let z = delta_basis(&f("[[]]"), Algebra::H).unwrap();
        assert_eq!(z.kind(), Kind::Infinitesimal);
        assert_eq!(z.eval(&Forest::bullet()).unwrap(), int(0));
        assert!(delta_basis(&f("[]·[[]]"), Algebra::H).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let tv = BTreeMap::from([(t("[]"), int(1)), (t("[[]]"), rat(-1, 2))]);
        let c = character_from_tree_values(&tv, Algebra::CK, 2).unwrap();
        let back = Functional::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }
}
