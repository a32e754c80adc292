//! The quasi-shuffle algebra on one letter `x` with `[xx] = x`, where a word
//! is determined by its length, and the morphism `Λ` from CK forests onto it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::characters::{named_character, Named};
use crate::error::{Error, Result};
use crate::hopf;
use crate::linalg::{Algebra, ForestSum};
use crate::rational::{self, Rational};
use crate::report::Report;
use crate::trees::{self, Forest, Tree};

/// Polynomial in `x`; the coefficient at `0` belongs to the empty word.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct WordPoly {
    coeffs: BTreeMap<usize, Rational>,
}

impl WordPoly {
    pub fn zero() -> WordPoly {
        WordPoly::default()
    }

    pub fn one() -> WordPoly {
        WordPoly::monomial(0, Rational::one())
    }

    pub fn x() -> WordPoly {
        WordPoly::monomial(1, Rational::one())
    }

    /// `c·x^k`
    pub fn monomial(k: usize, c: Rational) -> WordPoly {
        let mut p = WordPoly::zero();
        p.add_term(k, c);
        p
    }

    pub fn add_term(&mut self, k: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn scale(&self, c: &Rational) -> WordPoly {
        let mut out = WordPoly::zero();
        for (k, v) in self.iter() {
            out.add_term(k, v * c);
        }
        out
    }

    /// Concatenation with `x` on the right.
    pub fn times_x(&self) -> WordPoly {
        WordPoly { coeffs: self.coeffs.iter().map(|(k, c)| (k + 1, c.clone())).collect() }
    }

    pub fn add(&self, other: &WordPoly) -> WordPoly {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_term(k, c.clone());
        }
        out
    }

    /// The quasi-shuffle product, extended bilinearly from `x^k ⋄ x^l`.
    pub fn diamond(&self, other: &WordPoly) -> WordPoly {
        let mut out = WordPoly::zero();
        for (k, a) in self.iter() {
            for (l, b) in other.iter() {
                let ab = a * b;
                for (m, c) in diamond_powers(k, l).iter() {
                    out.add_term(m, c * &ab);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(self.iter().map(|(k, c)| (k.to_string(), serde_json::Value::String(c.to_string()))).collect())
    }
}

impl fmt::Display for WordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = rational::is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i == 0, neg) {
                (true, true) => f.write_str("−")?,
                (true, false) => {}
                (false, true) => f.write_str(" − ")?,
                (false, false) => f.write_str(" + ")?,
            }
            let body = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if body.is_empty() || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            f.write_str(&body)?;
        }
        Ok(())
    }
}

impl fmt::Debug for WordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `x^k ⋄ x^l` through the defining recursion
/// `xu ⋄ xv = x(u ⋄ xv) + x(xu ⋄ v) + x(u ⋄ v)`, memoized.
fn diamond_powers(k: usize, l: usize) -> WordPoly {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), WordPoly>>> = OnceLock::new();
    let (k, l) = (k.min(l), k.max(l));
    if k == 0 {
        return WordPoly::monomial(l, Rational::one());
    }
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("diamond cache poisoned").get(&(k, l)) {
        return p.clone();
    }
    let p = diamond_powers(k - 1, l).add(&diamond_powers(k, l - 1)).add(&diamond_powers(k - 1, l - 1)).times_x();
    cache.lock().expect("diamond cache poisoned").insert((k, l), p.clone());
    p
}

/// `qsh(k,l;r) = (k+l−r)!/((k−r)!(l−r)!r!)`.
fn qsh_pair(k: usize, l: usize, r: usize) -> BigUint {
    if r > k || r > l {
        return BigUint::zero();
    }
    rational::factorial(k + l - r) / (rational::factorial(k - r) * rational::factorial(l - r) * rational::factorial(r))
}

/// Number of quasi-shuffles of type `r`: the coefficient of
/// `x^{k_1+⋯+k_n−r}` in `x^{k_1} ⋄ ⋯ ⋄ x^{k_n}`, folded pairwise from the
/// closed binary formula.
pub fn qsh_coefficient(ks: &[usize], r: usize) -> BigUint {
    // distribution of the length of the partial product
    let mut lengths: BTreeMap<usize, BigUint> = BTreeMap::from([(0, BigUint::one())]);
    for &k in ks {
        let mut next: BTreeMap<usize, BigUint> = BTreeMap::new();
        for (&m, c) in &lengths {
            for j in 0..=m.min(k) {
                let q = qsh_pair(m, k, j);
                if !q.is_zero() {
                    *next.entry(m + k - j).or_insert_with(BigUint::zero) += c * q;
                }
            }
        }
        lengths = next;
    }
    let total: usize = ks.iter().sum();
    if r > total {
        return BigUint::zero();
    }
    lengths.remove(&(total - r)).unwrap_or_else(BigUint::zero)
}

/// `Λ(•) = x`, `Λ(B_+(t_1⋯t_n)) = (Λ(t_1) ⋄ ⋯ ⋄ Λ(t_n))x`, and `Λ` turns
/// the forest product into `⋄`.
pub fn lambda(s: &Forest) -> WordPoly {
    s.trees().iter().fold(WordPoly::one(), |acc, t| acc.diamond(&lambda_tree(t)))
}

pub fn lambda_tree(t: &Tree) -> WordPoly {
    lambda(&t.branches()).times_x()
}

pub fn lambda_sum(x: &ForestSum) -> WordPoly {
    let mut out = WordPoly::zero();
    for (s, c) in x.iter() {
        out = out.add(&lambda(s).scale(c));
    }
    out
}

/// `ω_s(t)`, the coefficient of `x^s` in `Λ(t)`, for every `s` that occurs.
pub fn omega_s(t: &Tree) -> BTreeMap<usize, Rational> {
    lambda_tree(t).iter().map(|(s, c)| (s, c.clone())).collect()
}

/// `ω̃(x^s) = (−1)^{s+1}/s`, zero on the empty word.
pub fn omega_tilde(p: &WordPoly) -> Rational {
    p.iter()
        .filter(|(s, _)| *s > 0)
        .map(|(s, c)| c * rational::sign(s + 1) / Rational::from_integer(s.into()))
        .fold(Rational::zero(), |a, b| a + b)
}

/// `δ̃`: the `⋄`-character with `δ̃(x) = 1` and `δ̃(x^k) = 0` for `k ≥ 2`.
pub fn delta_tilde(p: &WordPoly) -> Rational {
    p.coeff(0) + p.coeff(1)
}

/// `ω(t) = Σ_s (−1)^{s+1}/s·ω_s(t)`.
pub fn omega_via_lambda(t: &Tree) -> Rational {
    omega_tilde(&lambda_tree(t))
}

/// `ω_s(t)` counted from the `(s−1)`-fold reduced CK coproduct: the total
/// coefficient of the terms whose factors are all nonempty forests of `•`.
pub fn omega_s_by_coproduct(t: &Tree, s: usize) -> Result<Rational> {
    if s == 0 {
        return Ok(Rational::zero());
    }
    let it = hopf::iterated_coproduct(&Forest::single(t.clone()), Algebra::CK, s - 1, true)?;
    Ok(it
        .iter()
        .filter(|(k, _)| k.iter().all(|f| !f.is_empty() && f.is_bullet_forest()))
        .map(|(_, c)| c.clone())
        .fold(Rational::zero(), |a, b| a + b))
}

/// `C_s(t) = ω_{|t|−s}(t)` through the recursion over the branches
/// `t = B_+(t_1,…,t_n)`:
/// `C_s(t) = Σ_j Σ_{r_1+⋯+r_n=s−j} qsh(|t_1|−r_1,…,|t_n|−r_n; j) C_{r_1}(t_1)⋯C_{r_n}(t_n)`.
pub fn c_s(t: &Tree, s: usize) -> Result<BigUint> {
    if s >= t.vertices() {
        return Err(Error::Precondition(format!("C_s({t}) needs s < {}, got {s}", t.vertices())));
    }
    Ok(c_s_unchecked(t, s))
}

fn c_s_unchecked(t: &Tree, s: usize) -> BigUint {
    let kids = t.children();
    if kids.is_empty() {
        return if s == 0 { BigUint::one() } else { BigUint::zero() };
    }
    let mut total = BigUint::zero();
    for j in 0..=s {
        // all (r_1,…,r_n) with r_i < |t_i| summing to s−j
        let mut rs = vec![0usize; kids.len()];
        fn go(kids: &[Tree], i: usize, left: usize, j: usize, rs: &mut Vec<usize>, total: &mut BigUint) {
            if i == kids.len() {
                if left != 0 {
                    return;
                }
                let lens: Vec<usize> = kids.iter().zip(rs.iter()).map(|(t, r)| t.vertices() - r).collect();
                let mut term = qsh_coefficient(&lens, j);
                for (t, &r) in kids.iter().zip(rs.iter()) {
                    if term.is_zero() {
                        return;
                    }
                    term *= c_s_unchecked(t, r);
                }
                *total += term;
                return;
            }
            for r in 0..kids[i].vertices().min(left + 1) {
                rs[i] = r;
                go(kids, i + 1, left - r, j, rs, total);
            }
        }
        go(kids, 0, s - j, j, &mut rs, &mut total);
    }
    total
}

/// The quasi-shuffle identities, `Λ` against the bowtie and `B_+`, and the
/// three computations of `ω_s`, on trees with at most `max_vertices` vertices.
pub fn verify_qshuffle(max_vertices: usize) -> Result<Report> {
    let mut report = Report::new();
    let x2 = WordPoly::monomial(2, Rational::one());
    let expected = [(4, 6), (3, 6), (2, 1)].into_iter().fold(WordPoly::zero(), |p, (k, c)| p.add(&WordPoly::monomial(k, rational::int(c))));
    report.push("x²⋄x² = 6x⁴+6x³+x²", x2.diamond(&x2) == expected, x2.diamond(&x2).to_string());

    let mut failures = Vec::new();
    let mut checked = 0;
    for k in 0..=6 {
        for l in 0..=6 {
            let d = diamond_powers(k, l);
            for r in 0..=k.min(l) {
                checked += 1;
                if d.coeff(k + l - r) != rational::from_biguint(&qsh_pair(k, l, r))
                    || qsh_coefficient(&[k, l], r) != qsh_pair(k, l, r)
                {
                    failures.push(format!("qsh({k},{l};{r})"));
                }
            }
        }
    }
    report.push_failures("qsh closed formula = ⋄ coefficients", checked, failures);

    let mut failures = Vec::new();
    let mut checked = 0;
    let polys: Vec<WordPoly> = (0..4).map(|k| WordPoly::monomial(k, Rational::one()).add(&WordPoly::x())).collect();
    for a in &polys {
        for b in &polys {
            checked += 1;
            if a.diamond(b) != b.diamond(a) {
                failures.push(format!("commutativity {a}, {b}"));
            }
            for c in &polys {
                if a.diamond(b).diamond(c) != a.diamond(&b.diamond(c)) {
                    failures.push(format!("associativity {a}, {b}, {c}"));
                }
            }
        }
    }
    report.push_failures("⋄ commutative and associative", checked, failures);

    let ts: Vec<Tree> = (1..=max_vertices).flat_map(|n| trees::trees_with_vertices(n).as_ref().clone()).collect();
    let half = (max_vertices / 2).clamp(1, 4);
    let small: Vec<&Tree> = ts.iter().filter(|t| t.vertices() <= half).collect();
    let omega = named_character(Named::Omega, 2 * half)?;
    let (mut f_bow, mut f_ker, mut f_omega) = (Vec::new(), Vec::new(), Vec::new());
    let mut checked = 0;
    for a in &small {
        for b in &small {
            checked += 1;
            let bow = trees::bowtie(a, b);
            let (la, lb) = (lambda_tree(a), lambda_tree(b));
            if lambda_sum(&bow) != la.diamond(&lb) {
                f_bow.push(format!("({a}, {b})"));
            }
            let ab = ForestSum::from_forest(Forest::new(vec![(*a).clone(), (*b).clone()]));
            if !lambda_sum(&(&bow - &ab)).is_zero() {
                f_ker.push(format!("({a}, {b})"));
            }
            if !omega.eval_sum(&bow)?.is_zero() {
                f_omega.push(format!("({a}, {b})"));
            }
        }
    }
    report.push_failures("Λ(a⋈b) = Λ(a)⋄Λ(b)", checked, f_bow);
    report.push_failures("Λ(a⋈b − ab) = 0", checked, f_ker);
    report.push_failures("ω(a⋈b) = 0", checked, f_omega);

    let mut failures = Vec::new();
    let forests: Vec<Forest> = (0..max_vertices).flat_map(trees::forests_with_vertices).collect();
    for s in &forests {
        if lambda_tree(&trees::b_plus(s)) != lambda(s).times_x() {
            failures.push(format!("B_+ at {s}"));
        }
        let product = s.trees().iter().fold(WordPoly::one(), |p, t| p.diamond(&lambda(&Forest::single(t.clone()))));
        if lambda(s) != product {
            failures.push(format!("morphism at {s}"));
        }
    }
    report.push_failures("Λ∘B_+ = (·x)∘Λ and Λ multiplicative", forests.len(), failures);

    let omega = named_character(Named::Omega, max_vertices)?;
    let (mut f_triple, mut f_formula, mut f_c0, mut f_delta) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for t in &ts {
        let v = t.vertices();
        let by_lambda = lambda_tree(t);
        for s in 1..=v {
            let a = by_lambda.coeff(s);
            let b = omega_s_by_coproduct(t, s)?;
            let c = rational::from_biguint(&c_s(t, v - s)?);
            if a != b || a != c {
                f_triple.push(format!("ω_{s}({t}): {a}, {b}, {c}"));
            }
        }
        if omega_via_lambda(t) != omega.tree_value(t)? {
            f_formula.push(format!("{t}"));
        }
        let c0 = rational::from_biguint(&rational::factorial(v)) / rational::from_u128(t.factorial());
        if rational::from_biguint(&c_s(t, 0)?) != c0 {
            f_c0.push(format!("{t}"));
        }
        let delta = if t.is_bullet() { Rational::one() } else { Rational::zero() };
        if delta_tilde(&by_lambda) != delta {
            f_delta.push(format!("{t}"));
        }
    }
    report.push_failures("ω_s: Λ = iterated Δ_CK = C_s recursion", ts.len(), f_triple);
    report.push_failures("ω = ω̃∘Λ", ts.len(), f_formula);
    report.push_failures("C_0(t) = |t|!/t!", ts.len(), f_c0);
    report.push_failures("δ = δ̃∘Λ", ts.len(), f_delta);

    let mut failures = Vec::new();
    let mut checked = 0;
    for k in 1..=5 {
        for l in 1..=5 {
            checked += 1;
            let p = WordPoly::monomial(k, Rational::one()).diamond(&WordPoly::monomial(l, Rational::one()));
            if !omega_tilde(&p).is_zero() {
                failures.push(format!("x^{k} ⋄ x^{l}"));
            }
        }
    }
    report.push_failures("ω̃ vanishes on ⋄-products", checked, failures);

    let mut failures = Vec::new();
    let mut checked = 0;
    for ks in compositions_up_to(max_vertices.saturating_sub(1), 3) {
        let t = Tree::from_children(ks.iter().map(|&k| Tree::ladder(k - 1)).collect());
        let total: usize = ks.iter().sum();
        for s in 0..=total {
            checked += 1;
            if c_s(&t, s)? != qsh_coefficient(&ks, s) {
                failures.push(format!("C_{s}({t})"));
            }
        }
        let multinomial = ks.iter().fold(rational::factorial(total), |acc, &k| acc / rational::factorial(k));
        if c_s(&t, 0)? != multinomial {
            failures.push(format!("multinomial at {t}"));
        }
    }
    report.push_failures("C_s of generalized corollas = qsh", checked, failures);
    Ok(report)
}

/// Nonincreasing lists of positive integers with at most `parts` entries and
/// sum at most `n`.
fn compositions_up_to(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, max: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if parts == 0 {
            return;
        }
        for k in 1..=left.min(max) {
            cur.push(k);
            go(left - k, k, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, parts, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn small_products() {
        let x = WordPoly::x();
        assert_eq!(x.diamond(&x).to_string(), "2x^2 + x");
        let x2 = WordPoly::monomial(2, Rational::one());
        assert_eq!(x2.diamond(&x2).to_string(), "6x^4 + 6x^3 + x^2");
        assert_eq!(WordPoly::one().diamond(&x2), x2);
    }

    #[test]
    fn qsh_values() {
        assert_eq!(qsh_coefficient(&[2, 2], 1), BigUint::from(6u32));
        assert_eq!(qsh_coefficient(&[1, 1], 1), BigUint::from(1u32));
        assert_eq!(qsh_coefficient(&[3, 2], 0), BigUint::from(10u32));
        // x ⋄ x ⋄ x = 6x³ + 6x² + x
        assert_eq!(qsh_coefficient(&[1, 1, 1], 1), BigUint::from(6u32));
        assert_eq!(qsh_coefficient(&[1, 1, 1], 2), BigUint::from(1u32));
    }

    #[test]
    fn lambda_examples() {
        let c2 = Tree::corolla(2);
        assert_eq!(lambda_tree(&c2).to_string(), "2x^3 + x^2");
        assert_eq!(lambda_tree(&Tree::ladder(2)).to_string(), "x^3");
        assert_eq!(omega_via_lambda(&c2), rat(1, 6));
        assert_eq!(omega_via_lambda(&Tree::ladder(2)), rat(1, 3));
        assert_eq!(lambda(&Forest::empty()), WordPoly::one());
        assert_eq!(omega_s_by_coproduct(&c2, 3).unwrap(), int(2));
        assert_eq!(omega_s_by_coproduct(&c2, 2).unwrap(), int(1));
    }

    #[test]
    fn c_s_range() {
        assert!(c_s(&Tree::bullet(), 1).is_err());
        assert_eq!(c_s(&Tree::corolla(2), 0).unwrap(), BigUint::from(2u32));
        assert_eq!(c_s(&Tree::corolla(2), 1).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn suite() {
        let r = verify_qshuffle(6).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}
