//! B-series over polynomial vector fields on `ℚ^d`, with exact coefficients.
//!
//! A series in `h` is stored as its list of coefficients, one entry per power
//! of `h` up to the truncation order; every product truncates.

mod poly;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

pub use poly::{parse_field, Poly};

use crate::characters::{self, convolve, star_action, ConvolutionContext, Side};
use crate::error::{Error, Result};
use crate::linalg::{Algebra, Functional, Grading, Kind};
use crate::prelie;
use crate::rational::{self, Rational};
use crate::report::Report;
use crate::trees::{self, Forest, Tree};

/// A vector field on `ℚ^d` with polynomial components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVectorField {
    components: Vec<Poly>,
}

impl PolyVectorField {
    pub fn new(components: Vec<Poly>) -> Result<PolyVectorField> {
        let d = components.len();
        if d == 0 {
            return Err(Error::Dimension { expected: 1, got: 0 });
        }
        if let Some(p) = components.iter().find(|p| p.nvars() != d) {
            return Err(Error::Dimension { expected: d, got: p.nvars() });
        }
        Ok(PolyVectorField { components })
    }

    pub fn parse(text: &str, dim: usize) -> Result<PolyVectorField> {
        PolyVectorField::new(parse_field(text, dim)?)
    }

    pub fn zero(dim: usize) -> PolyVectorField {
        PolyVectorField { components: vec![Poly::zero(dim); dim] }
    }

    /// `y ↦ y`
    pub fn identity(dim: usize) -> PolyVectorField {
        PolyVectorField { components: (0..dim).map(|i| Poly::var(dim, i)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn add(&self, other: &PolyVectorField) -> PolyVectorField {
        PolyVectorField { components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> PolyVectorField {
        PolyVectorField { components: self.components.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// `a▷b = Σ_j a^j ∂_j b`, the pre-Lie product of vector fields.
    pub fn prelie(&self, b: &PolyVectorField) -> PolyVectorField {
        let d = self.dim();
        let components = b
            .components
            .iter()
            .map(|bi| (0..d).fold(Poly::zero(d), |acc, j| acc.add(&self.components[j].mul(&bi.derivative(j)))))
            .collect();
        PolyVectorField { components }
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

/// A vector field depending on `h`, truncated at `h^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSeriesField {
    dim: usize,
    coeffs: Vec<PolyVectorField>,
}

impl HSeriesField {
    pub fn zero(dim: usize, order: usize) -> HSeriesField {
        HSeriesField { dim, coeffs: vec![PolyVectorField::zero(dim); order + 1] }
    }

    /// `a` as a series constant in `h`.
    pub fn constant(a: &PolyVectorField, order: usize) -> HSeriesField {
        let mut s = HSeriesField::zero(a.dim(), order);
        s.coeffs[0] = a.clone();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficient of `h^k`.
    pub fn coeff(&self, k: usize) -> &PolyVectorField {
        &self.coeffs[k]
    }

    fn add_scaled_at(&mut self, k: usize, v: &PolyVectorField, c: &Rational) {
        if k < self.coeffs.len() {
            self.coeffs[k] = self.coeffs[k].add(&v.scale(c));
        }
    }

    fn derivative(&self, j: usize) -> HSeriesField {
        HSeriesField {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .map(|v| PolyVectorField { components: v.components.iter().map(|p| p.derivative(j)).collect() })
                .collect(),
        }
    }

    /// Component `i` as a scalar series.
    fn component(&self, i: usize) -> Vec<Poly> {
        self.coeffs.iter().map(|v| v.components[i].clone()).collect()
    }

    fn times_scalar(&self, s: &[Poly]) -> HSeriesField {
        let mut out = HSeriesField::zero(self.dim, self.order());
        for i in 0..self.dim {
            let c = series_mul(&self.component(i), s);
            for (k, p) in c.into_iter().enumerate() {
                out.coeffs[k].components[i] = p;
            }
        }
        out
    }

    fn add(&self, other: &HSeriesField) -> HSeriesField {
        HSeriesField { dim: self.dim, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect() }
    }
}

fn series_mul(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let n = a.len();
    let nvars = a[0].nvars();
    let mut out = vec![Poly::zero(nvars); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

/// Elementary differentials of an `h`-dependent field, memoized per tree.
struct Differentials<'a> {
    field: &'a HSeriesField,
    memo: HashMap<Tree, HSeriesField>,
}

impl<'a> Differentials<'a> {
    fn new(field: &'a HSeriesField) -> Self {
        Differentials { field, memo: HashMap::new() }
    }

    /// `F(B_+(t_1⋯t_n)) = f^{(n)}(F(t_1), …, F(t_n))`: the `n`-th derivative
    /// of the field contracted against the branches.
    fn of(&mut self, t: &Tree) -> HSeriesField {
        if let Some(v) = self.memo.get(t) {
            return v.clone();
        }
        let kids: Vec<HSeriesField> = t.children().iter().map(|c| self.of(c)).collect();
        let d = self.field.dim();
        let order = self.field.order();
        let mut out = HSeriesField::zero(d, order);
        let mut index = vec![0usize; kids.len()];
        loop {
            let mut deriv = self.field.clone();
            let mut scalar = vec![Poly::zero(d); order + 1];
            scalar[0] = Poly::constant(d, Rational::one());
            for (k, &j) in index.iter().enumerate() {
                deriv = deriv.derivative(j);
                scalar = series_mul(&scalar, &kids[k].component(j));
            }
            out = out.add(&deriv.times_scalar(&scalar));
            // next multi-index in [d]^n
            let mut pos = 0;
            while pos < index.len() && index[pos] + 1 == d {
                index[pos] = 0;
                pos += 1;
            }
            if pos == index.len() {
                break;
            }
            index[pos] += 1;
        }
        self.memo.insert(t.clone(), out.clone());
        out
    }
}

/// `F_a(t)`: `F_a(•) = a`, `F_a(B_+(t_1⋯t_n))(y) = a^{(n)}(y)(F_a(t_1)(y), …, F_a(t_n)(y))`.
pub fn elementary_differential(t: &Tree, a: &PolyVectorField) -> PolyVectorField {
    let f = HSeriesField::constant(a, 0);
    Differentials::new(&f).of(t).coeffs.swap_remove(0)
}

pub fn elementary_differential_series(t: &Tree, f: &HSeriesField) -> HSeriesField {
    Differentials::new(f).of(t)
}

/// Taylor coefficients in `h` of the map `y ↦ B(α;a)(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BSeriesMap {
    coeffs: Vec<PolyVectorField>,
}

impl BSeriesMap {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].dim()
    }

    /// Coefficient of `h^k`, a map `ℚ^d → ℚ^d`.
    pub fn coeff(&self, k: usize) -> &PolyVectorField {
        &self.coeffs[k]
    }

    /// `self ∘ inner`, by substituting the components of `inner` for the
    /// variables and truncating at the common order.
    pub fn compose(&self, inner: &BSeriesMap) -> BSeriesMap {
        let d = self.dim();
        let order = self.order().min(inner.order());
        let z: Vec<Vec<Poly>> =
            (0..d).map(|i| (0..=order).map(|k| inner.coeffs[k].components[i].clone()).collect()).collect();
        let mut powers: HashMap<(usize, u32), Vec<Poly>> = HashMap::new();
        let mut out = vec![PolyVectorField::zero(d); order + 1];
        for k in 0..=order {
            for (i, p) in self.coeffs[k].components.iter().enumerate() {
                let mut acc = vec![Poly::zero(d); order + 1];
                for (exps, c) in p.terms() {
                    let mut m = vec![Poly::zero(d); order + 1];
                    m[0] = Poly::constant(d, c.clone());
                    for (v, &e) in exps.iter().enumerate() {
                        if e == 0 {
                            continue;
                        }
                        let zp = series_power(&mut powers, &z[v], v, e);
                        m = series_mul(&m, &zp);
                    }
                    for (s, q) in m.into_iter().enumerate() {
                        acc[s] = acc[s].add(&q);
                    }
                }
                // shift by h^k
                for s in 0..=order - k {
                    out[s + k].components[i] = out[s + k].components[i].add(&acc[s]);
                }
            }
        }
        BSeriesMap { coeffs: out }
    }
}

fn series_power(cache: &mut HashMap<(usize, u32), Vec<Poly>>, z: &[Poly], v: usize, e: u32) -> Vec<Poly> {
    if let Some(p) = cache.get(&(v, e)) {
        return p.clone();
    }
    let p = if e == 1 { z.to_vec() } else { series_mul(&series_power(cache, z, v, e - 1), z) };
    cache.insert((v, e), p.clone());
    p
}

impl fmt::Display for BSeriesMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.coeffs.iter().enumerate() {
            writeln!(f, "h^{k}: {v}")?;
        }
        Ok(())
    }
}

fn check_vertex_graded(f: &Functional, what: &str) -> Result<()> {
    if f.grading() != Grading::Vertex {
        return Err(Error::GradingMismatch(format!("{what} must be a functional on rooted forests graded by vertices")));
    }
    Ok(())
}

fn sigma(t: &Tree) -> Rational {
    rational::from_u128(t.symmetry())
}

fn all_trees(max_vertices: usize) -> Vec<Tree> {
    (1..=max_vertices).flat_map(|n| trees::trees_with_vertices(n).as_ref().clone()).collect()
}

/// `B(β;f) = β(∅)·y + Σ_t h^{v(t)} β(t)/σ(t) F_f(t)` for an `h`-dependent
/// field `f`, truncated at the order of `f`.
pub fn bseries_of_series(beta: &Functional, f: &HSeriesField) -> Result<BSeriesMap> {
    check_vertex_graded(beta, "β")?;
    let order = f.order();
    let d = f.dim();
    let mut out = HSeriesField::zero(d, order);
    out.add_scaled_at(0, &PolyVectorField::identity(d), &beta.eval(&Forest::empty())?);
    let mut diffs = Differentials::new(f);
    for t in all_trees(order) {
        let c = beta.tree_value(&t)?;
        if c.is_zero() {
            continue;
        }
        let c = c / sigma(&t);
        let ft = diffs.of(&t);
        for k in 0..=order - t.vertices() {
            out.add_scaled_at(k + t.vertices(), ft.coeff(k), &c);
        }
    }
    Ok(BSeriesMap { coeffs: out.coeffs })
}

/// `B(α;a) = α(∅)·y + Σ_{v(t) ≤ N} h^{v(t)} α(t)/σ(t) F_a(t)`.
pub fn bseries_eval(alpha: &Functional, a: &PolyVectorField, order: usize) -> Result<BSeriesMap> {
    bseries_of_series(alpha, &HSeriesField::constant(a, order))
}

/// `h⁻¹B(α;a)` for `α` vanishing on `∅`: `Σ_t h^{v(t)−1} α(t)/σ(t) F_a(t)`.
pub fn modified_field(alpha: &Functional, a: &PolyVectorField, order: usize) -> Result<HSeriesField> {
    check_vertex_graded(alpha, "α")?;
    let mut out = HSeriesField::zero(a.dim(), order);
    let f = HSeriesField::constant(a, 0);
    let mut diffs = Differentials::new(&f);
    for t in all_trees(order) {
        let c = alpha.tree_value(&t)?;
        if c.is_zero() {
            continue;
        }
        out.add_scaled_at(t.vertices() - 1, diffs.of(&t).coeff(0), &(c / sigma(&t)));
    }
    Ok(out)
}

/// Substitution on coefficients: `(α⋆β)(t) = Σ_s α(s)β(t/s)` over spanning
/// subforests `s` of `t`, with `α` a character of `H̃` given by its values
/// on nonempty trees.
pub fn substitute_coeffs(alpha: &Functional, beta: &Functional, max_vertices: usize) -> Result<Functional> {
    check_vertex_graded(alpha, "α")?;
    check_vertex_graded(beta, "β")?;
    if alpha.kind() != Kind::Character {
        return Err(Error::Precondition("substitution needs α to be a character of H̃".into()));
    }
    star_action(alpha, beta, Side::Left, max_vertices)
}

/// Composition on coefficients: the CK convolution `α∗β`.
pub fn compose_coeffs(alpha: &Functional, beta: &Functional, max_vertices: usize) -> Result<Functional> {
    check_vertex_graded(alpha, "α")?;
    check_vertex_graded(beta, "β")?;
    convolve(alpha, beta, ConvolutionContext::new(Algebra::CK, max_vertices))
}

fn compare_maps(report: &mut Report, name: &str, lhs: &BSeriesMap, rhs: &BSeriesMap) {
    let failures: Vec<String> = (0..=lhs.order())
        .filter(|&k| lhs.coeff(k) != rhs.coeff(k))
        .map(|k| format!("h^{k}: {} vs {}", lhs.coeff(k), rhs.coeff(k)))
        .collect();
    report.push_failures(name, lhs.order() + 1, failures);
}

/// `B(β; h⁻¹B(α;a)) = B(α⋆β; a)` up to `h^order`. Unless
/// `general_bullet` is set, `α(•)` must be 1.
pub fn verify_substitution(
    a: &PolyVectorField,
    alpha: &Functional,
    beta: &Functional,
    order: usize,
    general_bullet: bool,
) -> Result<Report> {
    let bullet = alpha.tree_value(&Tree::bullet())?;
    if !general_bullet && !bullet.is_one() {
        return Err(Error::Precondition(format!("α(•) = {bullet}; pass the general-bullet flag to allow α(•) ≠ 1")));
    }
    let lhs = bseries_of_series(beta, &modified_field(alpha, a, order)?)?;
    let rhs = bseries_eval(&substitute_coeffs(alpha, beta, order)?, a, order)?;
    let mut report = Report::new();
    compare_maps(&mut report, &format!("substitution (d={}, a={a}, N={order})", a.dim()), &lhs, &rhs);
    Ok(report)
}

/// `B(β;a)∘B(α;a) = B(α∗β;a)` up to `h^order`.
pub fn verify_composition(a: &PolyVectorField, alpha: &Functional, beta: &Functional, order: usize) -> Result<Report> {
    let lhs = bseries_eval(beta, a, order)?.compose(&bseries_eval(alpha, a, order)?);
    let rhs = bseries_eval(&compose_coeffs(alpha, beta, order)?, a, order)?;
    let mut report = Report::new();
    compare_maps(&mut report, &format!("composition (d={}, a={a}, N={order})", a.dim()), &lhs, &rhs);
    Ok(report)
}

/// Vertex-graded character with the given values on trees (others 0).
pub fn character(values: &[(&str, Rational)], max_vertices: usize) -> Result<Functional> {
    let mut tv = BTreeMap::new();
    for (s, v) in values {
        tv.insert(Tree::parse(s)?, v.clone());
    }
    Ok(Functional::character_unchecked(Grading::Vertex, max_vertices, tv))
}

/// `α(t) = 1/t!`, the coefficients of the exact flow.
pub fn exact_flow_character(max_vertices: usize) -> Result<Functional> {
    characters::correspond(&characters::named_character(characters::Named::E, max_vertices)?, characters::Correspondence::Character, max_vertices)
}

fn random_character_with_unit_bullet(max_vertices: usize, seed: u64) -> Functional {
    let r = characters::random_character(Algebra::CK, max_vertices, seed);
    let mut tv = BTreeMap::new();
    for t in all_trees(max_vertices) {
        let v = if t.is_bullet() { Rational::one() } else { r.tree_value(&t).unwrap_or_else(|_| Rational::zero()) };
        tv.insert(t, v);
    }
    Functional::character_unchecked(Grading::Vertex, max_vertices, tv)
}

/// The standard test fields: dimensions 1 and 2, components of degree ≤ 2.
pub fn test_fields() -> Vec<PolyVectorField> {
    [("y^2", 1), ("1 + y - 1/2*y^2", 1), ("y2; -y1", 2), ("y1*y2; y1 - y2^2", 2), ("y1^2 + 1; 2*y1*y2 - y2", 2)]
        .iter()
        .map(|(s, d)| PolyVectorField::parse(s, *d).expect("test field parses"))
        .collect()
}

/// Substitution and composition over the test fields for every order up to
/// `max_order`, the exact flow of `ẏ = y²` at order `max_order + 1`, the
/// pre-Lie morphism property of `F_a`, and the action identities in B-series form.
pub fn verify_bseries(max_order: usize, seed: u64) -> Result<Report> {
    let mut report = Report::new();
    let n = max_order;
    let default_alpha = character(&[("[]", Rational::one()), ("[[]]", rational::rat(1, 2))], n)?;
    let flow = exact_flow_character(n + 1)?;
    for (i, a) in test_fields().iter().enumerate() {
        let seed = seed.wrapping_add(10 * i as u64);
        let alpha = random_character_with_unit_bullet(n, seed);
        let beta = characters::random_character(Algebra::CK, n, seed + 1);
        let b2 = characters::random_character(Algebra::CK, n, seed + 2);
        for order in 1..=n {
            report.extend(verify_substitution(a, &default_alpha, &flow.truncated(order), order, false)?);
            report.extend(verify_substitution(a, &alpha.truncated(order), &beta.truncated(order), order, false)?);
            report.extend(verify_composition(a, &beta.truncated(order), &b2.truncated(order), order)?);
        }
        // α⋆(b∗c) = (α⋆b)∗(α⋆c) and associativity of ∗, through the B-series they define
        let lhs = bseries_eval(&substitute_coeffs(&alpha, &compose_coeffs(&beta, &b2, n)?, n)?, a, n)?;
        let rhs = bseries_eval(
            &compose_coeffs(&substitute_coeffs(&alpha, &beta, n)?, &substitute_coeffs(&alpha, &b2, n)?, n)?,
            a,
            n,
        )?;
        compare_maps(&mut report, &format!("α⋆(b∗c) = (α⋆b)∗(α⋆c) (a={a})"), &lhs, &rhs);
        let c = characters::random_character(Algebra::CK, n, seed + 3);
        let lhs = compose_coeffs(&compose_coeffs(&beta, &b2, n)?, &c, n)?;
        let rhs = compose_coeffs(&beta, &compose_coeffs(&b2, &c, n)?, n)?;
        compare_maps(
            &mut report,
            &format!("(b∗c)∗e = b∗(c∗e) (a={a})"),
            &bseries_eval(&lhs, a, n)?,
            &bseries_eval(&rhs, a, n)?,
        );
    }

    let n_flow = n + 1;
    let y2 = PolyVectorField::parse("y^2", 1)?;
    let flow_map = bseries_eval(&exact_flow_character(n_flow)?, &y2, n_flow)?;
    let failures: Vec<String> = (0..=n_flow)
        .filter(|&k| flow_map.coeff(k).components()[0] != Poly::var(1, 0).pow(k as u32 + 1))
        .map(|k| format!("h^{k}: {}", flow_map.coeff(k)))
        .collect();
    report.push_failures(format!("exact flow of y' = y^2 (N={n_flow})"), n_flow + 1, failures);

    let mut failures = Vec::new();
    let mut checked = 0;
    for a in test_fields() {
        let ts = all_trees(n.max(2) - 1);
        for t in &ts {
            for u in &ts {
                if t.vertices() + u.vertices() > n.max(2) {
                    continue;
                }
                checked += 1;
                let lhs = prelie::graft(t, u, true).iter().fold(PolyVectorField::zero(a.dim()), |acc, (s, c)| {
                    let v = s.as_tree().expect("grafting yields trees");
                    acc.add(&elementary_differential(v, &a).scale(c))
                });
                let rhs = elementary_differential(t, &a).prelie(&elementary_differential(u, &a));
                if lhs != rhs {
                    failures.push(format!("a={a}, ({t}, {u})"));
                }
            }
        }
    }
    report.push_failures("F_a(t↷u) = F_a(t)▷F_a(u)", checked, failures);

    let mut failures = Vec::new();
    let fields = test_fields();
    for x in &fields {
        for y in &fields {
            for z in &fields {
                if x.dim() != y.dim() || y.dim() != z.dim() {
                    continue;
                }
                let assoc = |p: &PolyVectorField, q: &PolyVectorField| {
                    let pq_z = p.prelie(q).prelie(z);
                    let p_qz = p.prelie(&q.prelie(z));
                    pq_z.add(&p_qz.scale(&-Rational::one()))
                };
                if assoc(x, y) != assoc(y, x) {
                    failures.push(format!("({x}), ({y}), ({z})"));
                }
            }
        }
    }
    report.push_failures("pre-Lie identity for vector fields", fields.len().pow(3), failures);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn y2() -> PolyVectorField {
        PolyVectorField::parse("y^2", 1).unwrap()
    }

    #[test]
    fn elementary_differentials_of_y_squared() {
        let a = y2();
        assert_eq!(elementary_differential(&Tree::bullet(), &a).to_string(), "y^2");
        assert_eq!(elementary_differential(&Tree::ladder(1), &a).to_string(), "2*y^3");
        assert_eq!(elementary_differential(&Tree::corolla(2), &a).to_string(), "2*y^4");
    }

    #[test]
    fn counit_and_euler_maps() {
        let a = y2();
        let eps = character(&[], 3).unwrap();
        let id = bseries_eval(&eps, &a, 3).unwrap();
        assert_eq!(id.coeff(0).to_string(), "y");
        assert!((1..=3).all(|k| id.coeff(k).is_zero()));
        let delta = character(&[("[]", Rational::one())], 3).unwrap();
        let euler = bseries_eval(&delta, &a, 3).unwrap();
        assert_eq!(euler.coeff(1).to_string(), "y^2");
        assert!(euler.coeff(2).is_zero());
    }

    #[test]
    fn two_euler_steps() {
        // y + h a(y) + h a(y + h a(y)) = y + 2h y^2 + 2h^2 y^3 + h^3 y^4
        let a = y2();
        let delta = character(&[("[]", Rational::one())], 2).unwrap();
        let e = bseries_eval(&delta, &a, 2).unwrap();
        let twice = e.compose(&e);
        assert_eq!(twice.coeff(1).to_string(), "2*y^2");
        assert_eq!(twice.coeff(2).to_string(), "2*y^3");
        let r = verify_composition(&a, &delta, &delta, 2).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn substitution_on_one_edge() {
        let alpha = character(&[("[]", Rational::one()), ("[[]]", rat(3, 2))], 4).unwrap();
        let beta = character(&[("[]", int(2)), ("[[]]", int(5))], 4).unwrap();
        let s = substitute_coeffs(&alpha, &beta, 2).unwrap();
        // spanning subforests of E_1: {•,•} gives β(E_1), {E_1} gives α(E_1)β(•)
        assert_eq!(s.tree_value(&Tree::ladder(1)).unwrap(), int(5) + rat(3, 2) * int(2));
        let r = verify_substitution(&y2(), &alpha, &beta, 4, false).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn bullet_flag() {
        let alpha = character(&[("[]", int(2))], 2).unwrap();
        let beta = character(&[("[]", int(1))], 2).unwrap();
        assert!(verify_substitution(&y2(), &alpha, &beta, 2, false).is_err());
        assert!(verify_substitution(&y2(), &alpha, &beta, 2, true).unwrap().all_passed());
    }

    #[test]
    fn small_matrix() {
        let r = verify_bseries(3, 5).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}
