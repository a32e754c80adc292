//! The two pre-Lie products on trees. Insertion `▷` is dual to `Δ_H` and is
//! read off coproduct coefficients; grafting `→` is dual to `Δ_CK` and is
//! built directly by attaching a root under every vertex. The normalized
//! products are `▷_σ` and `↷`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::characters::{convolve, named_character, ConvolutionContext, Named};
use crate::error::{Error, Result};
use crate::hopf;
use crate::linalg::{self, Algebra, ForestSum, Functional, Grading};
use crate::rational::{self, Rational};
use crate::report::Report;
use crate::trees::{self, Forest, Tree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PreLie {
    /// `▷`
    Insertion,
    /// `▷_σ`
    InsertionSigma,
    /// `→`
    Graft,
    /// `↷`
    GraftSigma,
}

impl PreLie {
    pub const ALL: [PreLie; 4] = [PreLie::Insertion, PreLie::InsertionSigma, PreLie::Graft, PreLie::GraftSigma];

    pub fn symbol(self) -> &'static str {
        match self {
            PreLie::Insertion => "▷",
            PreLie::InsertionSigma => "▷_σ",
            PreLie::Graft => "→",
            PreLie::GraftSigma => "↷",
        }
    }

    /// Grade in which the product is homogeneous: edges for insertion,
    /// vertices for grafting.
    pub fn grade(self, t: &Tree) -> usize {
        match self {
            PreLie::Insertion | PreLie::InsertionSigma => t.edges(),
            PreLie::Graft | PreLie::GraftSigma => t.vertices(),
        }
    }

    pub fn apply(self, t: &Tree, u: &Tree) -> Result<ForestSum> {
        match self {
            PreLie::Insertion => insert(t, u, false),
            PreLie::InsertionSigma => insert(t, u, true),
            PreLie::Graft => Ok(graft(t, u, false)),
            PreLie::GraftSigma => Ok(graft(t, u, true)),
        }
    }
}

fn sigma_ratio(t: &Tree, u: &Tree, v: &Tree) -> Rational {
    Rational::new((t.symmetry() * u.symmetry()).into(), v.symmetry().into())
}

/// `t▷u = Σ_v N(t,u,v) v`, with `N(t,u,v)` the coefficient of `t⊗u` in
/// `Δ_H(v)`; the normalized form uses `M = σ(t)σ(u)/σ(v)·N`.
pub fn insert(t: &Tree, u: &Tree, normalized: bool) -> Result<ForestSum> {
    let key = [Forest::single(t.clone()), Forest::single(u.clone())];
    let mut out = ForestSum::zero();
    for v in trees::trees_with_vertices(t.edges() + u.edges() + 1).iter() {
        let n = hopf::tree_coproduct(v, Algebra::H)?.coeff(&key);
        if n.is_zero() {
            continue;
        }
        let c = if normalized { n * sigma_ratio(t, u, v) } else { n };
        out.add_term(Forest::single(v.clone()), c);
    }
    Ok(out)
}

/// Every tree obtained from `u` by attaching the root of `t` under one of
/// its vertices, one entry per vertex.
fn attachments(t: &Tree, u: &Tree) -> Vec<Tree> {
    let kids = u.children();
    let mut with_t = kids.to_vec();
    with_t.push(t.clone());
    let mut out = vec![Tree::from_children(with_t)];
    for (i, c) in kids.iter().enumerate() {
        for r in attachments(t, c) {
            let mut k = kids.to_vec();
            k[i] = r;
            out.push(Tree::from_children(k));
        }
    }
    out
}

/// Grafting. The normalized product `↷` counts the vertices of `u` under
/// which `t` can be attached to give `v`; `t→u` has coefficients
/// `N′(t,u,v) = σ(v)/(σ(t)σ(u))·M′(t,u,v)`.
pub fn graft(t: &Tree, u: &Tree, normalized: bool) -> ForestSum {
    let mut out = ForestSum::zero();
    for v in attachments(t, u) {
        let c = if normalized { Rational::one() } else { sigma_ratio(t, u, &v).recip() };
        out.add_term(Forest::single(v), c);
    }
    out
}

/// `t→u` computed from the CK coproduct: `N′(t,u,v)` is the coefficient of
/// `t⊗u` in `Δ_CK(v)` (pruning on the left, trunk on the right).
pub fn graft_dual(t: &Tree, u: &Tree, normalized: bool) -> Result<ForestSum> {
    let key = [Forest::single(t.clone()), Forest::single(u.clone())];
    let mut out = ForestSum::zero();
    for v in trees::trees_with_vertices(t.vertices() + u.vertices()).iter() {
        let n = hopf::tree_coproduct(v, Algebra::CK)?.coeff(&key);
        if n.is_zero() {
            continue;
        }
        let c = if normalized { n * sigma_ratio(t, u, v) } else { n };
        out.add_term(Forest::single(v.clone()), c);
    }
    Ok(out)
}

/// Bilinear extension of a pre-Lie product to sums of trees, with the empty
/// forest acting as a unit on both sides.
pub fn product(kind: PreLie, a: &ForestSum, b: &ForestSum) -> Result<ForestSum> {
    let mut out = ForestSum::zero();
    for (x, c) in a.iter() {
        for (y, d) in b.iter() {
            let cd = c * d;
            if x.is_empty() {
                out.add_term(y.clone(), cd);
                continue;
            }
            if y.is_empty() {
                out.add_term(x.clone(), cd);
                continue;
            }
            let (t, u) = match (x.as_tree(), y.as_tree()) {
                (Some(t), Some(u)) => (t, u),
                _ => return Err(Error::Precondition("pre-Lie products take linear combinations of trees".into())),
            };
            out.add_scaled(&kind.apply(t, u)?, &cd);
        }
    }
    Ok(out)
}

fn truncate(x: &ForestSum, max_vertices: usize) -> ForestSum {
    let mut out = ForestSum::zero();
    for (s, c) in x.iter() {
        if s.vertices() <= max_vertices {
            out.add_term(s.clone(), c.clone());
        }
    }
    out
}

/// `a↷b` keeping only trees with at most `max_vertices` vertices.
fn graft_truncated(a: &ForestSum, b: &ForestSum, max_vertices: usize) -> ForestSum {
    let mut out = ForestSum::zero();
    for (x, c) in a.iter() {
        for (y, d) in b.iter() {
            if x.vertices() + y.vertices() > max_vertices {
                continue;
            }
            if let (Some(t), Some(u)) = (x.as_tree(), y.as_tree()) {
                out.add_scaled(&graft(t, u, true), &(c * d));
            }
        }
    }
    out
}

/// The fixed point `Ω′ = Σ_n B_n/n! L^{(n)}_↷[Ω′](•)`, where
/// `L_↷[a](b) = a↷b`, solved grade by grade up to `max_vertices`.
pub fn magnus_omega(max_vertices: usize) -> Result<ForestSum> {
    if max_vertices == 0 {
        return Err(Error::Precondition("max_vertices must be at least 1".into()));
    }
    let b = rational::bernoulli_numbers(max_vertices);
    let bullet = ForestSum::from_forest(Forest::bullet());
    let mut omega = bullet.clone();
    for _ in 1..max_vertices {
        let mut next = bullet.clone();
        let mut power = bullet.clone();
        for (n, bn) in b.iter().enumerate().take(max_vertices).skip(1) {
            power = graft_truncated(&omega, &power, max_vertices);
            if power.is_zero() {
                break;
            }
            let c = bn / rational::from_biguint(&rational::factorial(n));
            next.add_scaled(&power, &c);
        }
        omega = truncate(&next, max_vertices);
    }
    Ok(omega)
}

fn trees_up_to(kind: PreLie, max_grade: usize) -> Vec<Tree> {
    let (lo, shift) = match kind {
        PreLie::Insertion | PreLie::InsertionSigma => (1, 1),
        PreLie::Graft | PreLie::GraftSigma => (1, 0),
    };
    (lo..=max_grade).flat_map(|g| trees::trees_with_vertices(g + shift).as_ref().clone()).collect()
}

fn tree_sum(t: &Tree) -> ForestSum {
    ForestSum::from_forest(Forest::single(t.clone()))
}

/// Left pre-Lie identity `(a∘b)∘c − a∘(b∘c) = (b∘a)∘c − b∘(a∘c)` on all
/// triples of trees of total grade at most `max_grade`.
pub fn check_prelie_identity(kind: PreLie, max_grade: usize) -> Result<(usize, Vec<String>)> {
    let ts = trees_up_to(kind, max_grade);
    let mut failures = Vec::new();
    let mut checked = 0;
    for a in &ts {
        for b in &ts {
            for c in &ts {
                if kind.grade(a) + kind.grade(b) + kind.grade(c) > max_grade {
                    continue;
                }
                checked += 1;
                let (sa, sb, sc) = (tree_sum(a), tree_sum(b), tree_sum(c));
                let ab = product(kind, &sa, &sb)?;
                let ba = product(kind, &sb, &sa)?;
                let lhs = &product(kind, &ab, &sc)? - &product(kind, &sa, &product(kind, &sb, &sc)?)?;
                let rhs = &product(kind, &ba, &sc)? - &product(kind, &sb, &product(kind, &sa, &sc)?)?;
                if lhs != rhs {
                    failures.push(format!("({a}, {b}, {c})"));
                }
            }
        }
    }
    Ok((checked, failures))
}

/// `Z_t⋆Z_u − Z_u⋆Z_t = Z_{t▷u−u▷t}` on `H` (or the `σ`-normalized
/// statement on `H_σ` with `▷_σ`), for `e(t)+e(u) ≤ max_edges`.
pub fn check_insertion_bracket(max_edges: usize, normalized: bool) -> Result<(usize, Vec<String>)> {
    let algebra = if normalized { Algebra::HSigma } else { Algebra::H };
    let kind = if normalized { PreLie::InsertionSigma } else { PreLie::Insertion };
    let ctx = ConvolutionContext::new(algebra, max_edges);
    let ts: Vec<Tree> = (2..=max_edges + 1).flat_map(|n| trees::trees_with_vertices(n).as_ref().clone()).collect();
    let mut failures = Vec::new();
    let mut checked = 0;
    for t in &ts {
        for u in &ts {
            if t.edges() + u.edges() > max_edges || t >= u {
                continue;
            }
            checked += 1;
            let zt = linalg::delta_basis(&Forest::single(t.clone()), algebra)?.truncated(max_edges);
            let zu = linalg::delta_basis(&Forest::single(u.clone()), algebra)?.truncated(max_edges);
            let lhs = convolve(&zt, &zu, ctx)?.combine(&Rational::one(), &convolve(&zu, &zt, ctx)?, &-Rational::one(), algebra)?;
            let bracket = &kind.apply(t, u)? - &kind.apply(u, t)?;
            let rhs = dual_of(&bracket, Grading::Edge, max_edges);
            if lhs.first_difference(&rhs, algebra, max_edges)?.is_some() {
                failures.push(format!("({t}, {u})"));
            }
        }
    }
    Ok((checked, failures))
}

/// `δ_t∗δ_u − δ_u∗δ_t = δ_{t→u−u→t}` on CK, for `v(t)+v(u) ≤ max_vertices`.
/// With `normalized`, the dual basis is `σ(t)δ_t` and the product is `↷`.
pub fn check_graft_bracket(max_vertices: usize, normalized: bool) -> Result<(usize, Vec<String>)> {
    let kind = if normalized { PreLie::GraftSigma } else { PreLie::Graft };
    let ctx = ConvolutionContext::new(Algebra::CK, max_vertices);
    let ts: Vec<Tree> = (1..max_vertices).flat_map(|n| trees::trees_with_vertices(n).as_ref().clone()).collect();
    let dual = |t: &Tree| -> Result<Functional> {
        let d = linalg::delta_basis(&Forest::single(t.clone()), Algebra::CK)?.truncated(max_vertices);
        if normalized {
            let s = rational::from_u128(t.symmetry());
            d.combine(&s, &d, &Rational::zero(), Algebra::CK)
        } else {
            Ok(d)
        }
    };
    let mut failures = Vec::new();
    let mut checked = 0;
    for t in &ts {
        for u in &ts {
            if t.vertices() + u.vertices() > max_vertices || t >= u {
                continue;
            }
            checked += 1;
            let (dt, du) = (dual(t)?, dual(u)?);
            let lhs = convolve(&dt, &du, ctx)?.combine(&Rational::one(), &convolve(&du, &dt, ctx)?, &-Rational::one(), Algebra::CK)?;
            let bracket = &kind.apply(t, u)? - &kind.apply(u, t)?;
            let bracket = if normalized { hopf::a_sigma(&bracket) } else { bracket };
            let rhs = dual_of(&bracket, Grading::Vertex, max_vertices);
            if lhs.first_difference(&rhs, Algebra::CK, max_vertices)?.is_some() {
                failures.push(format!("({t}, {u})"));
            }
        }
    }
    Ok((checked, failures))
}

/// `Σ c_v δ_v` for a combination of trees `Σ c_v v`.
fn dual_of(x: &ForestSum, grading: Grading, max_degree: usize) -> Functional {
    let values: BTreeMap<Tree, Rational> =
        x.iter().filter_map(|(s, c)| s.as_tree().map(|t| (t.clone(), c.clone()))).collect();
    Functional::infinitesimal(grading, max_degree, values)
}

/// The pre-Lie identities, the two routes to grafting, the bracket
/// identities and the Magnus fixed point, up to the given grade.
pub fn verify_prelie(max_grade: usize) -> Result<Report> {
    let mut report = Report::new();
    for kind in PreLie::ALL {
        let (checked, failures) = check_prelie_identity(kind, max_grade)?;
        report.push_failures(format!("pre-Lie identity {}", kind.symbol()), checked, failures);
    }
    let mut failures = Vec::new();
    let mut checked = 0;
    let ts: Vec<Tree> = (1..max_grade).flat_map(|n| trees::trees_with_vertices(n).as_ref().clone()).collect();
    for t in &ts {
        for u in &ts {
            if t.vertices() + u.vertices() > max_grade {
                continue;
            }
            checked += 1;
            for normalized in [false, true] {
                if graft(t, u, normalized) != graft_dual(t, u, normalized)? {
                    failures.push(format!("({t}, {u}, normalized={normalized})"));
                }
            }
        }
    }
    report.push_failures("grafting: attachment vs Δ_CK", checked, failures);
    let edges = max_grade.saturating_sub(1).min(4);
    for normalized in [false, true] {
        let (checked, failures) = check_insertion_bracket(edges, normalized)?;
        let name = if normalized { "Z_σ bracket ▷_σ" } else { "Z bracket ▷" };
        report.push_failures(name, checked, failures);
        let (checked, failures) = check_graft_bracket(max_grade.min(5), normalized)?;
        let name = if normalized { "δ̃ bracket ↷" } else { "δ bracket →" };
        report.push_failures(name, checked, failures);
    }
    let n = max_grade.min(6);
    let omega = magnus_omega(n)?;
    let w = named_character(Named::Omega, n)?;
    let mut failures = Vec::new();
    let mut checked = 0;
    for k in 1..=n {
        for t in trees::trees_with_vertices(k).iter() {
            checked += 1;
            let expected = w.tree_value(t)? / rational::from_u128(t.symmetry());
            if omega.coeff(&Forest::single(t.clone())) != expected {
                failures.push(format!("{t}"));
            }
        }
    }
    report.push_failures("Magnus fixed point = ω/σ", checked, failures);
    Ok(report)
}
