//! Hopf algebra axioms and the agreement of the independent coproduct and
//! antipode computations, as pass/fail reports.

use num_traits::Zero;

use super::{antipode, coproduct, counit, AntipodeMethod};
use super::{corolla_coproduct, floored_coproduct, ladder_coproduct};
use crate::error::Result;
use crate::linalg::{Algebra, ForestSum, TensorSum};
use crate::report::Report;
use crate::trees::{self, Forest, Tree};

fn basis_up_to(algebra: Algebra, max_degree: usize) -> Vec<Forest> {
    (0..=max_degree).flat_map(|d| algebra.basis(d)).collect()
}

/// `(Δ⊗id)Δ = (id⊗Δ)Δ` on every basis forest of degree at most `max_degree`.
pub fn check_coassociativity(algebra: Algebra, max_degree: usize) -> Result<(usize, Vec<String>)> {
    let basis = basis_up_to(algebra, max_degree);
    let mut failures = Vec::new();
    for s in &basis {
        let d = coproduct(s, algebra)?;
        let left = d.flat_map(3, |k| {
            let mut out = TensorSum::zero(3);
            for (p, c) in coproduct(&k[0], algebra)?.iter() {
                out.add_term(vec![p[0].clone(), p[1].clone(), k[1].clone()], c.clone());
            }
            Ok(out)
        })?;
        let right = d.flat_map(3, |k| {
            let mut out = TensorSum::zero(3);
            for (p, c) in coproduct(&k[1], algebra)?.iter() {
                out.add_term(vec![k[0].clone(), p[0].clone(), p[1].clone()], c.clone());
            }
            Ok(out)
        })?;
        if left != right {
            failures.push(s.to_string());
        }
    }
    Ok((basis.len(), failures))
}

/// `(ε⊗id)Δ = id = (id⊗ε)Δ`.
pub fn check_counit(algebra: Algebra, max_degree: usize) -> Result<(usize, Vec<String>)> {
    let basis = basis_up_to(algebra, max_degree);
    let mut failures = Vec::new();
    for s in &basis {
        let d = coproduct(s, algebra)?;
        let mut left = ForestSum::zero();
        let mut right = ForestSum::zero();
        for (k, c) in d.iter() {
            left.add_term(k[1].clone(), counit(&k[0], algebra) * c);
            right.add_term(k[0].clone(), counit(&k[1], algebra) * c);
        }
        let expected = ForestSum::from_forest(s.clone());
        if left != expected || right != expected {
            failures.push(s.to_string());
        }
    }
    Ok((basis.len(), failures))
}

/// `m(S⊗id)Δ = ηε = m(id⊗S)Δ`.
pub fn check_antipode_axioms(algebra: Algebra, max_degree: usize) -> Result<(usize, Vec<String>)> {
    let basis = basis_up_to(algebra, max_degree);
    let mut failures = Vec::new();
    let mul = |a: &Forest, b: &Forest| algebra.multiply(a, b);
    for s in &basis {
        let mut left = ForestSum::zero();
        let mut right = ForestSum::zero();
        for (k, c) in coproduct(s, algebra)?.iter() {
            let sl = antipode(&k[0], algebra, AntipodeMethod::Recursive)?;
            left.add_scaled(&sl.product_with(&ForestSum::from_forest(k[1].clone()), mul), c);
            let sr = antipode(&k[1], algebra, AntipodeMethod::Recursive)?;
            right.add_scaled(&ForestSum::from_forest(k[0].clone()).product_with(&sr, mul), c);
        }
        let e = counit(s, algebra);
        let expected = if e.is_zero() { ForestSum::zero() } else { ForestSum::term(algebra.unit(), e) };
        if left != expected || right != expected {
            failures.push(s.to_string());
        }
    }
    Ok((basis.len(), failures))
}

/// The left and right recursions, and on `H`, `H_σ` the closed form, agree.
pub fn check_antipode_methods(algebra: Algebra, max_degree: usize) -> Result<(usize, Vec<String>)> {
    let trees = algebra_trees(algebra, max_degree);
    let mut failures = Vec::new();
    for t in &trees {
        let s = Forest::single(t.clone());
        let a = antipode(&s, algebra, AntipodeMethod::Recursive)?;
        if antipode(&s, algebra, AntipodeMethod::RecursiveRight)? != a {
            failures.push(format!("right recursion at {t}"));
        }
        if matches!(algebra, Algebra::H | Algebra::HSigma) && antipode(&s, algebra, AntipodeMethod::ClosedForm)? != a {
            failures.push(format!("closed form at {t}"));
        }
    }
    Ok((trees.len(), failures))
}

fn algebra_trees(algebra: Algebra, max_degree: usize) -> Vec<Tree> {
    (1..=max_degree).flat_map(|d| algebra.trees_of_degree(d)).collect()
}

/// `Δ_CK∘B_+ = B_+⊗∅ + (id⊗B_+)∘Δ_CK` on forests with fewer than `max_vertices` vertices.
pub fn check_cocycle(max_vertices: usize) -> Result<(usize, Vec<String>)> {
    let forests: Vec<Forest> = (0..max_vertices).flat_map(trees::forests_with_vertices).collect();
    let mut failures = Vec::new();
    for u in &forests {
        let bu = Forest::single(trees::b_plus(u));
        let lhs = coproduct(&bu, Algebra::CK)?;
        let mut rhs = TensorSum::zero(2);
        rhs.add_term(vec![bu.clone(), Forest::empty()], num_traits::One::one());
        for (k, c) in coproduct(u, Algebra::CK)?.iter() {
            rhs.add_term(vec![k[0].clone(), Forest::single(trees::b_plus(&k[1]))], c.clone());
        }
        if lhs != rhs {
            failures.push(u.to_string());
        }
    }
    Ok((forests.len(), failures))
}

/// The edge-subset coproduct of `H` against the corolla, ladder and floored-tree expansions.
pub fn check_oracles(max_edges: usize) -> Result<Report> {
    let mut report = Report::new();
    let mut failures = Vec::new();
    for n in 1..=max_edges {
        let c = Forest::single(Tree::corolla(n));
        if coproduct(&c, Algebra::H)? != corolla_coproduct(n) {
            failures.push(format!("C_{n}"));
        }
    }
    report.push_failures("corolla coproduct", max_edges, failures);
    let mut failures = Vec::new();
    for n in 1..=max_edges {
        if coproduct(&Forest::single(Tree::ladder(n)), Algebra::H)? != ladder_coproduct(n) {
            failures.push(format!("E_{n}"));
        }
    }
    report.push_failures("ladder coproduct", max_edges, failures);
    let trees = algebra_trees(Algebra::H, max_edges);
    let mut failures = Vec::new();
    for t in &trees {
        if coproduct(&Forest::single(t.clone()), Algebra::H)? != floored_coproduct(t) {
            failures.push(t.to_string());
        }
    }
    report.push_failures("floored-tree coproduct", trees.len(), failures);
    Ok(report)
}

/// Coassociativity and counit for all four coproducts, antipode axioms and
/// method agreement for `H`, `H_σ`, CK, the coproduct oracles and the
/// `B_+` cocycle identity, up to `max_degree`.
pub fn verify_structure(max_degree: usize) -> Result<Report> {
    let mut report = Report::new();
    let all = [Algebra::H, Algebra::HSigma, Algebra::HTilde, Algebra::CK];
    for a in all {
        let (n, f) = check_coassociativity(a, max_degree)?;
        report.push_failures(format!("coassociativity ({a})"), n, f);
        let (n, f) = check_counit(a, max_degree)?;
        report.push_failures(format!("counit ({a})"), n, f);
    }
    for a in [Algebra::H, Algebra::HSigma, Algebra::CK] {
        let (n, f) = check_antipode_axioms(a, max_degree)?;
        report.push_failures(format!("antipode axioms ({a})"), n, f);
        let (n, f) = check_antipode_methods(a, max_degree)?;
        report.push_failures(format!("antipode methods agree ({a})"), n, f);
    }
    report.extend(check_oracles(max_degree)?);
    let (n, f) = check_cocycle(max_degree)?;
    report.push_failures("B_+ cocycle", n, f);
    Ok(report)
}
