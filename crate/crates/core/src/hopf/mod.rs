//! Coproducts, counits and antipodes of the four forest algebras.
//!
//! `H` and `H̃` coproducts are enumerated over the `2^e(t)` edge subsets of a
//! tree; the Connes–Kreimer coproduct runs over admissible cuts. Coproducts
//! of single trees are memoized, forests use multiplicativity.

mod checks;
mod oracles;
pub(crate) mod shape;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Algebra, ForestSum, Slot, TensorSum};
use crate::rational::{self, Rational};
use crate::trees::{Forest, Tree};

pub use checks::{
    check_antipode_axioms, check_antipode_methods, check_coassociativity, check_cocycle, check_counit, check_oracles,
    verify_structure,
};
pub use oracles::{corolla_coproduct, floored_coproduct, floored_coproduct_with, ladder_coproduct, FloorRule};
use shape::Shape;

type Cache<V> = OnceLock<Mutex<HashMap<(Algebra, Tree), Arc<V>>>>;

fn cached<V, F>(cache: &'static Cache<V>, key: (Algebra, Tree), compute: F) -> Result<Arc<V>>
where
    F: FnOnce() -> Result<V>,
{
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().expect("coproduct cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    // Computed outside the lock: the closure may recurse into the same cache.
    let v = Arc::new(compute()?);
    Ok(map.lock().expect("coproduct cache poisoned").entry(key).or_insert(v).clone())
}

/// Tensor slots for a coproduct of the given algebra.
pub fn slots(algebra: Algebra, arity: usize) -> Vec<Slot> {
    vec![Slot::of(algebra); arity]
}

fn check_in_h(s: &Forest) -> Result<()> {
    if s.is_h_forest() {
        Ok(())
    } else {
        Err(Error::NotInH(s.to_string()))
    }
}

/// Coproduct of a forest.
pub fn coproduct(s: &Forest, algebra: Algebra) -> Result<TensorSum> {
    if algebra.grading() == crate::linalg::Grading::Edge {
        check_in_h(s)?;
        if s.is_h_unit() {
            return Ok(TensorSum::single(vec![Forest::bullet(), Forest::bullet()], Rational::one()));
        }
    }
    let unit = algebra.unit();
    let mut acc = TensorSum::single(vec![unit.clone(), unit], Rational::one());
    let sl = slots(algebra, 2);
    for t in s.trees() {
        let d = tree_coproduct(t, algebra)?;
        acc = acc.product(&d, &sl);
    }
    Ok(acc)
}

/// Coproduct of a single tree (memoized).
pub fn tree_coproduct(t: &Tree, algebra: Algebra) -> Result<Arc<TensorSum>> {
    static CACHE: Cache<TensorSum> = OnceLock::new();
    cached(&CACHE, (algebra, t.clone()), || {
        Ok(match algebra {
            Algebra::H => edge_subset_coproduct(t, false),
            Algebra::HTilde => edge_subset_coproduct(t, true),
            Algebra::HSigma => sigma_normalize(&edge_subset_coproduct(t, false), t),
            Algebra::CK => ck_tree_coproduct(t),
        })
    })
}

fn edge_subset_coproduct(t: &Tree, spanning: bool) -> TensorSum {
    let sh = Shape::new(t);
    let mut out = TensorSum::zero(2);
    for mask in 0..=sh.full_mask() {
        let left = if spanning { sh.spanning_subforest(mask) } else { sh.h_subforest(mask) };
        out.add_term(vec![left, Forest::single(sh.quotient(mask))], Rational::one());
    }
    out
}

/// Rescales `Δ(t)` into `Δ_σ(t) = (A_σ⊗A_σ)ΔA_σ^{-1}(t)`, with `A_σ(s) = σ(s)s`.
fn sigma_normalize(d: &TensorSum, t: &Tree) -> TensorSum {
    let st = rational::from_u128(t.symmetry());
    let mut out = TensorSum::zero(2);
    for (k, c) in d.iter() {
        let w = rational::from_u128(k[0].symmetry() * k[1].symmetry()) / &st;
        out.add_term(k.clone(), c * w);
    }
    out
}

/// Admissible cuts of `t`, the empty cut included: pairs (pruned branches, trunk).
fn admissible_cuts(t: &Tree) -> Vec<(Vec<Tree>, Tree)> {
    // Each child is either cut off whole or cut further down.
    let mut partial: Vec<(Vec<Tree>, Vec<Tree>)> = vec![(Vec::new(), Vec::new())];
    for c in t.children() {
        let below = admissible_cuts(c);
        let mut next = Vec::with_capacity(partial.len() * (below.len() + 1));
        for (pruned, trunk_kids) in &partial {
            let mut p = pruned.clone();
            p.push(c.clone());
            next.push((p, trunk_kids.clone()));
            for (bp, bt) in &below {
                let mut p = pruned.clone();
                p.extend(bp.iter().cloned());
                let mut k = trunk_kids.clone();
                k.push(bt.clone());
                next.push((p, k));
            }
        }
        partial = next;
    }
    partial.into_iter().map(|(p, k)| (p, Tree::from_children(k))).collect()
}

fn ck_tree_coproduct(t: &Tree) -> TensorSum {
    let mut out = TensorSum::single(vec![Forest::single(t.clone()), Forest::empty()], Rational::one());
    for (pruned, trunk) in admissible_cuts(t) {
        out.add_term(vec![Forest::new(pruned), Forest::single(trunk)], Rational::one());
    }
    out
}

/// Counit: `H` is 1 on `•`, CK on `∅`, and `H̃` on every forest of bare vertices.
pub fn counit(s: &Forest, algebra: Algebra) -> Rational {
    let hit = match algebra {
        Algebra::H | Algebra::HSigma => s.h_normalized().is_h_unit(),
        Algebra::CK => s.is_empty(),
        Algebra::HTilde => s.is_bullet_forest(),
    };
    if hit {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// `Δ(s) − s⊗1 − 1⊗s`; zero on the unit.
pub fn reduced_coproduct(s: &Forest, algebra: Algebra) -> Result<TensorSum> {
    if algebra == Algebra::HTilde {
        return Err(Error::Unsupported { operation: "reduced coproduct", algebra });
    }
    let unit = algebra.unit();
    let mut d = coproduct(s, algebra)?;
    if *s == unit {
        return Ok(TensorSum::zero(2));
    }
    d.add_term(vec![s.clone(), unit.clone()], -Rational::one());
    d.add_term(vec![unit, s.clone()], -Rational::one());
    Ok(d)
}

/// `n`-fold iterate of the (reduced) coproduct, applied each time to the
/// last tensor factor; the result has `n + 1` factors.
pub fn iterated_coproduct(s: &Forest, algebra: Algebra, n: usize, reduced: bool) -> Result<TensorSum> {
    let mut acc = TensorSum::single(vec![s.clone()], Rational::one());
    for k in 1..=n {
        acc = acc.flat_map(k + 1, |factors| {
            let (last, head) = factors.split_last().expect("nonempty tensor");
            let d = if reduced { reduced_coproduct(last, algebra)? } else { coproduct(last, algebra)? };
            let mut out = TensorSum::zero(k + 1);
            for (pair, c) in d.iter() {
                let mut f = head.to_vec();
                f.extend(pair.iter().cloned());
                out.add_term(f, c.clone());
            }
            Ok(out)
        })?;
    }
    Ok(acc)
}

/// How an antipode is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AntipodeMethod {
    /// `S(t) = −t − Σ S(t′)t″` over the reduced coproduct.
    Recursive,
    /// `S(t) = −t − Σ t′S(t″)`.
    RecursiveRight,
    /// Sum over chains of nontrivial subforests in successive contractions
    /// (`H` and `H_σ` only).
    ClosedForm,
}

/// Antipode of a forest, extended multiplicatively.
pub fn antipode(s: &Forest, algebra: Algebra, method: AntipodeMethod) -> Result<ForestSum> {
    match (algebra, method) {
        (Algebra::HTilde, _) => return Err(Error::Unsupported { operation: "antipode", algebra }),
        (Algebra::CK, AntipodeMethod::ClosedForm) => {
            return Err(Error::Unsupported { operation: "closed-form antipode", algebra })
        }
        (Algebra::H | Algebra::HSigma, _) => check_in_h(s)?,
        _ => {}
    }
    let mut acc = ForestSum::from_forest(algebra.unit());
    for t in s.trees() {
        if algebra != Algebra::CK && t.is_bullet() {
            continue;
        }
        let st = tree_antipode(t, algebra, method)?;
        acc = acc.product_with(&st, |a, b| algebra.multiply(a, b));
    }
    Ok(acc)
}

fn tree_antipode(t: &Tree, algebra: Algebra, method: AntipodeMethod) -> Result<Arc<ForestSum>> {
    static LEFT: Cache<ForestSum> = OnceLock::new();
    static RIGHT: Cache<ForestSum> = OnceLock::new();
    match method {
        AntipodeMethod::Recursive => cached(&LEFT, (algebra, t.clone()), || recursive_antipode(t, algebra, true)),
        AntipodeMethod::RecursiveRight => {
            cached(&RIGHT, (algebra, t.clone()), || recursive_antipode(t, algebra, false))
        }
        AntipodeMethod::ClosedForm => Ok(Arc::new(match algebra {
            Algebra::H => closed_antipode(t),
            Algebra::HSigma => {
                let inv = Rational::one() / rational::from_u128(t.symmetry());
                let mut out = ForestSum::zero();
                for (f, c) in closed_antipode(t).iter() {
                    out.add_term(f.clone(), c * rational::from_u128(f.symmetry()) * &inv);
                }
                out
            }
            _ => unreachable!("checked by caller"),
        })),
    }
}

fn recursive_antipode(t: &Tree, algebra: Algebra, left: bool) -> Result<ForestSum> {
    let s = Forest::single(t.clone());
    let method = if left { AntipodeMethod::Recursive } else { AntipodeMethod::RecursiveRight };
    let mut out = ForestSum::term(s.clone(), -Rational::one());
    for (k, c) in reduced_coproduct(&s, algebra)?.iter() {
        let term = if left {
            antipode(&k[0], algebra, method)?.product_with(&ForestSum::from_forest(k[1].clone()), |a, b| algebra.multiply(a, b))
        } else {
            ForestSum::from_forest(k[0].clone()).product_with(&antipode(&k[1], algebra, method)?, |a, b| algebra.multiply(a, b))
        };
        out.add_scaled(&term, &-c);
    }
    Ok(out)
}

/// `S(t) = Σ (−1)^r s_1 s_2 ⋯ s_r` over ordered sequences where `s_1` is a
/// nontrivial subforest of `t`, `s_2` one of `t/s_1`, and so on, until the
/// last block `s_r` exhausts the remaining edges.
fn closed_antipode(t: &Tree) -> ForestSum {
    if t.is_bullet() {
        return ForestSum::from_forest(Forest::bullet());
    }
    let sh = Shape::new(t);
    let mut out = ForestSum::zero();
    for mask in 1..=sh.full_mask() {
        let first = ForestSum::from_forest(sh.h_subforest(mask));
        let rest = closed_antipode(&sh.quotient(mask));
        out.add_scaled(&first.h_mul(&rest), &-Rational::one());
    }
    out
}

/// `A_σ`: multiplies each forest by its symmetry factor.
pub fn a_sigma(x: &ForestSum) -> ForestSum {
    let mut out = ForestSum::zero();
    for (f, c) in x.iter() {
        out.add_term(f.clone(), c * rational::from_u128(f.symmetry()));
    }
    out
}

/// `A_σ^{-1}`.
pub fn a_sigma_inv(x: &ForestSum) -> ForestSum {
    let mut out = ForestSum::zero();
    for (f, c) in x.iter() {
        out.add_term(f.clone(), c / rational::from_u128(f.symmetry()));
    }
    out
}

/// Applies a coproduct linearly to a combination of forests.
pub fn coproduct_sum(x: &ForestSum, algebra: Algebra) -> Result<TensorSum> {
    let mut out = TensorSum::zero(2);
    for (f, c) in x.iter() {
        out.add_scaled(&coproduct(f, algebra)?, c);
    }
    Ok(out)
}
