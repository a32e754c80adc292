//! Closed-form expansions of the `H` coproduct on corollas, ladders and
//! general trees through floor functions. They share no code with the
//! edge-subset enumeration and serve as independent checks of it.

use num_traits::One;

use super::shape::Shape;
use crate::linalg::TensorSum;
use crate::rational::{self, Rational};
use crate::trees::{Forest, Tree};

fn corolla_or_unit(n: usize) -> Forest {
    if n == 0 {
        Forest::bullet()
    } else {
        Forest::single(Tree::corolla(n))
    }
}

/// `Δ(C_n) = Σ_p (n choose p) C_p ⊗ C_{n−p}`, with `C_0 = •`.
pub fn corolla_coproduct(n: usize) -> TensorSum {
    let mut out = TensorSum::zero(2);
    for p in 0..=n {
        let c = rational::from_biguint(&rational::binomial(n, p));
        out.add_term(vec![corolla_or_unit(p), corolla_or_unit(n - p)], c);
    }
    out
}

/// Sequences of nonnegative integers summing to `n` whose entries are
/// positive except possibly the first.
fn mock_compositions(n: usize) -> Vec<Vec<usize>> {
    fn compositions(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in 1..=n {
            for mut rest in compositions(n - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut out = Vec::new();
    for p1 in 0..=n {
        for mut rest in compositions(n - p1) {
            rest.insert(0, p1);
            out.push(rest);
        }
    }
    out
}

/// `Δ(E_n)` as a sum over mock-compositions `(p_1, …, p_r)` of `n`: the
/// ladders of odd rank go to the left, the even ranks are added up on the right.
pub fn ladder_coproduct(n: usize) -> TensorSum {
    let mut out = TensorSum::zero(2);
    for pi in mock_compositions(n) {
        let mut left = Forest::bullet();
        let mut right = 0;
        for (i, &p) in pi.iter().enumerate() {
            if i % 2 == 0 {
                left = left.h_product(&Forest::single(Tree::ladder(p)));
            } else {
                right += p;
            }
        }
        out.add_term(vec![left, Forest::single(Tree::ladder(right))], Rational::one());
    }
    out
}

/// Admissible floor functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FloorRule {
    /// Along every root-to-leaf path the floor starts at 0 or 1 and climbs
    /// by at most one per edge. Floor functions are then in bijection with
    /// edge subsets.
    PerPath,
    /// Nondecreasing, `fl(e) ≤ ht(e)`, with image an interval of ℕ starting
    /// at 0 or 1. Agrees with `PerPath` on ladders and corollas only.
    GlobalInterval,
}

fn floor_functions(sh: &Shape, rule: FloorRule) -> Vec<Vec<usize>> {
    let e = sh.edges();
    let mut out = Vec::new();
    let mut fl = vec![0usize; e];
    fn go(sh: &Shape, rule: FloorRule, i: usize, fl: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == fl.len() {
            if rule == FloorRule::GlobalInterval {
                let mut image: Vec<usize> = fl.clone();
                image.sort_unstable();
                image.dedup();
                let interval = image.windows(2).all(|w| w[1] == w[0] + 1);
                if !interval || image.first().is_some_and(|&m| m > 1) {
                    return;
                }
            }
            out.push(fl.clone());
            return;
        }
        let p = sh.parent_of_edge(i);
        let below = if p == 0 { None } else { Some(fl[p - 1]) };
        let choices: Vec<usize> = match (rule, below) {
            (FloorRule::PerPath, None) => vec![0, 1],
            (FloorRule::PerPath, Some(b)) => vec![b, b + 1],
            (FloorRule::GlobalInterval, b) => (b.unwrap_or(0)..=sh.height(i)).collect(),
        };
        for c in choices {
            fl[i] = c;
            go(sh, rule, i + 1, fl, out);
        }
    }
    go(sh, rule, 0, &mut fl, &mut out);
    out
}

/// `Δ(t)` assembled from floored trees: the edges on even floors form the
/// left factor, and the right factor is the contraction by them.
pub fn floored_coproduct_with(t: &Tree, rule: FloorRule) -> TensorSum {
    let sh = Shape::new(t);
    let mut out = TensorSum::zero(2);
    if t.is_bullet() {
        out.add_term(vec![Forest::bullet(), Forest::bullet()], Rational::one());
        return out;
    }
    for fl in floor_functions(&sh, rule) {
        let mask = fl
            .iter()
            .enumerate()
            .filter(|(_, f)| *f % 2 == 0)
            .fold(0u64, |m, (e, _)| m | Shape::bit(Shape::child_of_edge(e)));
        out.add_term(vec![sh.h_subforest(mask), Forest::single(sh.quotient(mask))], Rational::one());
    }
    out
}

pub fn floored_coproduct(t: &Tree) -> TensorSum {
    floored_coproduct_with(t, FloorRule::PerPath)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn mock_composition_counts() {
        for n in 0..7 {
            assert_eq!(mock_compositions(n).len(), 1 << n);
        }
    }

    #[test]
    fn corolla_two() {
        let d = corolla_coproduct(2);
        assert_eq!(d.to_string(), "[]⊗[[][]] + 2·[[]]⊗[[]] + [[][]]⊗[]");
    }

    #[test]
    fn ladder_three_has_eight_terms() {
        let d = ladder_coproduct(3);
        assert_eq!(d.total_weight(), int(8));
        let e1 = Forest::single(Tree::ladder(1));
        assert_eq!(d.coeff(&[e1.concat(&e1), e1.clone()]), int(1));
    }

    #[test]
    fn global_rule_matches_on_corollas() {
        for n in 1..5 {
            let c = Tree::corolla(n);
            assert_eq!(floored_coproduct_with(&c, FloorRule::GlobalInterval), corolla_coproduct(n));
        }
    }
}
