//! Left and right coactions of `H` (or `H̃`) on the Connes–Kreimer algebra,
//! and the induced actions on functionals.
//!
//! On a nonempty tree both coactions are the `H` coproduct, read with the
//! subforest in `H` and the contraction in CK for `Φ`, and the other way
//! round for `Ψ`. They extend multiplicatively from `Φ(∅) = •⊗∅` and
//! `Ψ(∅) = ∅⊗•`. The `H̃` flavor uses the spanning-subforest coproduct with
//! `∅` as unit on both sides.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hopf;
use crate::linalg::{Algebra, ForestSum, Functional, Grading, Kind, Slot, TensorSum, UNBOUNDED};
use crate::rational::Rational;
use crate::trees::{self, Forest, Tree};

/// Which algebra coacts on CK.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    H,
    HTilde,
}

impl Flavor {
    /// Flavor matching a functional's grading: edge-graded forms live on `H`,
    /// vertex-graded ones on `H̃`.
    pub fn of(grading: Grading) -> Flavor {
        match grading {
            Grading::Edge => Flavor::H,
            Grading::Vertex => Flavor::HTilde,
        }
    }

    fn algebra(self) -> Algebra {
        match self {
            Flavor::H => Algebra::H,
            Flavor::HTilde => Algebra::HTilde,
        }
    }

    fn slot(self) -> Slot {
        match self {
            Flavor::H => Slot::H,
            Flavor::HTilde => Slot::Plain,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn coaction(x: &Forest, flavor: Flavor, side: Side) -> Result<TensorSum> {
    let a = flavor.algebra();
    let slots = match side {
        Side::Left => [flavor.slot(), Slot::Plain],
        Side::Right => [Slot::Plain, flavor.slot()],
    };
    let unit = match side {
        Side::Left => vec![flavor.slot().unit(), Forest::empty()],
        Side::Right => vec![Forest::empty(), flavor.slot().unit()],
    };
    let mut acc = TensorSum::single(unit, Rational::one());
    for t in x.trees() {
        acc = acc.product(&*hopf::tree_coproduct(t, a)?, &slots);
    }
    Ok(acc)
}

/// `Φ(x) = Σ x₁⊗x₀`, with `x₁` in `H` (or `H̃`) and `x₀` in CK.
pub fn coaction_phi(x: &Forest, flavor: Flavor) -> Result<TensorSum> {
    coaction(x, flavor, Side::Left)
}

/// `Ψ(x) = Σ x′₀⊗x′₁`, with `x′₀` in CK and `x′₁` in `H` (or `H̃`).
pub fn coaction_psi(x: &Forest, flavor: Flavor) -> Result<TensorSum> {
    coaction(x, flavor, Side::Right)
}

/// `ᵗL_a(x) = Σ a(x₁) x₀`.
pub fn t_l(a: &Functional, x: &Forest) -> Result<ForestSum> {
    let mut out = ForestSum::zero();
    for (k, c) in coaction_phi(x, Flavor::of(a.grading()))?.iter() {
        out.add_term(k[1].clone(), a.eval(&k[0])? * c);
    }
    Ok(out)
}

/// `ᵗR_a(x) = Σ a(x′₁) x′₀`.
pub fn t_r(a: &Functional, x: &Forest) -> Result<ForestSum> {
    let mut out = ForestSum::zero();
    for (k, c) in coaction_psi(x, Flavor::of(a.grading()))?.iter() {
        out.add_term(k[0].clone(), a.eval(&k[1])? * c);
    }
    Ok(out)
}

fn action_at(a: &Functional, b: &Functional, side: Side, x: &Forest) -> Result<Rational> {
    let flavor = Flavor::of(a.grading());
    let mut acc = Rational::zero();
    for (k, c) in coaction(x, flavor, side)?.iter() {
        let (on_a, on_b) = match side {
            Side::Left => (&k[0], &k[1]),
            Side::Right => (&k[1], &k[0]),
        };
        let va = a.eval(on_a)?;
        if va.is_zero() {
            continue;
        }
        acc += va * b.eval(on_b)? * c;
    }
    Ok(acc)
}

/// Action of a functional `a` on `H` (edge-graded) or `H̃` (vertex-graded)
/// on a CK functional `b`: `(a⋆b)(x) = Σ a(x₁)b(x₀)` through `Φ` on the left,
/// `(b⋆a)(x) = Σ b(x′₀)a(x′₁)` through `Ψ` on the right. The result is
/// computed on CK forests with at most `max_degree` vertices.
pub fn star_action(a: &Functional, b: &Functional, side: Side, max_degree: usize) -> Result<Functional> {
    if b.grading() != Grading::Vertex {
        return Err(Error::GradingMismatch("the acted-on functional must live on CK".into()));
    }
    let needed_a = match a.grading() {
        Grading::Edge => max_degree.saturating_sub(1),
        Grading::Vertex => max_degree,
    };
    if a.max_degree() < needed_a {
        return Err(Error::InsufficientDegree { needed: needed_a, available: a.max_degree() });
    }
    if b.max_degree() < max_degree {
        return Err(Error::InsufficientDegree { needed: max_degree, available: b.max_degree() });
    }
    let kind = match (a.kind(), b.kind()) {
        (Kind::Character, Kind::Character) => Kind::Character,
        (Kind::Character, Kind::Infinitesimal) => Kind::Infinitesimal,
        _ => Kind::Generic,
    };
    if kind == Kind::Generic {
        let mut values = BTreeMap::new();
        for d in 0..=max_degree {
            for x in trees::forests_with_vertices(d) {
                let v = action_at(a, b, side, &x)?;
                values.insert(x, v);
            }
        }
        return Ok(Functional::generic(Grading::Vertex, max_degree, values));
    }
    let mut values = BTreeMap::new();
    for d in 1..=max_degree {
        for t in trees::trees_with_vertices(d).iter() {
            let v = action_at(a, b, side, &Forest::single(t.clone()))?;
            values.insert(t.clone(), v);
        }
    }
    Ok(match kind {
        Kind::Character => Functional::character_unchecked(Grading::Vertex, max_degree, values),
        _ => Functional::infinitesimal(Grading::Vertex, max_degree, values),
    })
}

/// The two ways of turning a character of `H` or `H̃` into a CK functional.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Correspondence {
    /// `φ⋆δ_•`, an infinitesimal character.
    Infinitesimal,
    /// `φ⋆δ`, a character.
    Character,
}

/// `φ⋆δ_•` or `φ⋆δ`; both agree with `φ` on nonempty trees.
pub fn correspond(phi: &Functional, mode: Correspondence, max_degree: usize) -> Result<Functional> {
    if phi.kind() != Kind::Character {
        return Err(Error::Precondition("correspondence is defined for characters".into()));
    }
    let target = match mode {
        Correspondence::Infinitesimal => {
            Functional::infinitesimal(Grading::Vertex, UNBOUNDED, BTreeMap::from([(Tree::bullet(), Rational::one())]))
        }
        Correspondence::Character => Functional::character_unchecked(
            Grading::Vertex,
            UNBOUNDED,
            BTreeMap::from([(Tree::bullet(), Rational::one())]),
        ),
    };
    star_action(phi, &target, Side::Left, max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::delta_basis;
    use crate::rational::int;

    fn f(s: &str) -> Forest {
        Forest::parse(s).unwrap()
    }

    #[test]
    fn units() {
        let phi = coaction_phi(&Forest::empty(), Flavor::H).unwrap();
        assert_eq!(phi.to_string(), "[]⊗∅");
        let psi = coaction_psi(&Forest::empty(), Flavor::H).unwrap();
        assert_eq!(psi.to_string(), "∅⊗[]");
        let tphi = coaction_phi(&Forest::empty(), Flavor::HTilde).unwrap();
        assert_eq!(tphi.to_string(), "∅⊗∅");
    }

    #[test]
    fn phi_of_edge() {
        let phi = coaction_phi(&f("[[]]"), Flavor::H).unwrap();
        assert_eq!(phi.to_string(), "[]⊗[[]] + [[]]⊗[]");
    }

    #[test]
    fn psi_keeps_bullets_apart_in_ck() {
        // Ψ(E1·E1): the left factor lives in CK, where •·• is not •
        let psi = coaction_psi(&f("[[]]·[[]]"), Flavor::H).unwrap();
        assert_eq!(psi.coeff(&[f("[]·[]"), f("[[]]·[[]]")]), int(1));
        assert_eq!(psi.coeff(&[f("[]·[[]]"), f("[[]]")]), int(2));
    }

    #[test]
    fn transpose_of_edge_dual() {
        let z = delta_basis(&f("[[]]"), Algebra::H).unwrap();
        assert_eq!(t_l(&z, &f("[[[]]]")).unwrap(), ForestSum::term(f("[[]]"), int(2)));
        let counit = delta_basis(&Forest::bullet(), Algebra::H).unwrap();
        let x = f("[[][]]·[[]]");
        assert_eq!(t_l(&counit, &x).unwrap(), ForestSum::from_forest(x));
    }
}
