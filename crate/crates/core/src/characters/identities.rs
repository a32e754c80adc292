//! Executable forms of the compatibilities between `H`, `H̃` and CK: the
//! codistributivity of `Φ` over `Δ_CK`, the action identities, and the
//! character correspondences. Random functionals come from a seeded stream.

use std::collections::BTreeMap;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::coaction::{coaction_phi, correspond, star_action, t_l, Correspondence, Flavor, Side};
use super::{compose_antipode, convolve, counit, exp_star, named_character, ConvolutionContext, Named};
use crate::error::Result;
use crate::hopf;
use crate::linalg::{self, Algebra, ForestSum, Functional, Grading, Slot, TensorSum};
use crate::rational::{self, Rational};
use crate::report::Report;
use crate::trees::{self, Forest, Tree};

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let p: i64 = rng.gen_range(-4..=4);
    let q: i64 = rng.gen_range(1..=3);
    rational::rat(p, q)
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = small_rational(rng);
        if r != Rational::from_integer(0.into()) {
            return r;
        }
    }
}

fn random_tree_values(algebra: Algebra, max_degree: usize, rng: &mut ChaCha8Rng) -> BTreeMap<Tree, Rational> {
    let mut tv = BTreeMap::new();
    for d in 1..=max_degree {
        for t in algebra.trees_of_degree(d) {
            tv.insert(t, small_rational(rng));
        }
    }
    tv
}

/// Character with small random tree values. On CK and `H̃` the value on `•`
/// is random and nonzero.
pub fn random_character(algebra: Algebra, max_degree: usize, seed: u64) -> Functional {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tv = random_tree_values(algebra, max_degree, &mut rng);
    if algebra.grading() == Grading::Vertex && max_degree >= 1 {
        tv.insert(Tree::bullet(), nonzero_rational(&mut rng));
    }
    Functional::character_unchecked(algebra.grading(), max_degree, tv)
}

pub fn random_infinitesimal(algebra: Algebra, max_degree: usize, seed: u64) -> Functional {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tv = random_tree_values(algebra, max_degree, &mut rng);
    Functional::infinitesimal(algebra.grading(), max_degree, tv)
}

/// Generic functional with random values on every basis forest, unit included.
pub fn random_functional(algebra: Algebra, max_degree: usize, seed: u64) -> Functional {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = BTreeMap::new();
    for d in 0..=max_degree {
        for s in algebra.basis(d) {
            values.insert(s, small_rational(&mut rng));
        }
    }
    Functional::generic(algebra.grading(), max_degree, values)
}

fn ck_forests(n: usize) -> Vec<Forest> {
    (0..=n).flat_map(trees::forests_with_vertices).collect()
}

fn ck_trees(n: usize) -> Vec<Tree> {
    (1..=n).flat_map(|d| trees::trees_with_vertices(d).as_ref().clone()).collect()
}

fn compare(
    report: &mut Report,
    name: &str,
    forests: &[Forest],
    mut lhs: impl FnMut(&Forest) -> Result<Rational>,
    mut rhs: impl FnMut(&Forest) -> Result<Rational>,
) -> Result<()> {
    let mut failures = Vec::new();
    for s in forests {
        let (a, b) = (lhs(s)?, rhs(s)?);
        if a != b {
            failures.push(format!("{s}: {a} ≠ {b}"));
        }
    }
    report.push_failures(name, forests.len(), failures);
    Ok(())
}

fn flavor_algebra(flavor: Flavor) -> Algebra {
    match flavor {
        Flavor::H => Algebra::H,
        Flavor::HTilde => Algebra::HTilde,
    }
}

fn flavor_slot(flavor: Flavor) -> Slot {
    match flavor {
        Flavor::H => Slot::H,
        Flavor::HTilde => Slot::Plain,
    }
}

fn flavor_tag(flavor: Flavor) -> &'static str {
    match flavor {
        Flavor::H => "H",
        Flavor::HTilde => "Htilde",
    }
}

/// `(id⊗Δ_CK)∘Φ` and `m^{1,3}∘(Φ⊗Φ)∘Δ_CK` applied to a forest.
fn codistributivity_sides(x: &Forest, flavor: Flavor) -> Result<(TensorSum, TensorSum)> {
    let lhs = coaction_phi(x, flavor)?.flat_map(3, |k| {
        let d = hopf::coproduct(&k[1], Algebra::CK)?;
        let mut out = TensorSum::zero(3);
        for (p, c) in d.iter() {
            out.add_term(vec![k[0].clone(), p[0].clone(), p[1].clone()], c.clone());
        }
        Ok(out)
    })?;
    let slot = flavor_slot(flavor);
    let rhs = hopf::coproduct(x, Algebra::CK)?.flat_map(3, |k| {
        let (l, r) = (coaction_phi(&k[0], flavor)?, coaction_phi(&k[1], flavor)?);
        let mut out = TensorSum::zero(3);
        for (a, x) in l.iter() {
            for (b, y) in r.iter() {
                out.add_term(vec![slot.multiply(&a[0], &b[0]), a[1].clone(), b[1].clone()], x * y);
            }
        }
        Ok(out)
    })?;
    Ok((lhs, rhs))
}

/// `Δ_CK(ᵗL_a x)` and `ᵗL_{m*a}(Δ_CK x)`, where `m*a(y⊗z) = a(yz)`.
fn transpose_sides(a: &Functional, x: &Forest) -> Result<(TensorSum, TensorSum)> {
    let flavor = Flavor::of(a.grading());
    let slot = flavor_slot(flavor);
    let mut lhs = TensorSum::zero(2);
    for (y, c) in t_l(a, x)?.iter() {
        lhs.add_scaled(&hopf::coproduct(y, Algebra::CK)?, c);
    }
    let rhs = hopf::coproduct(x, Algebra::CK)?.flat_map(2, |k| {
        let (l, r) = (coaction_phi(&k[0], flavor)?, coaction_phi(&k[1], flavor)?);
        let mut out = TensorSum::zero(2);
        for (p, u) in l.iter() {
            for (q, v) in r.iter() {
                let w = a.eval(&slot.multiply(&p[0], &q[0]))?;
                out.add_term(vec![p[1].clone(), q[1].clone()], w * u * v);
            }
        }
        Ok(out)
    })?;
    Ok((lhs, rhs))
}

/// Checks codistributivity, `(id⊗Δ_CK)∘Φ = m^{1,3}∘(Φ⊗Φ)∘Δ_CK`, on every tree
/// with at most `max_edges` edges, for both `H` and `H̃`, together with the
/// transpose identity `Δ_CK∘ᵗL_a = ᵗL_{m*a}∘Δ_CK` for dual basis elements `a = Z_t`.
pub fn verify_theorem_comp(max_edges: usize) -> Result<Report> {
    let mut report = Report::new();
    let candidates = ck_trees(max_edges + 1);
    for flavor in [Flavor::H, Flavor::HTilde] {
        let mut failures = Vec::new();
        for t in &candidates {
            let (l, r) = codistributivity_sides(&Forest::single(t.clone()), flavor)?;
            if l != r {
                failures.push(format!("{t}"));
            }
        }
        report.push_failures(format!("thm-comp ({})", flavor_tag(flavor)), candidates.len(), failures);
    }
    let mut samples = Vec::new();
    for e in 0..=max_edges.min(3) {
        for s in trees::h_forests_with_edges(e) {
            samples.push(linalg::delta_basis(&s, Algebra::H)?);
        }
    }
    let mut failures = Vec::new();
    let mut checked = 0;
    for a in &samples {
        for t in &candidates {
            checked += 1;
            let (l, r) = transpose_sides(a, &Forest::single(t.clone()))?;
            if l != r {
                failures.push(format!("a={}, x={t}", a.to_json()["values"]));
            }
        }
    }
    report.push_failures("transpose-L", checked, failures);
    Ok(report)
}

fn action(a: &Functional, b: &Functional, side: Side, n: usize) -> Result<Functional> {
    star_action(a, b, side, n)
}

fn ck_ctx(n: usize) -> ConvolutionContext {
    ConvolutionContext::new(Algebra::CK, n)
}

/// Runs the action identities CHV1–CHV5, the correspondence propositions,
/// the inverse formula, the biderivation and automorphism properties of
/// `ᵗL`, and the codistributivity theorem, on CK forests with at most
/// `max_degree` vertices, using random functionals drawn from `seed`.
pub fn verify_chv(max_degree: usize, seed: u64) -> Result<Report> {
    let n = max_degree;
    let forests = ck_forests(n);
    let mut report = Report::new();
    let eps = counit(Algebra::CK);
    let delta = named_character(Named::Delta, n)?;
    let delta_bullet = named_character(Named::DeltaBullet, n)?;

    for (k, flavor) in [Flavor::H, Flavor::HTilde].into_iter().enumerate() {
        let alg = flavor_algebra(flavor);
        let tag = flavor_tag(flavor);
        let s = seed.wrapping_add(100 * k as u64);
        let alpha = random_functional(alg, n, s);
        let b = random_functional(Algebra::CK, n, s + 1);
        let c = random_functional(Algebra::CK, n, s + 2);
        let phi = random_character(alg, n, s + 3);
        let b_char = random_character(Algebra::CK, n, s + 4);

        // CHV1: α⋆ε = α(unit)·ε (the right action only exists for H)
        let unit_value = alpha.eval(&alg.unit())?;
        let left = action(&alpha, &eps, Side::Left, n)?;
        compare(&mut report, &format!("CHV1 left ({tag})"), &forests, |x| left.eval(x), |x| Ok(&unit_value * eps.eval(x)?))?;
        if flavor == Flavor::H {
            let right = action(&alpha, &eps, Side::Right, n)?;
            compare(&mut report, "CHV1 right (H)", &forests, |x| right.eval(x), |x| Ok(&unit_value * eps.eval(x)?))?;
        }

        // CHV2: α⋆δ_• = α on trees, and vanishes on other forests
        let expect = |x: &Forest| -> Result<Rational> {
            match x.as_tree() {
                Some(_) => alpha.eval(x),
                None => Ok(Rational::from_integer(0.into())),
            }
        };
        let left = action(&alpha, &delta_bullet, Side::Left, n)?;
        compare(&mut report, &format!("CHV2 left ({tag})"), &forests, |x| left.eval(x), expect)?;
        if flavor == Flavor::H {
            let right = action(&alpha, &delta_bullet, Side::Right, n)?;
            compare(&mut report, "CHV2 right (H)", &forests, |x| right.eval(x), expect)?;
        }

        // CHV3: the counit of H (Z_•) or H̃ acts trivially
        let z = counit(alg);
        let left = action(&z, &b, Side::Left, n)?;
        compare(&mut report, &format!("CHV3 left ({tag})"), &forests, |x| left.eval(x), |x| b.eval(x))?;
        if flavor == Flavor::H {
            let right = action(&z, &b, Side::Right, n)?;
            compare(&mut report, "CHV3 right (H)", &forests, |x| right.eval(x), |x| b.eval(x))?;
        }

        // CHV4: φ⋆(b∗c) = (φ⋆b)∗(φ⋆c)
        let lhs = action(&phi, &convolve(&b, &c, ck_ctx(n))?, Side::Left, n)?;
        let rhs = convolve(&action(&phi, &b, Side::Left, n)?, &action(&phi, &c, Side::Left, n)?, ck_ctx(n))?;
        compare(&mut report, &format!("CHV4 ({tag})"), &forests, |x| lhs.eval(x), |x| rhs.eval(x))?;

        // CHV5: (φ⋆b)^{∗−1} = φ⋆b^{∗−1}
        let lhs = compose_antipode(&action(&phi, &b_char, Side::Left, n)?, ck_ctx(n))?;
        let rhs = action(&phi, &compose_antipode(&b_char, ck_ctx(n))?, Side::Left, n)?;
        compare(&mut report, &format!("CHV5 ({tag})"), &forests, |x| lhs.eval(x), |x| rhs.eval(x))?;

        // Correspondence: φ⋆δ_• and φ⋆δ agree with φ on trees. Generic copies
        // of δ_• and δ force a dense evaluation, so vanishing and
        // multiplicativity are observed rather than assumed.
        let db_dense = delta_bullet.materialize(Algebra::CK, n)?;
        let d_dense = delta.materialize(Algebra::CK, n)?;
        let inf = action(&phi, &db_dense, Side::Left, n)?;
        let chr = action(&phi, &d_dense, Side::Left, n)?;
        let typed_inf = correspond(&phi, Correspondence::Infinitesimal, n)?;
        let typed_chr = correspond(&phi, Correspondence::Character, n)?;
        let mut failures = Vec::new();
        for x in &forests {
            let inf_expected = match x.as_tree() {
                Some(t) => phi.tree_value(t)?,
                None => Rational::from_integer(0.into()),
            };
            let chr_expected = x
                .trees()
                .iter()
                .map(|t| phi.tree_value(t))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(Rational::one(), |a, b| a * b);
            if inf.eval(x)? != inf_expected || typed_inf.eval(x)? != inf_expected {
                failures.push(format!("φ⋆δ_• at {x}"));
            }
            if chr.eval(x)? != chr_expected || typed_chr.eval(x)? != chr_expected {
                failures.push(format!("φ⋆δ at {x}"));
            }
        }
        report.push_failures(format!("correspondence ({tag})"), forests.len(), failures);

        // CHVsuite: b^{∗−1} = b̃⋆δ^{∗−1}, with b̃ carrying the tree values of b.
        // For H the value of b on • must be 1.
        let mut tv = BTreeMap::new();
        for t in ck_trees(n) {
            let v = b_char.tree_value(&t)?;
            if !(flavor == Flavor::H && t.is_bullet()) {
                tv.insert(t, v);
            }
        }
        let b_used = match flavor {
            Flavor::H => {
                let mut with_unit = tv.clone();
                with_unit.insert(Tree::bullet(), Rational::one());
                Functional::character_unchecked(Grading::Vertex, n, with_unit)
            }
            Flavor::HTilde => b_char.clone(),
        };
        let b_tilde = Functional::character_unchecked(alg.grading(), n, tv);
        let lhs = compose_antipode(&b_used, ck_ctx(n))?;
        let rhs = action(&b_tilde, &compose_antipode(&delta.truncated(n), ck_ctx(n))?, Side::Left, n)?;
        compare(&mut report, &format!("chv-suite ({tag})"), &forests, |x| lhs.eval(x), |x| rhs.eval(x))?;

        // ᵗL_a is a biderivation for infinitesimal a, an automorphism for characters a
        let a_inf = random_infinitesimal(alg, n, s + 5);
        let mut der = Vec::new();
        let mut aut = Vec::new();
        let mut checked = 0;
        for x in &forests {
            checked += 1;
            let trees_of_x = x.trees();
            if trees_of_x.len() >= 2 {
                let (head, tail) = (Forest::single(trees_of_x[0].clone()), Forest::new(trees_of_x[1..].to_vec()));
                let lhs = t_l(&a_inf, x)?;
                let rhs = &t_l(&a_inf, &head)?.mul(&ForestSum::from_forest(tail.clone()))
                    + &ForestSum::from_forest(head.clone()).mul(&t_l(&a_inf, &tail)?);
                if lhs != rhs {
                    der.push(format!("derivation at {x}"));
                }
                if t_l(&phi, x)? != t_l(&phi, &head)?.mul(&t_l(&phi, &tail)?) {
                    aut.push(format!("multiplicativity at {x}"));
                }
            }
            let (l, r) = coderivation_sides(&a_inf, x)?;
            if l != r {
                der.push(format!("coderivation at {x}"));
            }
            let (l, r) = comorphism_sides(&phi, x)?;
            if l != r {
                aut.push(format!("comultiplicativity at {x}"));
            }
        }
        // the biderivation property is specific to H, whose counit vanishes off the unit
        if flavor == Flavor::H {
            report.push_failures("biderivation (H)", checked, der);
        }
        report.push_failures(format!("automorphism ({tag})"), checked, aut);

    }

    // for H characters: exp*(φ⋆δ_•) = φ⋆exp*(δ_•), and exp*(δ_•) = E⋆δ.
    let phi = random_character(Algebra::H, n, seed + 7);
    let lhs = exp_star(&correspond(&phi, Correspondence::Infinitesimal, n)?, ck_ctx(n))?;
    let exp_db = exp_star(&delta_bullet, ck_ctx(n))?;
    let rhs = action(&phi, &exp_db, Side::Left, n)?;
    compare(&mut report, "exp-correspondence", &forests, |x| lhs.eval(x), |x| rhs.eval(x))?;
    let e_delta = correspond(&named_character(Named::E, n)?, Correspondence::Character, n)?;
    compare(&mut report, "exp-delta-bullet", &forests, |x| exp_db.eval(x), |x| e_delta.eval(x))?;

    report.extend(verify_theorem_comp(n.saturating_sub(1))?);
    Ok(report)
}

/// `Δ_CK∘ᵗL_a` against `(ᵗL_a⊗id + id⊗ᵗL_a)∘Δ_CK`.
fn coderivation_sides(a: &Functional, x: &Forest) -> Result<(TensorSum, TensorSum)> {
    let mut lhs = TensorSum::zero(2);
    for (y, c) in t_l(a, x)?.iter() {
        lhs.add_scaled(&hopf::coproduct(y, Algebra::CK)?, c);
    }
    let rhs = hopf::coproduct(x, Algebra::CK)?.flat_map(2, |k| {
        let mut out = TensorSum::zero(2);
        for (y, c) in t_l(a, &k[0])?.iter() {
            out.add_term(vec![y.clone(), k[1].clone()], c.clone());
        }
        for (y, c) in t_l(a, &k[1])?.iter() {
            out.add_term(vec![k[0].clone(), y.clone()], c.clone());
        }
        Ok(out)
    })?;
    Ok((lhs, rhs))
}

/// `Δ_CK∘ᵗL_φ` against `(ᵗL_φ⊗ᵗL_φ)∘Δ_CK`.
fn comorphism_sides(phi: &Functional, x: &Forest) -> Result<(TensorSum, TensorSum)> {
    let mut lhs = TensorSum::zero(2);
    for (y, c) in t_l(phi, x)?.iter() {
        lhs.add_scaled(&hopf::coproduct(y, Algebra::CK)?, c);
    }
    let rhs = hopf::coproduct(x, Algebra::CK)?.flat_map(2, |k| {
        let mut out = TensorSum::zero(2);
        for (y, c) in t_l(phi, &k[0])?.iter() {
            for (z, d) in t_l(phi, &k[1])?.iter() {
                out.add_term(vec![y.clone(), z.clone()], c * d);
            }
        }
        Ok(out)
    })?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_comp_trivial_and_small() {
        let r = verify_theorem_comp(0).unwrap();
        assert!(r.all_passed(), "{r}");
        let r = verify_theorem_comp(3).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn random_streams_are_reproducible() {
        assert_eq!(random_character(Algebra::H, 3, 7), random_character(Algebra::H, 3, 7));
        assert_ne!(random_functional(Algebra::CK, 3, 1), random_functional(Algebra::CK, 3, 2));
    }

    #[test]
    fn chv_suite_degree_three() {
        let r = verify_chv(3, 11).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}
