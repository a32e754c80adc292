//! Convolution of truncated functionals, `exp*`/`log*`, the named
//! characters, and the action of `H` (or `H̃`) functionals on CK functionals.

mod coaction;
mod identities;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hopf::{self, AntipodeMethod};
use crate::linalg::{self, Algebra, Functional, Grading, Kind, UNBOUNDED};
use crate::rational::{self, Rational};
use crate::trees::{Forest, Tree};

pub use coaction::{coaction_phi, coaction_psi, correspond, star_action, t_l, t_r, Correspondence, Flavor, Side};
pub use identities::{random_character, random_functional, random_infinitesimal, verify_chv, verify_theorem_comp};

/// Which coproduct drives a convolution, and up to which degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConvolutionContext {
    pub algebra: Algebra,
    pub max_degree: usize,
}

impl ConvolutionContext {
    pub fn new(algebra: Algebra, max_degree: usize) -> Self {
        ConvolutionContext { algebra, max_degree }
    }

    fn check(&self, f: &Functional) -> Result<()> {
        if f.grading() != self.algebra.grading() {
            return Err(Error::GradingMismatch(format!(
                "{:?}-graded functional used in {} convolution",
                f.grading(),
                self.algebra
            )));
        }
        if f.max_degree() < self.max_degree {
            return Err(Error::InsufficientDegree { needed: self.max_degree, available: f.max_degree() });
        }
        Ok(())
    }

    /// The neutral element of the convolution: the counit.
    pub fn counit(&self) -> Functional {
        counit(self.algebra)
    }
}

/// Counit of an algebra as a functional exact in every degree.
pub fn counit(algebra: Algebra) -> Functional {
    match algebra {
        Algebra::HTilde => {
            // 1 on every forest of single vertices
            Functional::character_unchecked(Grading::Vertex, UNBOUNDED, BTreeMap::from([(Tree::bullet(), Rational::one())]))
        }
        _ => Functional::character_unchecked(algebra.grading(), UNBOUNDED, BTreeMap::new()),
    }
}

fn trees_up_to(algebra: Algebra, n: usize) -> Vec<Tree> {
    (1..=n).flat_map(|d| algebra.trees_of_degree(d)).collect()
}

fn forests_up_to(algebra: Algebra, n: usize) -> Vec<Forest> {
    (0..=n).flat_map(|d| algebra.basis(d)).collect()
}

/// `Σ f(s₁)g(s₂)` over the coproduct of `s`.
pub fn convolve_at(f: &Functional, g: &Functional, s: &Forest, algebra: Algebra) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (k, c) in hopf::coproduct(s, algebra)?.iter() {
        let a = f.eval(&k[0])?;
        if a.is_zero() {
            continue;
        }
        acc += a * g.eval(&k[1])? * c;
    }
    Ok(acc)
}

/// Convolution `f ⋆ g` (or `f ∗ g` on CK). Two characters convolve to a
/// character; anything else yields a generic functional.
pub fn convolve(f: &Functional, g: &Functional, ctx: ConvolutionContext) -> Result<Functional> {
    ctx.check(f)?;
    ctx.check(g)?;
    let n = ctx.max_degree;
    if f.kind() == Kind::Character && g.kind() == Kind::Character {
        let mut values = BTreeMap::new();
        for t in trees_up_to(ctx.algebra, n) {
            let v = convolve_at(f, g, &Forest::single(t.clone()), ctx.algebra)?;
            values.insert(t, v);
        }
        return Ok(Functional::character_unchecked(f.grading(), n, values));
    }
    let mut values = BTreeMap::new();
    for s in forests_up_to(ctx.algebra, n) {
        let v = convolve_at(f, g, &s, ctx.algebra)?;
        values.insert(s, v);
    }
    Ok(Functional::generic(f.grading(), n, values))
}

fn require_connected(ctx: &ConvolutionContext, operation: &'static str) -> Result<()> {
    if ctx.algebra == Algebra::HTilde {
        return Err(Error::Unsupported { operation, algebra: ctx.algebra });
    }
    Ok(())
}

/// Keeps only the tree values of `f`, reinterpreted as the given kind.
fn from_tree_values(f: &Functional, algebra: Algebra, n: usize, kind: Kind) -> Result<Functional> {
    let mut values = BTreeMap::new();
    for t in trees_up_to(algebra, n) {
        let v = f.tree_value(&t)?;
        values.insert(t, v);
    }
    Ok(match kind {
        Kind::Character => Functional::character_unchecked(algebra.grading(), n, values),
        Kind::Infinitesimal => Functional::infinitesimal(algebra.grading(), n, values),
        Kind::Generic => unreachable!("only used for structured kinds"),
    })
}

/// `exp*(f) = Σ f^{⋆k}/k!`, truncated at the context degree. Requires `f` to
/// vanish on the unit.
pub fn exp_star(f: &Functional, ctx: ConvolutionContext) -> Result<Functional> {
    require_connected(&ctx, "exp*")?;
    ctx.check(f)?;
    let unit = ctx.algebra.unit();
    if !f.eval(&unit)?.is_zero() {
        return Err(Error::Precondition("exp* needs a functional vanishing on the unit".into()));
    }
    let n = ctx.max_degree;
    let e = ctx.counit();
    let f = f.materialize(ctx.algebra, n)?;
    let mut power = e.materialize(ctx.algebra, n)?;
    let mut acc = power.clone();
    let mut fact = Rational::one();
    for k in 1..=n {
        power = convolve(&power, &f, ctx)?;
        fact *= Rational::from_integer(k.into());
        acc = acc.combine(&Rational::one(), &power, &(Rational::one() / &fact), ctx.algebra)?;
    }
    Ok(acc)
}

/// `exp*` of an infinitesimal character, returned as a character.
pub fn exp_star_character(f: &Functional, ctx: ConvolutionContext) -> Result<Functional> {
    if f.kind() != Kind::Infinitesimal {
        return Err(Error::Precondition("expected an infinitesimal character".into()));
    }
    from_tree_values(&exp_star(f, ctx)?, ctx.algebra, ctx.max_degree, Kind::Character)
}

/// `log*(g) = Σ (−1)^{k+1}(g − e)^{⋆k}/k`. Requires `g` to be 1 on the unit.
pub fn log_star(g: &Functional, ctx: ConvolutionContext) -> Result<Functional> {
    require_connected(&ctx, "log*")?;
    ctx.check(g)?;
    if !g.eval(&ctx.algebra.unit())?.is_one() {
        return Err(Error::Precondition("log* needs a functional equal to 1 on the unit".into()));
    }
    let n = ctx.max_degree;
    let e = ctx.counit();
    let h = g.truncated(n).combine(&Rational::one(), &e, &-Rational::one(), ctx.algebra)?;
    let mut power = h.clone();
    let mut acc = h.clone();
    for k in 2..=n {
        power = convolve(&power, &h, ctx)?;
        let c = rational::sign(k + 1) / Rational::from_integer(k.into());
        acc = acc.combine(&Rational::one(), &power, &c, ctx.algebra)?;
    }
    Ok(acc)
}

/// `log*` of a character, returned as an infinitesimal character.
pub fn log_star_character(g: &Functional, ctx: ConvolutionContext) -> Result<Functional> {
    if g.kind() != Kind::Character {
        return Err(Error::Precondition("expected a character".into()));
    }
    from_tree_values(&log_star(g, ctx)?, ctx.algebra, ctx.max_degree, Kind::Infinitesimal)
}

/// `f ∘ S`, the convolution inverse of a character.
pub fn compose_antipode(f: &Functional, ctx: ConvolutionContext) -> Result<Functional> {
    ctx.check(f)?;
    let n = ctx.max_degree;
    let apply = |s: &Forest| -> Result<Rational> {
        f.eval_sum(&hopf::antipode(s, ctx.algebra, AntipodeMethod::Recursive)?)
    };
    if f.kind() == Kind::Character {
        let mut values = BTreeMap::new();
        for t in trees_up_to(ctx.algebra, n) {
            let v = apply(&Forest::single(t.clone()))?;
            values.insert(t, v);
        }
        return Ok(Functional::character_unchecked(f.grading(), n, values));
    }
    let mut values = BTreeMap::new();
    for s in forests_up_to(ctx.algebra, n) {
        let v = apply(&s)?;
        values.insert(s, v);
    }
    Ok(Functional::generic(f.grading(), n, values))
}

/// Characters with a name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Named {
    /// `1/t!` on `H`.
    E,
    /// `CM(t)/v(t)! = 1/(t!σ(t))` on `H` with the σ-normalized coproduct.
    ESigma,
    /// `E∘S`.
    L,
    /// `E_σ∘S_σ`.
    LSigma,
    /// The CK character equal to 1 on `•` and 0 on bigger trees.
    Delta,
    /// The CK counit.
    Eps,
    /// The CK infinitesimal character dual to `•`.
    DeltaBullet,
    /// `log*δ = L⋆δ_•`.
    Omega,
}

impl Named {
    pub const ALL: [Named; 8] = [
        Named::E,
        Named::ESigma,
        Named::L,
        Named::LSigma,
        Named::Delta,
        Named::Eps,
        Named::DeltaBullet,
        Named::Omega,
    ];

    /// Algebra the functional lives on.
    pub fn algebra(self) -> Algebra {
        match self {
            Named::E | Named::L => Algebra::H,
            Named::ESigma | Named::LSigma => Algebra::HSigma,
            _ => Algebra::CK,
        }
    }
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Named::E => "E",
            Named::ESigma => "E_sigma",
            Named::L => "L",
            Named::LSigma => "L_sigma",
            Named::Delta => "delta",
            Named::Eps => "eps",
            Named::DeltaBullet => "delta_bullet",
            Named::Omega => "omega",
        })
    }
}

impl FromStr for Named {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Named::ALL
            .into_iter()
            .find(|n| n.to_string().eq_ignore_ascii_case(s) || (s == "epsilon" && *n == Named::Eps))
            .ok_or_else(|| Error::Malformed(format!("unknown character {s:?}")))
    }
}

/// `1/t!`.
pub fn e_value(t: &Tree) -> Rational {
    Rational::one() / rational::from_u128(t.factorial())
}

/// `1/(t!σ(t))`.
pub fn e_sigma_value(t: &Tree) -> Rational {
    Rational::one() / rational::from_u128(t.factorial() * t.symmetry())
}

fn forest_value(s: &Forest, value: fn(&Tree) -> Rational) -> Rational {
    s.trees().iter().filter(|t| !t.is_bullet()).map(value).fold(Rational::one(), |a, b| a * b)
}

/// `L(t) = E(S(t))`, computed from the antipode of the single tree `t`.
pub fn l_value(t: &Tree) -> Result<Rational> {
    let s = hopf::antipode(&Forest::single(t.clone()), Algebra::H, AntipodeMethod::Recursive)?;
    Ok(s.iter().map(|(f, c)| c * forest_value(f, e_value)).fold(Rational::zero(), |a, b| a + b))
}

/// `L_σ(t) = E_σ(S_σ(t))`.
pub fn l_sigma_value(t: &Tree) -> Result<Rational> {
    let s = hopf::antipode(&Forest::single(t.clone()), Algebra::HSigma, AntipodeMethod::Recursive)?;
    Ok(s.iter().map(|(f, c)| c * forest_value(f, e_sigma_value)).fold(Rational::zero(), |a, b| a + b))
}

/// The named character, truncated at `max_degree` (edges for `H`-characters,
/// vertices for CK ones). `δ`, `ε` and `δ_•` are exact in every degree.
pub fn named_character(name: Named, max_degree: usize) -> Result<Functional> {
    let edge_values = |value: &dyn Fn(&Tree) -> Result<Rational>| -> Result<Functional> {
        let mut tv = BTreeMap::new();
        for d in 1..=max_degree {
            for t in Algebra::H.trees_of_degree(d) {
                let v = value(&t)?;
                tv.insert(t, v);
            }
        }
        linalg::character_from_tree_values(&tv, Algebra::H, max_degree)
    };
    match name {
        Named::E => edge_values(&|t| Ok(e_value(t))),
        Named::ESigma => edge_values(&|t| Ok(e_sigma_value(t))),
        Named::L => edge_values(&l_value),
        Named::LSigma => edge_values(&l_sigma_value),
        Named::Delta => Ok(Functional::character_unchecked(
            Grading::Vertex,
            UNBOUNDED,
            BTreeMap::from([(Tree::bullet(), Rational::one())]),
        )),
        Named::Eps => Ok(counit(Algebra::CK)),
        Named::DeltaBullet => linalg::delta_basis(&Forest::bullet(), Algebra::CK),
        Named::Omega => omega(max_degree),
    }
}

/// `ω = log*δ`, cross-checked against `L⋆δ_•` on every tree up to
/// `max_vertices`. A disagreement is reported as [`Error::Mismatch`].
pub fn omega(max_vertices: usize) -> Result<Functional> {
    let ctx = ConvolutionContext::new(Algebra::CK, max_vertices);
    let delta = named_character(Named::Delta, max_vertices)?;
    let by_log = log_star_character(&delta, ctx)?;
    let l = named_character(Named::L, max_vertices.saturating_sub(1))?;
    let db = named_character(Named::DeltaBullet, max_vertices)?;
    let by_action = star_action(&l, &db, Side::Left, max_vertices)?;
    for t in trees_up_to(Algebra::CK, max_vertices) {
        let (a, b) = (by_log.tree_value(&t)?, by_action.tree_value(&t)?);
        if a != b {
            return Err(Error::Mismatch(format!("log*δ({t}) = {a} but (L⋆δ_•)({t}) = {b}")));
        }
    }
    Ok(by_log)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }

    #[test]
    fn exp_of_delta_bullet_is_inverse_factorial() {
        let ctx = ConvolutionContext::new(Algebra::CK, 4);
        let db = named_character(Named::DeltaBullet, 4).unwrap();
        let e = exp_star_character(&db, ctx).unwrap();
        for d in 1..=4 {
            for tree in Algebra::CK.trees_of_degree(d) {
                assert_eq!(e.tree_value(&tree).unwrap(), e_value(&tree), "{tree}");
            }
        }
    }

    #[test]
    fn omega_first_values() {
        let w = omega(3).unwrap();
        assert_eq!(w.tree_value(&t("[]")).unwrap(), int(1));
        assert_eq!(w.tree_value(&t("[[]]")).unwrap(), rat(-1, 2));
        assert_eq!(w.tree_value(&t("[[[]]]")).unwrap(), rat(1, 3));
        assert_eq!(w.tree_value(&t("[[][]]")).unwrap(), rat(1, 6));
        assert_eq!(w.kind(), Kind::Infinitesimal);
    }

    #[test]
    fn e_times_l_is_counit() {
        let ctx = ConvolutionContext::new(Algebra::H, 4);
        let e = named_character(Named::E, 4).unwrap();
        let l = named_character(Named::L, 4).unwrap();
        let p = convolve(&e, &l, ctx).unwrap();
        assert!(p.first_difference(&ctx.counit(), Algebra::H, 4).unwrap().is_none());
    }

    #[test]
    fn sigma_corolla_values() {
        for n in 1..6 {
            let expected = Rational::one() / rational::from_biguint(&rational::factorial(n + 1));
            assert_eq!(e_sigma_value(&Tree::corolla(n)), expected);
            assert_eq!(e_sigma_value(&Tree::ladder(n)), expected);
        }
    }

    #[test]
    fn log_exp_preconditions() {
        let ctx = ConvolutionContext::new(Algebra::CK, 3);
        let delta = named_character(Named::Delta, 3).unwrap();
        assert!(matches!(exp_star(&delta, ctx), Err(Error::Precondition(_))));
        let db = named_character(Named::DeltaBullet, 3).unwrap();
        assert!(matches!(log_star(&db, ctx), Err(Error::Precondition(_))));
        let tctx = ConvolutionContext::new(Algebra::HTilde, 3);
        let tdb = linalg::delta_basis(&Forest::bullet(), Algebra::HTilde).unwrap();
        assert!(matches!(exp_star(&tdb, tctx), Err(Error::Unsupported { .. })));
    }

    #[test]
    fn names_parse() {
        for n in Named::ALL {
            assert_eq!(n.to_string().parse::<Named>().unwrap(), n);
        }
        assert!("zeta".parse::<Named>().is_err());
    }
}
