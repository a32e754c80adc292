//! Non-planar rooted trees and forests in canonical form.
//!
//! A tree is stored together with its canonical encoding: `[` followed by the
//! encodings of its children and `]`, the children sorted by encoding length
//! and then lexicographically. Two isomorphic trees therefore have the same
//! encoding, and equality, ordering and hashing all go through it.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::ForestSum;
use crate::rational::{self, Rational};

#[derive(Clone)]
pub struct Tree(Arc<Node>);

struct Node {
    code: String,
    children: Vec<Tree>,
    vertices: usize,
}

impl Tree {
    /// The single-vertex tree.
    pub fn bullet() -> Tree {
        Tree::from_children(Vec::new())
    }

    pub fn from_children(mut children: Vec<Tree>) -> Tree {
        children.sort();
        let mut code = String::with_capacity(2 + children.iter().map(|c| c.0.code.len()).sum::<usize>());
        code.push('[');
        for c in &children {
            code.push_str(&c.0.code);
        }
        code.push(']');
        let vertices = 1 + children.iter().map(Tree::vertices).sum::<usize>();
        Tree(Arc::new(Node { code, children, vertices }))
    }

    /// Ladder with `n` edges.
    pub fn ladder(n: usize) -> Tree {
        (0..n).fold(Tree::bullet(), |t, _| Tree::from_children(vec![t]))
    }

    /// Corolla with `n` leaves.
    pub fn corolla(n: usize) -> Tree {
        Tree::from_children(vec![Tree::bullet(); n])
    }

    pub fn children(&self) -> &[Tree] {
        &self.0.children
    }

    pub fn vertices(&self) -> usize {
        self.0.vertices
    }

    pub fn edges(&self) -> usize {
        self.0.vertices - 1
    }

    pub fn is_bullet(&self) -> bool {
        self.0.vertices == 1
    }

    pub fn code(&self) -> &str {
        &self.0.code
    }

    pub fn parse(text: &str) -> Result<Tree> {
        let forest = Forest::parse(text)?;
        match forest.trees() {
            [t] => Ok(t.clone()),
            _ => Err(Error::Syntax { position: 0, message: "expected a single tree".into() }),
        }
    }

    /// The forest obtained by removing the root.
    pub fn branches(&self) -> Forest {
        Forest::from_sorted(self.0.children.clone())
    }

    pub fn stats(&self) -> TreeStats {
        TreeStats::of_tree(self)
    }

    /// |Aut t|, from the multiplicities of isomorphic children.
    pub fn symmetry(&self) -> u128 {
        let mut acc: u128 = 1;
        let children = self.children();
        let mut i = 0;
        while i < children.len() {
            let mut j = i;
            while j < children.len() && children[j] == children[i] {
                j += 1;
            }
            let m = (j - i) as u128;
            let s = children[i].symmetry();
            acc *= (1..=m).product::<u128>() * s.pow(m as u32);
            i = j;
        }
        acc
    }

    pub fn factorial(&self) -> u128 {
        self.vertices() as u128 * self.children().iter().map(Tree::factorial).product::<u128>()
    }

    /// Height of the tree: number of edges on the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        self.children().iter().map(|c| c.height() + 1).max().unwrap_or(0)
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.code == other.0.code
    }
}

impl Eq for Tree {}

impl Hash for Tree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.code.hash(state)
    }
}

impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .code
            .len()
            .cmp(&other.0.code.len())
            .then_with(|| self.0.code.cmp(&other.0.code))
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.code)
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.code)
    }
}

/// A commutative product of trees, kept as a sorted list.
///
/// The empty forest is the unit of the Connes–Kreimer algebra; the forest
/// holding only the single-vertex tree is the unit of `H`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Forest {
    trees: Vec<Tree>,
}

impl Forest {
    pub fn empty() -> Forest {
        Forest { trees: Vec::new() }
    }

    pub fn bullet() -> Forest {
        Forest::single(Tree::bullet())
    }

    pub fn single(t: Tree) -> Forest {
        Forest { trees: vec![t] }
    }

    pub fn new(mut trees: Vec<Tree>) -> Forest {
        trees.sort();
        Forest { trees }
    }

    pub(crate) fn from_sorted(trees: Vec<Tree>) -> Forest {
        debug_assert!(trees.windows(2).all(|w| w[0] <= w[1]));
        Forest { trees }
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// The unique tree, if the forest has exactly one component.
    pub fn as_tree(&self) -> Option<&Tree> {
        match self.trees.as_slice() {
            [t] => Some(t),
            _ => None,
        }
    }

    pub fn vertices(&self) -> usize {
        self.trees.iter().map(Tree::vertices).sum()
    }

    pub fn edges(&self) -> usize {
        self.trees.iter().map(Tree::edges).sum()
    }

    /// Multiset union.
    pub fn concat(&self, other: &Forest) -> Forest {
        let mut trees = Vec::with_capacity(self.trees.len() + other.trees.len());
        let (mut i, mut j) = (0, 0);
        while i < self.trees.len() && j < other.trees.len() {
            if self.trees[i] <= other.trees[j] {
                trees.push(self.trees[i].clone());
                i += 1;
            } else {
                trees.push(other.trees[j].clone());
                j += 1;
            }
        }
        trees.extend_from_slice(&self.trees[i..]);
        trees.extend_from_slice(&other.trees[j..]);
        Forest { trees }
    }

    /// Product in `H`: single-vertex components are units and disappear; an
    /// empty result is the unit `•`.
    pub fn h_product(&self, other: &Forest) -> Forest {
        self.concat(other).h_normalized()
    }

    pub fn h_normalized(&self) -> Forest {
        let trees: Vec<Tree> = self.trees.iter().filter(|t| !t.is_bullet()).cloned().collect();
        if trees.is_empty() {
            Forest::bullet()
        } else {
            Forest { trees }
        }
    }

    /// Whether the forest is a basis element of `H` (no bare `•` unless it is the unit).
    pub fn is_h_forest(&self) -> bool {
        self.is_h_unit() || (!self.trees.is_empty() && self.trees.iter().all(|t| !t.is_bullet()))
    }

    pub fn is_h_unit(&self) -> bool {
        self.trees.len() == 1 && self.trees[0].is_bullet()
    }

    /// Whether every component is a single vertex (this includes the empty forest).
    pub fn is_bullet_forest(&self) -> bool {
        self.trees.iter().all(Tree::is_bullet)
    }

    pub fn symmetry(&self) -> u128 {
        self.trees.iter().map(Tree::symmetry).product()
    }

    pub fn factorial(&self) -> u128 {
        self.trees.iter().map(Tree::factorial).product()
    }

    pub fn stats(&self) -> TreeStats {
        TreeStats::of_forest(self)
    }

    pub fn parse(text: &str) -> Result<Forest> {
        Parser::new(text).forest()
    }
}

impl Ord for Forest {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices()
            .cmp(&other.vertices())
            .then_with(|| self.trees.len().cmp(&other.trees.len()))
            .then_with(|| self.trees.cmp(&other.trees))
    }
}

impl PartialOrd for Forest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Tree> for Forest {
    fn from(t: Tree) -> Forest {
        Forest::single(t)
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.trees.is_empty() {
            return f.write_str("∅");
        }
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            f.write_str(t.code())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Elementary statistics of a tree or forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeStats {
    pub vertices: usize,
    pub edges: usize,
    /// Internal symmetry factor, the product of |Aut| over components.
    pub sigma: u128,
    pub factorial: u128,
    /// Connes–Moscovici coefficient `v! / (t! σ)`; `None` for forests with
    /// more than one component, where it is not defined.
    pub cm: Option<Rational>,
}

impl TreeStats {
    fn of_tree(t: &Tree) -> TreeStats {
        let sigma = t.symmetry();
        let factorial = t.factorial();
        let cm = rational::from_biguint(&rational::factorial(t.vertices()))
            / rational::from_u128(factorial * sigma);
        TreeStats { vertices: t.vertices(), edges: t.edges(), sigma, factorial, cm: Some(cm) }
    }

    fn of_forest(s: &Forest) -> TreeStats {
        match s.as_tree() {
            Some(t) => TreeStats::of_tree(t),
            None => TreeStats {
                vertices: s.vertices(),
                edges: s.edges(),
                sigma: s.symmetry(),
                factorial: s.factorial(),
                cm: None,
            },
        }
    }
}

/// Grafts every component of `s` onto a new common root.
pub fn b_plus(s: &Forest) -> Tree {
    Tree::from_children(s.trees().to_vec())
}

/// Butcher product: `b` grafted onto the root of `a`.
pub fn butcher(a: &Tree, b: &Tree) -> Tree {
    let mut children = a.children().to_vec();
    children.push(b.clone());
    Tree::from_children(children)
}

/// Merging product: the roots of `a` and `b` are identified.
pub fn merge(a: &Tree, b: &Tree) -> Tree {
    let mut children = a.children().to_vec();
    children.extend_from_slice(b.children());
    Tree::from_children(children)
}

/// `a∘b + b∘a + a×b`.
pub fn bowtie(a: &Tree, b: &Tree) -> ForestSum {
    let mut out = ForestSum::zero();
    out.add_term(Forest::single(butcher(a, b)), Rational::one());
    out.add_term(Forest::single(butcher(b, a)), Rational::one());
    out.add_term(Forest::single(merge(a, b)), Rational::one());
    out
}

/// Which statistic counts the degree of a tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeGrading {
    Vertices,
    Edges,
}

fn tree_table() -> &'static Mutex<Vec<Arc<Vec<Tree>>>> {
    static TABLE: OnceLock<Mutex<Vec<Arc<Vec<Tree>>>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![Arc::new(Vec::new()), Arc::new(vec![Tree::bullet()])]))
}

/// All trees with exactly `n` vertices, in canonical order.
pub fn trees_with_vertices(n: usize) -> Arc<Vec<Tree>> {
    if n == 0 {
        return Arc::new(Vec::new());
    }
    {
        let table = tree_table().lock().expect("tree table poisoned");
        if let Some(v) = table.get(n) {
            return v.clone();
        }
    }
    // Build the smaller grades first without holding the lock during recursion.
    let smaller: Vec<Arc<Vec<Tree>>> = (1..n).map(trees_with_vertices).collect();
    let pool: Vec<Tree> = smaller.iter().flat_map(|v| v.iter().cloned()).collect();
    let mut out: Vec<Tree> = multisets(&pool, n - 1).into_iter().map(|f| b_plus(&f)).collect();
    out.sort();
    let out = Arc::new(out);
    let mut table = tree_table().lock().expect("tree table poisoned");
    while table.len() <= n {
        table.push(Arc::new(Vec::new()));
    }
    if table[n].is_empty() {
        table[n] = out.clone();
    }
    table[n].clone()
}

/// All isomorphism classes of rooted trees of degree `n`.
pub fn enumerate_trees(n: usize, grading: TreeGrading) -> Vec<Tree> {
    match grading {
        TreeGrading::Vertices => trees_with_vertices(n).as_ref().clone(),
        TreeGrading::Edges => trees_with_vertices(n + 1).as_ref().clone(),
    }
}

/// Every forest with exactly `n` vertices (the empty forest for `n == 0`).
pub fn forests_with_vertices(n: usize) -> Vec<Forest> {
    let pool: Vec<Tree> = (1..=n).flat_map(|k| trees_with_vertices(k).as_ref().clone()).collect();
    let mut out = multisets(&pool, n);
    out.sort();
    out
}

/// Basis forests of `H` with exactly `n` edges: products of trees with at
/// least one edge, and the unit `•` for `n == 0`.
pub fn h_forests_with_edges(n: usize) -> Vec<Forest> {
    if n == 0 {
        return vec![Forest::bullet()];
    }
    let pool: Vec<Tree> = (2..=n + 1).flat_map(|k| trees_with_vertices(k).as_ref().clone()).collect();
    let mut out = multiset_by(&pool, n, &|t: &Tree| t.edges());
    out.sort();
    out
}

fn multisets(pool: &[Tree], total: usize) -> Vec<Forest> {
    multiset_by(pool, total, &|t: &Tree| t.vertices())
}

/// Multisets drawn from `pool` whose weights sum to `total`.
fn multiset_by(pool: &[Tree], total: usize, weight: &dyn Fn(&Tree) -> usize) -> Vec<Forest> {
    fn go(
        pool: &[Tree],
        start: usize,
        remaining: usize,
        weight: &dyn Fn(&Tree) -> usize,
        current: &mut Vec<Tree>,
        out: &mut Vec<Forest>,
    ) {
        if remaining == 0 {
            out.push(Forest::new(current.clone()));
            return;
        }
        for i in start..pool.len() {
            let w = weight(&pool[i]);
            if w == 0 || w > remaining {
                continue;
            }
            current.push(pool[i].clone());
            go(pool, i, remaining - w, weight, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, 0, total, weight, &mut Vec::new(), &mut out);
    out
}

/// Counts trees by vertex grade; convenience for reports.
pub fn tree_counts(max_vertices: usize) -> BTreeMap<usize, usize> {
    (1..=max_vertices).map(|n| (n, trees_with_vertices(n).len())).collect()
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { chars: src.chars().collect(), pos: 0, _src: src }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn rest_starts_with(&self, word: &str) -> bool {
        let w: Vec<char> = word.chars().collect();
        self.chars.len() >= self.pos + w.len() && self.chars[self.pos..self.pos + w.len()] == w[..]
    }

    fn forest(&mut self) -> Result<Forest> {
        self.skip_ws();
        if self.peek() == Some('∅') {
            self.pos += 1;
            return self.finish(Forest::empty());
        }
        if self.rest_starts_with("empty") {
            self.pos += 5;
            return self.finish(Forest::empty());
        }
        let mut trees = vec![self.tree()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some('·') | Some('.') | Some('*') => {
                    self.pos += 1;
                    self.skip_ws();
                    trees.push(self.tree()?);
                }
                None => break,
                Some(c) => return self.err(format!("unexpected {c:?}, expected '·' or end of input")),
            }
        }
        Ok(Forest::new(trees))
    }

    fn finish(&mut self, f: Forest) -> Result<Forest> {
        self.skip_ws();
        match self.peek() {
            None => Ok(f),
            Some(c) => self.err(format!("unexpected {c:?} after empty forest")),
        }
    }

    fn tree(&mut self) -> Result<Tree> {
        let close = match self.peek() {
            Some('[') => ']',
            Some('(') => ')',
            Some(c) => return self.err(format!("unexpected {c:?}, expected '[' or '('")),
            None => return self.err("unexpected end of input, expected '['"),
        };
        self.pos += 1;
        let mut children = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c == close => {
                    self.pos += 1;
                    return Ok(Tree::from_children(children));
                }
                Some('[') | Some('(') => children.push(self.tree()?),
                Some(c) => return self.err(format!("unexpected {c:?} inside tree")),
                None => return self.err(format!("unterminated tree, expected {close:?}")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(t("[[][]]"), Tree::corolla(2));
        assert_eq!(t("[[[]][]]"), t("[[][[]]]"));
        assert_eq!(t("([()])").code(), "[[[]]]");
        let f = Forest::parse("[[]]·[]").unwrap();
        assert_eq!(f.to_string(), "[]·[[]]");
        assert_eq!(Forest::parse(" [[]] . [] ").unwrap(), f);
        assert_eq!(Forest::parse("∅").unwrap(), Forest::empty());
        assert_eq!(Forest::parse("empty").unwrap(), Forest::empty());
    }

    #[test]
    fn parse_errors_carry_position() {
        match Forest::parse("[[]").unwrap_err() {
            Error::Syntax { position, .. } => assert_eq!(position, 3),
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(Forest::parse("[]x"), Err(Error::Syntax { position: 2, .. })));
        assert!(Forest::parse("").is_err());
        assert!(Forest::parse("[)").is_err());
        assert!(Tree::parse("[]·[]").is_err());
    }

    #[test]
    fn stats_examples() {
        assert_eq!(Tree::corolla(3).symmetry(), 6);
        assert_eq!(Tree::ladder(3).symmetry(), 1);
        let b = Tree::bullet().stats();
        assert_eq!((b.vertices, b.edges, b.sigma, b.factorial), (1, 0, 1, 1));
        assert_eq!(b.cm, Some(int(1)));
        let c2 = Tree::corolla(2).stats();
        assert_eq!(c2.factorial, 3);
        assert_eq!(c2.cm, Some(int(1)));
        // B+(E1, E1): two isomorphic branches
        assert_eq!(t("[[[]][[]]]").symmetry(), 2);
        assert_eq!(t("[[[][]][[][]]]").symmetry(), 8);
    }

    #[test]
    fn b_plus_examples() {
        assert_eq!(b_plus(&Forest::empty()), Tree::bullet());
        assert_eq!(b_plus(&Forest::new(vec![Tree::bullet(), Tree::bullet()])), Tree::corolla(2));
        let e1 = b_plus(&Forest::bullet());
        assert_eq!(b_plus(&Forest::single(e1)), Tree::ladder(2));
    }

    #[test]
    fn products() {
        let b = Tree::bullet();
        assert_eq!(butcher(&b, &b), Tree::ladder(1));
        assert_eq!(merge(&Tree::ladder(1), &Tree::ladder(1)), Tree::corolla(2));
        assert_eq!(merge(&b, &b), b);
        let bt = bowtie(&b, &b);
        assert_eq!(bt.coeff(&Forest::single(Tree::ladder(1))), int(2));
        assert_eq!(bt.coeff(&Forest::bullet()), int(1));
        assert_eq!(bt.len(), 2);
    }

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| trees_with_vertices(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20]);
        assert_eq!(enumerate_trees(3, TreeGrading::Vertices), vec![Tree::ladder(2), Tree::corolla(2)]);
        assert_eq!(enumerate_trees(1, TreeGrading::Edges), vec![Tree::ladder(1)]);
        assert_eq!(forests_with_vertices(0), vec![Forest::empty()]);
        assert_eq!(forests_with_vertices(3).len(), 4);
        assert_eq!(h_forests_with_edges(0), vec![Forest::bullet()]);
        assert_eq!(h_forests_with_edges(2).len(), 3);
    }

    #[test]
    fn h_normalization() {
        let f = Forest::new(vec![Tree::bullet(), Tree::ladder(1)]);
        assert!(!f.is_h_forest());
        assert_eq!(f.h_normalized(), Forest::single(Tree::ladder(1)));
        assert_eq!(Forest::bullet().h_product(&Forest::bullet()), Forest::bullet());
        assert!(Forest::bullet().is_h_forest());
        assert!(!Forest::empty().is_h_forest());
    }
}
