//! Indexed view of a tree for edge-subset manipulations.
//!
//! Vertices are numbered in preorder, the root being 0. The edge above
//! vertex `v > 0` has index `v - 1`, so an edge subset is a bitmask over
//! `0..e(t)`.

use crate::trees::{Forest, Tree};

pub(crate) struct Shape {
    parent: Vec<usize>,
    kids: Vec<Vec<usize>>,
    depth: Vec<usize>,
}

impl Shape {
    pub(crate) fn new(t: &Tree) -> Shape {
        let mut shape = Shape { parent: Vec::new(), kids: Vec::new(), depth: Vec::new() };
        shape.push(t, usize::MAX, 0);
        shape
    }

    fn push(&mut self, t: &Tree, parent: usize, depth: usize) -> usize {
        let id = self.parent.len();
        self.parent.push(parent);
        self.kids.push(Vec::new());
        self.depth.push(depth);
        for c in t.children() {
            let k = self.push(c, id, depth + 1);
            self.kids[id].push(k);
        }
        id
    }

    pub(crate) fn vertices(&self) -> usize {
        self.parent.len()
    }

    pub(crate) fn edges(&self) -> usize {
        self.parent.len() - 1
    }

    pub(crate) fn full_mask(&self) -> u64 {
        assert!(self.edges() < 64, "tree too large for edge masks");
        (1u64 << self.edges()) - 1
    }

    /// Edge above vertex `v`.
    pub(crate) fn bit(v: usize) -> u64 {
        1u64 << (v - 1)
    }

    pub(crate) fn parent_of_edge(&self, e: usize) -> usize {
        self.parent[e + 1]
    }

    pub(crate) fn child_of_edge(e: usize) -> usize {
        e + 1
    }

    /// Height of edge `e`: distance from its upper vertex to the root.
    pub(crate) fn height(&self, e: usize) -> usize {
        self.depth[e + 1]
    }

    fn in_mask(mask: u64, v: usize) -> bool {
        v > 0 && mask & Shape::bit(v) != 0
    }

    /// Subtree hanging from `v`, following only the edges in `mask`.
    fn component(&self, v: usize, mask: u64) -> Tree {
        let children = self.kids[v]
            .iter()
            .filter(|&&c| Shape::in_mask(mask, c))
            .map(|&c| self.component(c, mask))
            .collect();
        Tree::from_children(children)
    }

    /// Connected components of the subforest spanned by `mask`: the
    /// components carrying at least one edge, and the number of vertices
    /// touched by no edge of `mask`.
    pub(crate) fn components(&self, mask: u64) -> (Vec<Tree>, usize) {
        let mut trees = Vec::new();
        let mut isolated = 0;
        for v in 0..self.vertices() {
            if Shape::in_mask(mask, v) {
                continue;
            }
            let c = self.component(v, mask);
            if c.is_bullet() {
                isolated += 1;
            } else {
                trees.push(c);
            }
        }
        (trees, isolated)
    }

    /// Left factor in `H`: the nontrivial components, or the unit `•`.
    pub(crate) fn h_subforest(&self, mask: u64) -> Forest {
        let (trees, _) = self.components(mask);
        if trees.is_empty() {
            Forest::bullet()
        } else {
            Forest::new(trees)
        }
    }

    /// Left factor in `H̃`: every component, isolated vertices included.
    pub(crate) fn spanning_subforest(&self, mask: u64) -> Forest {
        let (mut trees, isolated) = self.components(mask);
        trees.extend(std::iter::repeat_n(Tree::bullet(), isolated));
        Forest::new(trees)
    }

    /// The tree `t/s` obtained by collapsing every component of `mask` to a vertex.
    pub(crate) fn quotient(&self, mask: u64) -> Tree {
        self.quotient_from(0, mask)
    }

    fn quotient_from(&self, top: usize, mask: u64) -> Tree {
        let mut children = Vec::new();
        let mut stack = vec![top];
        while let Some(v) = stack.pop() {
            for &c in &self.kids[v] {
                if Shape::in_mask(mask, c) {
                    stack.push(c);
                } else {
                    children.push(self.quotient_from(c, mask));
                }
            }
        }
        Tree::from_children(children)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }

    #[test]
    fn ladder_indexing() {
        let sh = Shape::new(&Tree::ladder(3));
        assert_eq!(sh.edges(), 3);
        assert_eq!((0..3).map(|e| sh.height(e)).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(sh.parent_of_edge(2), 2);
        // middle edge only
        assert_eq!(sh.h_subforest(0b010), Forest::single(Tree::ladder(1)));
        assert_eq!(sh.quotient(0b010), Tree::ladder(2));
        assert_eq!(sh.spanning_subforest(0b010).to_string(), "[]·[]·[[]]");
    }

    #[test]
    fn quotient_merges_children() {
        // contracting the edge to the ladder branch of B+(E1, •)
        let tree = t("[[][[]]]");
        let sh = Shape::new(&tree);
        let branch = (1..sh.vertices()).find(|&v| sh.kids[v].len() == 1).unwrap();
        assert_eq!(sh.quotient(Shape::bit(branch)), Tree::corolla(2));
        assert_eq!(sh.quotient(sh.full_mask()), Tree::bullet());
        assert_eq!(sh.quotient(0), tree);
        assert_eq!(sh.h_subforest(0), Forest::bullet());
    }
}
