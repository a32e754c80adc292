//! Small cases worked out by hand, edge subset by edge subset.

use arbor_hopf::hopf::{self, AntipodeMethod};
use arbor_hopf::rational::int;
use arbor_hopf::{Algebra, Forest, ForestSum, TensorSum};

fn f(s: &str) -> Forest {
    Forest::parse(s).unwrap()
}

fn tensor(terms: &[(&str, &str, i64)]) -> TensorSum {
    let mut out = TensorSum::zero(2);
    for (a, b, c) in terms {
        out.add_term(vec![f(a), f(b)], int(*c));
    }
    out
}

fn sum(terms: &[(&str, i64)]) -> ForestSum {
    let mut out = ForestSum::zero();
    for (s, c) in terms {
        out.add_term(f(s), int(*c));
    }
    out
}

// root r with a leaf a and a child b carrying a leaf c; edges ra, rb, bc
#[test]
fn coproduct_of_root_with_leaf_and_edge() {
    let t = "[[][[]]]";
    let expected = tensor(&[
        ("[]", t, 1),
        // {ra}: contracting leaves r–b–c
        ("[[]]", "[[[]]]", 1),
        // {rb} and {bc}: a cherry either way
        ("[[]]", "[[][]]", 2),
        // {ra, rb}
        ("[[][]]", "[[]]", 1),
        // {ra, bc}: two separate edges
        ("[[]]·[[]]", "[[]]", 1),
        // {rb, bc}
        ("[[[]]]", "[[]]", 1),
        (t, "[]", 1),
    ]);
    assert_eq!(hopf::coproduct(&f(t), Algebra::H).unwrap(), expected);
}

#[test]
fn antipodes_of_the_mixed_four_vertex_trees() {
    let s = |t: &str, a: Algebra| hopf::antipode(&f(t), a, AntipodeMethod::Recursive).unwrap();
    // S(t) = −t − Σ S(t′)t″ over the reduced coproduct above
    assert_eq!(
        s("[[][[]]]", Algebra::H),
        sum(&[("[[][[]]]", -1), ("[[]]·[[[]]]", 2), ("[[]]·[[][]]", 3), ("[[]]·[[]]·[[]]", -5)])
    );
    // σ(t) = 1 and σ([[][]]·[[]]) = 2
    assert_eq!(
        s("[[][[]]]", Algebra::HSigma),
        sum(&[("[[][[]]]", -1), ("[[]]·[[[]]]", 2), ("[[]]·[[][]]", 6), ("[[]]·[[]]·[[]]", -5)])
    );
    assert_eq!(
        s("[[[][]]]", Algebra::H),
        sum(&[("[[[][]]]", -1), ("[[]]·[[[]]]", 4), ("[[]]·[[][]]", 2), ("[[]]·[[]]·[[]]", -6)])
    );
    // σ(t) = 2: S_σ(t) = σ(t)⁻¹ Σ c_s σ(s) s
    assert_eq!(
        s("[[[][]]]", Algebra::HSigma),
        sum(&[("[[[][]]]", -1), ("[[]]·[[[]]]", 2), ("[[]]·[[][]]", 2), ("[[]]·[[]]·[[]]", -3)])
    );
}

#[test]
fn ck_coproduct_of_a_cherry() {
    let expected = tensor(&[("∅", "[[][]]", 1), ("[]", "[[]]", 2), ("[]·[]", "[]", 1), ("[[][]]", "∅", 1)]);
    assert_eq!(hopf::coproduct(&f("[[][]]"), Algebra::CK).unwrap(), expected);
}
