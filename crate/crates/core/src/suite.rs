//! The full property suite, as used by `verify all`.

use crate::bseries;
use crate::characters;
use crate::error::Result;
use crate::hopf;
use crate::prelie;
use crate::qshuffle;
use crate::report::Report;
use crate::trees;

/// Tree counts per vertex grade from `Σ a_n xⁿ = x Π (1 − xᵏ)^{−a_k}`,
/// against the enumeration.
pub fn check_enumeration(max_vertices: usize) -> Report {
    let counts = trees::tree_counts(max_vertices);
    let mut report = Report::new();
    let expected = rooted_tree_counts(max_vertices);
    let mut failures = Vec::new();
    for (n, &want) in expected.iter().enumerate().skip(1) {
        let got = counts.get(&n).copied().unwrap_or(0);
        if got as u128 != want {
            failures.push(format!("{n} vertices: {got} ≠ {want}"));
        }
    }
    report.push_failures("tree counts", max_vertices, failures);
    report
}

/// `a_{n+1} = (1/n) Σ_{k=1}^{n} (Σ_{d|k} d a_d) a_{n−k+1}`.
fn rooted_tree_counts(max: usize) -> Vec<u128> {
    let mut a = vec![0u128; max + 1];
    if max >= 1 {
        a[1] = 1;
    }
    for n in 1..max {
        let mut s = 0u128;
        for k in 1..=n {
            let d_sum: u128 = (1..=k).filter(|d| k % d == 0).map(|d| d as u128 * a[d]).sum();
            s += d_sum * a[n - k + 1];
        }
        a[n + 1] = s / n as u128;
    }
    a
}

/// Structure, characters, pre-Lie, quasi-shuffle and B-series checks. The
/// costlier parts are capped: B-series at order 5, the character identities
/// and structure at 6.
pub fn verify_all(max_degree: usize, seed: u64) -> Result<Report> {
    let mut report = check_enumeration(max_degree.max(8));
    report.extend(hopf::verify_structure(max_degree.min(6))?);
    report.extend(characters::verify_chv(max_degree.min(6), seed)?);
    report.extend(prelie::verify_prelie(max_degree + 1)?);
    report.extend(qshuffle::verify_qshuffle(max_degree + 1)?);
    report.extend(bseries::verify_bseries(max_degree.min(5), seed)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_recursion() {
        assert_eq!(&rooted_tree_counts(8)[1..], &[1, 1, 2, 4, 9, 20, 48, 115]);
        assert!(check_enumeration(8).all_passed());
    }
}
