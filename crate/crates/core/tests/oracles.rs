//! Frozen values checked against small independent computations.

use std::collections::BTreeSet;

use posfo_core::classify::{classification_table, exists_canons, forall_canons, semantic_class};
use posfo_core::{classify_digraph, ComplexityClass, Digraph};

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Adjacency as a 9-bit mask, row-major, without going through the library.
fn relabel(mask: u16, p: &[usize; 3]) -> u16 {
    let mut out = 0;
    for x in 0..3 {
        for y in 0..3 {
            if edge(mask, x, y) {
                out |= 1 << (p[x] * 3 + p[y]);
            }
        }
    }
    out
}

#[test]
fn isomorphism_class_counts() {
    let orbits: BTreeSet<u16> = (0u16..512)
        .map(|m| PERMS3.iter().map(|p| relabel(m, p)).min().unwrap())
        .collect();
    assert_eq!(orbits.len(), 104);
    assert_eq!(classification_table(3, true).unwrap().len(), orbits.len());
    assert_eq!(classification_table(2, true).unwrap().len(), 10);
}

fn edge(mask: u16, a: usize, b: usize) -> bool {
    mask >> (a * 3 + b) & 1 == 1
}

/// Universals may go to `x` when any endpoint equal to `x` can be moved
/// anywhere without losing the edge.
fn oracle_forall_canon(mask: u16, x: usize) -> bool {
    (0..3).all(|a| {
        (0..3).all(|b| {
            !edge(mask, a, b)
                || (0..3).all(|c| {
                    (0..3).all(|d| {
                        let a2 = if a == x { c } else { a };
                        let b2 = if b == x { d } else { b };
                        edge(mask, a2, b2)
                    })
                })
        })
    })
}

/// Existentials may go to `y` when moving any set of endpoints to `y`
/// keeps every edge.
fn oracle_exists_canon(mask: u16, y: usize) -> bool {
    (0..3).all(|a| (0..3).all(|b| !edge(mask, a, b) || [(y, b), (a, y), (y, y)].iter().all(|&(c, d)| edge(mask, c, d))))
}

#[test]
fn canons_match_the_oracle() {
    for m in 0u16..512 {
        let h = Digraph::from_edges(
            3,
            &(0..9)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| ((i / 3) as u32, (i % 3) as u32))
                .collect::<Vec<_>>(),
        );
        let fc: Vec<u32> = (0..3)
            .filter(|&x| oracle_forall_canon(m, x))
            .map(|x| x as u32)
            .collect();
        let ec: Vec<u32> = (0..3)
            .filter(|&y| oracle_exists_canon(m, y))
            .map(|y| y as u32)
            .collect();
        assert_eq!(forall_canons(&h), fc, "{}", h.encoding());
        assert_eq!(exists_canons(&h), ec, "{}", h.encoding());
    }
}

#[test]
fn size_three_distribution_is_frozen() {
    let mut counts = [0usize; 4];
    for h in Digraph::all(3) {
        let v = classify_digraph(&h).unwrap().verdict;
        assert_eq!(semantic_class(&h), v, "{}", h.encoding());
        counts[ComplexityClass::ALL.iter().position(|&c| c == v).unwrap()] += 1;
    }
    assert_eq!(counts, [152, 21, 21, 318]);
}

/// On two vertices the verdict is Logspace exactly when the edge relation
/// is empty, full, or closed under moving endpoints to one fixed value.
#[test]
fn size_two_verdicts_follow_domination() {
    let mut pspace = Vec::new();
    for h in Digraph::all(2) {
        let e = |a: u32, b: u32| h.has_edge(a, b);
        let edges = h.edges();
        let dominated = (0..2).any(|d| edges.iter().all(|&(a, b)| e(d, b) && e(a, d) && e(d, d)));
        let logspace = edges.is_empty() || edges.len() == 4 || dominated;
        let v = classify_digraph(&h).unwrap().verdict;
        assert_eq!(v == ComplexityClass::Logspace, logspace, "{}", h.encoding());
        if !logspace {
            assert_eq!(v, ComplexityClass::PspaceComplete);
            pspace.push(h.encoding());
        }
    }
    assert_eq!(pspace, ["00/10", "01/00", "01/10", "10/01", "10/11", "11/01"]);
}

#[test]
fn canon_counts_are_consistent_with_complement() {
    for h in Digraph::all(3) {
        assert_eq!(forall_canons(&h), exists_canons(&h.complement()), "{}", h.encoding());
    }
}
