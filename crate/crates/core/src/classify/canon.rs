use serde::{Deserialize, Serialize};

use crate::structure::Digraph;

/// `x` is a ∀-canon when `E(x,y)` forces every vertex to point at `y` and
/// `E(y,x)` forces `y` to point at every vertex.
pub fn is_forall_canon(h: &Digraph, x: u32) -> bool {
    h.vertices()
        .all(|y| (!h.has_edge(x, y) || h.column_full(y)) && (!h.has_edge(y, x) || h.row_full(y)))
}

/// `x` is an ∃-canon when every edge `(y,z)` comes with `E(x,z)` and `E(y,x)`.
pub fn is_exists_canon(h: &Digraph, x: u32) -> bool {
    h.edges().iter().all(|&(y, z)| h.has_edge(x, z) && h.has_edge(y, x))
}

pub fn forall_canons(h: &Digraph) -> Vec<u32> {
    h.vertices().filter(|&x| is_forall_canon(h, x)).collect()
}

pub fn exists_canons(h: &Digraph) -> Vec<u32> {
    h.vertices().filter(|&x| is_exists_canon(h, x)).collect()
}

/// Conditions under which universals may go to `x` and existentials to `y`:
///
/// * G1: if there is any edge, `y` has a loop;
/// * G2: `E(x,v)` implies `E(x,y)`, and `E(v,x)` implies `E(y,x)`;
/// * G3: `E(x,y)` implies every `E(v,y)`, and `E(y,x)` implies every `E(y,v)`;
/// * G4: a loop at `x` implies the digraph is complete.
pub fn is_good_pair(h: &Digraph, x: u32, y: u32) -> bool {
    let g1 = !h.has_any_edge() || h.has_edge(y, y);
    let g2 = h
        .vertices()
        .all(|v| (!h.has_edge(x, v) || h.has_edge(x, y)) && (!h.has_edge(v, x) || h.has_edge(y, x)));
    let g3 = (!h.has_edge(x, y) || h.column_full(y)) && (!h.has_edge(y, x) || h.row_full(y));
    let g4 = !h.has_edge(x, x) || h.is_complete();
    g1 && g2 && g3 && g4
}

pub fn good_pairs(h: &Digraph) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for x in h.vertices() {
        for y in h.vertices() {
            if is_good_pair(h, x, y) {
                out.push((x, y));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonReport {
    pub forall_canons: Vec<u32>,
    pub exists_canons: Vec<u32>,
    pub good_pairs: Vec<(u32, u32)>,
}

pub fn canon_report(h: &Digraph) -> CanonReport {
    CanonReport {
        forall_canons: forall_canons(h),
        exists_canons: exists_canons(h),
        good_pairs: good_pairs(h),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::named_digraph;

    #[test]
    fn named_examples() {
        let k1k2 = named_digraph("K1+K2");
        assert_eq!(forall_canons(&k1k2), [0]);
        assert!(exists_canons(&k1k2).is_empty());
        assert!(good_pairs(&k1k2).is_empty());

        let dp010 = named_digraph("DP3^010");
        assert_eq!(exists_canons(&dp010), [1]);
        assert!(forall_canons(&dp010).is_empty());

        let k2 = named_digraph("K2");
        assert!(forall_canons(&k2).is_empty() && exists_canons(&k2).is_empty());
        assert!(good_pairs(&k2).is_empty());
    }

    #[test]
    fn good_pair_examples() {
        assert!(is_good_pair(&named_digraph("H7bar"), 0, 2));
        assert!(is_good_pair(&named_digraph("H4"), 2, 1));
    }

    #[test]
    fn canons_swap_under_complement() {
        for h in Digraph::all(3) {
            let c = h.complement();
            assert_eq!(forall_canons(&h), exists_canons(&c), "{h}");
        }
    }

    #[test]
    fn canon_pairs_are_good_pairs() {
        for h in Digraph::all(3) {
            for x in forall_canons(&h) {
                for y in exists_canons(&h) {
                    assert!(is_good_pair(&h, x, y), "{h} ({x},{y})");
                }
            }
        }
    }

    #[test]
    fn isolated_vertices_are_forall_canons() {
        for h in Digraph::all(3) {
            for x in h.isolated_vertices() {
                assert!(is_forall_canon(&h, x));
            }
        }
    }
}
