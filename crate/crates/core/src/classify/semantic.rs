use crate::structure::Digraph;

use super::canon::{exists_canons, forall_canons, good_pairs};
use super::certificate::ComplexityClass;

/// The class read off directly from canons and good pairs.
pub fn semantic_class(h: &Digraph) -> ComplexityClass {
    if !good_pairs(h).is_empty() {
        ComplexityClass::Logspace
    } else if !forall_canons(h).is_empty() {
        ComplexityClass::NpComplete
    } else if !exists_canons(h).is_empty() {
        ComplexityClass::ConpComplete
    } else {
        ComplexityClass::PspaceComplete
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::named_digraph;

    #[test]
    fn named_examples() {
        assert_eq!(semantic_class(&named_digraph("K2")), ComplexityClass::PspaceComplete);
        assert_eq!(semantic_class(&named_digraph("K1+K2")), ComplexityClass::NpComplete);
        assert_eq!(semantic_class(&named_digraph("DP3^010")), ComplexityClass::ConpComplete);
        assert_eq!(semantic_class(&named_digraph("H7bar")), ComplexityClass::Logspace);
    }
}
