//! Structures over the universe {0,1}.

use serde::Serialize;

use crate::reduce::{boolean_gadget, ReductionStep};
use crate::structure::Structure;

use super::certificate::{Certificate, ComplexityClass, Witnesses};
use super::ClassifyError;

/// A tuple of `relation` that stops being a tuple once the positions in
/// `flipped` are changed to the dominating value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BooleanDominationWitness {
    pub relation: String,
    pub tuple: Vec<u32>,
    pub flipped: Vec<usize>,
}

impl BooleanDominationWitness {
    pub fn flipped_tuple(&self, to: u32) -> Vec<u32> {
        let mut t = self.tuple.clone();
        for &i in &self.flipped {
            t[i] = to;
        }
        t
    }
}

fn subsets_by_size(positions: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (1..=positions.len()).flat_map(move |k| combinations(positions, k))
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let n = items.len();
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Whether `hi` dominates `lo`: changing any set of `lo` entries of a tuple
/// to `hi` keeps it in its relation. Returns the first counterexample, or
/// `None` when domination holds. Relations are searched in signature order,
/// tuples lexicographically, and flip sets by increasing size.
pub fn dominates_boolean(b: &Structure, lo: u32, hi: u32) -> Result<Option<BooleanDominationWitness>, ClassifyError> {
    if !b.is_boolean() {
        return Err(ClassifyError::NotBoolean(b.size()));
    }
    if lo == hi {
        return Ok(None);
    }
    for (r, sym) in b.signature().relations().iter().enumerate() {
        for t in b.table(r) {
            let positions: Vec<usize> = (0..t.len()).filter(|&i| t[i] == lo).collect();
            for s in subsets_by_size(&positions) {
                let mut f = t.clone();
                for &i in &s {
                    f[i] = hi;
                }
                if !b.contains(r, &f) {
                    return Ok(Some(BooleanDominationWitness {
                        relation: sym.name.clone(),
                        tuple: t.clone(),
                        flipped: s,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Drops relations that are empty or full. Returns the remaining structure
/// and the names of the dropped relations.
pub fn normalize_boolean(b: &Structure) -> (Structure, Vec<String>) {
    let mut keep = Vec::new();
    let mut dropped = Vec::new();
    for (r, sym) in b.signature().relations().iter().enumerate() {
        if b.table(r).is_empty() || b.is_full(r) {
            dropped.push(sym.name.clone());
        } else {
            keep.push(r);
        }
    }
    (b.restrict(&keep), dropped)
}

/// Whether the product of all relations contains the constant tuple `c`,
/// that is, every relation contains its all-`c` tuple.
pub fn has_constant_tuple(b: &Structure, c: u32) -> bool {
    b.signature()
        .relations()
        .iter()
        .enumerate()
        .all(|(r, sym)| b.contains(r, &vec![c; sym.arity]))
}

/// The ∀-canon and ∃-canon of a boolean structure, when one value
/// dominates the other.
pub fn boolean_canons(b: &Structure) -> Result<Option<(u32, u32)>, ClassifyError> {
    let (n, _) = normalize_boolean(b);
    if dominates_boolean(&n, 0, 1)?.is_none() {
        return Ok(Some((0, 1)));
    }
    if dominates_boolean(&n, 1, 0)?.is_none() {
        return Ok(Some((1, 0)));
    }
    Ok(None)
}

pub fn classify_boolean(b: &Structure) -> Result<Certificate, ClassifyError> {
    if !b.is_boolean() {
        return Err(ClassifyError::NotBoolean(b.size()));
    }
    let (n, dropped) = normalize_boolean(b);
    let mut witnesses = Witnesses {
        dropped_relations: dropped,
        ..Witnesses::default()
    };
    if n.signature().is_empty() {
        witnesses.forall_canon = Some(0);
        witnesses.exists_canon = Some(0);
        witnesses.good_pair = Some((0, 0));
        return Ok(Certificate::membership(
            ComplexityClass::Logspace,
            "normalized-away",
            witnesses,
        ));
    }
    if let Some((lo, hi)) = boolean_canons(&n)? {
        witnesses.forall_canon = Some(lo);
        witnesses.exists_canon = Some(hi);
        witnesses.good_pair = Some((lo, hi));
        return Ok(Certificate::membership(
            ComplexityClass::Logspace,
            "domination",
            witnesses,
        ));
    }
    let bg = boolean_gadget(b)?;
    witnesses.violation = bg.violation.clone();
    witnesses.gadget = Some(bg.gadget.name.clone());
    let mut cert = Certificate::membership(ComplexityClass::PspaceComplete, bg.case.name(), witnesses);
    cert.chain = vec![ReductionStep::Define(bg.gadget)];
    cert.finish_chain(b)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Signature;
    use crate::structure::catalog;

    #[test]
    fn combinations_in_order() {
        assert_eq!(combinations(&[0, 2, 3], 2), vec![vec![0, 2], vec![0, 3], vec![2, 3]]);
        assert_eq!(combinations(&[5], 1), vec![vec![5]]);
        assert!(combinations(&[1], 2).is_empty());
    }

    #[test]
    fn b1_has_canons() {
        let b1 = catalog("B1").unwrap().structure;
        assert_eq!(boolean_canons(&b1).unwrap(), Some((1, 0)));
        let c = classify_boolean(&b1).unwrap();
        assert_eq!(c.verdict, ComplexityClass::Logspace);
        assert_eq!(c.witnesses.forall_canon, Some(1));
    }

    #[test]
    fn b2_violation() {
        let b2 = catalog("B2").unwrap().structure;
        let w = dominates_boolean(&b2, 1, 0).unwrap().unwrap();
        assert_eq!((w.tuple.clone(), w.flipped.clone()), (vec![0, 1, 1], vec![1]));
        assert_eq!(w.flipped_tuple(0), vec![0, 0, 1]);
        let c = classify_boolean(&b2).unwrap();
        assert_eq!(c.verdict, ComplexityClass::PspaceComplete);
        assert_eq!(c.rule, "only-all-zeros");
        assert_eq!(c.kernel.as_deref(), Some("K2bar"));
    }

    #[test]
    fn normalization() {
        let sig = Signature::new([("P", 1), ("Q", 1)]).unwrap();
        let s = Structure::from_tables(sig, 2, [vec![], vec![vec![0], vec![1]]]).unwrap();
        let c = classify_boolean(&s).unwrap();
        assert_eq!(c.rule, "normalized-away");
        assert_eq!(c.witnesses.dropped_relations, ["P", "Q"]);
    }

    #[test]
    fn nae_is_hard() {
        let nae = catalog("B_NAE").unwrap().structure;
        let c = classify_boolean(&nae).unwrap();
        assert_eq!(c.verdict, ComplexityClass::PspaceComplete);
        assert_eq!(c.rule, "no-constant-tuples");
        assert_eq!(c.kernel.as_deref(), Some("K2"));
    }
}
