//! Named structures. Vertex labels a, b, c are 0, 1, 2.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::Signature;

use super::digraph::Digraph;
use super::relational::Structure;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    /// The edge set is stated explicitly.
    Fixed,
    /// The edge set was solved for from a list of constraints; the solution
    /// is checked to be unique within its shape family.
    Reconstructed { constraints: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub structure: Structure,
    pub provenance: Provenance,
}

impl CatalogEntry {
    pub fn digraph(&self) -> Option<Digraph> {
        Digraph::from_structure(&self.structure).ok()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown catalog entry `{0}`")]
pub struct UnknownEntry(pub String);

const A: u32 = 0;
const B: u32 = 1;
const C: u32 = 2;

type Spec = (&'static str, usize, &'static [(u32, u32)]);

const FIXED: &[Spec] = &[
    ("K1", 1, &[]),
    ("K2", 2, &[(0, 1), (1, 0)]),
    ("K2bar", 2, &[(0, 0), (1, 1)]),
    ("K3", 3, &[(A, B), (B, A), (A, C), (C, A), (B, C), (C, B)]),
    ("K3bar", 3, &[(A, A), (B, B), (C, C)]),
    ("K1^1", 1, &[(0, 0)]),
    ("K2^11", 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]),
    (
        "K3^111",
        3,
        &[(A, A), (A, B), (A, C), (B, A), (B, B), (B, C), (C, A), (C, B), (C, C)],
    ),
    ("K1+K2", 3, &[(B, C), (C, B)]),
    ("K1^1+K2^11", 3, &[(A, A), (B, B), (B, C), (C, B), (C, C)]),
    ("P3^000", 3, &[(A, B), (B, A), (B, C), (C, B)]),
    ("P3^010", 3, &[(A, B), (B, A), (B, C), (C, B), (B, B)]),
    ("P3^100", 3, &[(A, B), (B, A), (B, C), (C, B), (A, A)]),
    ("P3^101", 3, &[(A, B), (B, A), (B, C), (C, B), (A, A), (C, C)]),
    ("P3^110", 3, &[(A, B), (B, A), (B, C), (C, B), (A, A), (B, B)]),
    ("DP3^010", 3, &[(A, B), (B, C), (B, B)]),
    ("DP3^110", 3, &[(A, B), (B, C), (A, A), (B, B)]),
    ("DP3^011", 3, &[(A, B), (B, C), (B, B), (C, C)]),
    ("DP3^100", 3, &[(A, B), (B, C), (A, A)]),
];

const RECONSTRUCTED: &[(Spec, &[&str])] = &[
    (
        ("H1", 3, &[(B, A), (B, C), (B, B)]),
        &[
            "loop at the middle vertex of a two-edge path only",
            "a twin pair whose contraction has a forall-canon and an exists-canon",
            "not both path edges double (not P3^010)",
            "path edges leave the middle vertex",
        ],
    ),
    (
        ("H1'", 3, &[(A, B), (C, B), (B, B)]),
        &[
            "loop at the middle vertex of a two-edge path only",
            "a twin pair whose contraction has a forall-canon and an exists-canon",
            "not both path edges double (not P3^010)",
            "path edges enter the middle vertex",
        ],
    ),
    (
        ("H2", 3, &[(A, B), (B, A), (B, C), (B, B)]),
        &[
            "loop at the middle vertex of a two-edge path only",
            "no twins",
            "the middle vertex b is an exists-canon and the end c is a forall-canon",
            "single edge leaves the middle vertex",
        ],
    ),
    (
        ("H2'", 3, &[(A, B), (B, A), (C, B), (B, B)]),
        &[
            "loop at the middle vertex of a two-edge path only",
            "no twins",
            "the middle vertex b is an exists-canon and the end c is a forall-canon",
            "single edge enters the middle vertex",
        ],
    ),
    (
        ("H3", 3, &[(A, A), (B, B), (A, B), (B, A), (B, C)]),
        &[
            "loops at the middle vertex b and the end a of a two-edge path",
            "the unlooped end c is a forall-canon and b is an exists-canon",
            "some path edge is single",
            "single edge leaves the middle vertex",
        ],
    ),
    (
        ("H3'", 3, &[(A, A), (B, B), (A, B), (B, A), (C, B)]),
        &[
            "loops at the middle vertex b and the end a of a two-edge path",
            "the unlooped end c is a forall-canon and b is an exists-canon",
            "some path edge is single",
            "single edge enters the middle vertex",
        ],
    ),
    (
        ("H4", 3, &[(A, A), (B, B), (A, B), (C, B)]),
        &[
            "loops at the middle vertex b and the end a of a two-edge path",
            "the unlooped end c is a forall-canon",
            "b is not an exists-canon",
            "path edges enter the middle vertex",
        ],
    ),
    (
        ("H4'", 3, &[(A, A), (B, B), (B, A), (B, C)]),
        &[
            "loops at the middle vertex b and the end a of a two-edge path",
            "the unlooped end c is a forall-canon",
            "b is not an exists-canon",
            "path edges leave the middle vertex",
        ],
    ),
    (
        ("H5", 3, &[(A, A), (B, B), (A, B), (B, C), (C, B)]),
        &[
            "loops at the middle vertex b and the end a of a two-edge path",
            "doub(tranclos(H)) is isomorphic to K1^1+K2^11",
            "the a-b edge points away from a",
        ],
    ),
    (
        ("H5'", 3, &[(A, A), (B, B), (B, A), (B, C), (C, B)]),
        &[
            "loops at the middle vertex b and the end a of a two-edge path",
            "doub(tranclos(H)) is isomorphic to K1^1+K2^11",
            "the a-b edge points towards a",
        ],
    ),
    (
        ("H6", 3, &[(A, B), (B, C), (C, A), (A, A)]),
        &[
            "tournament on three vertices with exactly one loop",
            "the complement gadget defines a digraph isomorphic to DP3^100bar",
        ],
    ),
    (
        ("H7", 3, &[(A, B), (B, C), (A, C), (A, A)]),
        &[
            "tournament on three vertices with exactly one loop",
            "the complement has no canon of either kind but has a good pair",
            "the loop sits at the source",
        ],
    ),
    (
        ("H7'", 3, &[(A, B), (B, C), (A, C), (C, C)]),
        &[
            "tournament on three vertices with exactly one loop",
            "the complement has no canon of either kind but has a good pair",
            "the loop sits at the sink",
        ],
    ),
    (
        ("H8", 3, &[(A, B), (B, C), (A, C), (B, B)]),
        &[
            "tournament on three vertices with exactly one loop",
            "the complement has a forall-canon which is loopless in the complement",
        ],
    ),
];

/// Names of all base entries, in catalog order. Digraph entries also answer
/// to their name with a `bar` suffix, meaning the complement.
pub fn catalog_names() -> Vec<&'static str> {
    let mut out: Vec<&str> = FIXED.iter().map(|s| s.0).collect();
    out.extend(["B_NAE", "B1", "B2"]);
    out.extend(RECONSTRUCTED.iter().map(|(s, _)| s.0));
    out
}

pub fn catalog(name: &str) -> Result<CatalogEntry, UnknownEntry> {
    if let Some(e) = base_entry(name) {
        return Ok(e);
    }
    if let Some(stem) = name.strip_suffix("bar") {
        if let Some(e) = base_entry(stem) {
            if let Some(g) = e.digraph() {
                return Ok(CatalogEntry {
                    name: name.to_string(),
                    structure: g.complement().to_structure(),
                    provenance: e.provenance,
                });
            }
        }
    }
    Err(UnknownEntry(name.to_string()))
}

/// Shorthand for digraph entries; panics on unknown or non-digraph names.
pub fn named_digraph(name: &str) -> Digraph {
    catalog(name)
        .ok()
        .and_then(|e| e.digraph())
        .unwrap_or_else(|| panic!("`{name}` is not a catalog digraph"))
}

fn base_entry(name: &str) -> Option<CatalogEntry> {
    let make = |spec: &Spec, provenance| CatalogEntry {
        name: spec.0.to_string(),
        structure: Digraph::from_edges(spec.1, spec.2).to_structure(),
        provenance,
    };
    if let Some(s) = FIXED.iter().find(|s| s.0 == name) {
        return Some(make(s, Provenance::Fixed));
    }
    if let Some((s, cs)) = RECONSTRUCTED.iter().find(|(s, _)| s.0 == name) {
        let constraints = cs.iter().map(|c| c.to_string()).collect();
        return Some(make(s, Provenance::Reconstructed { constraints }));
    }
    let boolean = |rel: &str, arity: usize, tuples: Vec<Vec<u32>>| {
        let sig = Signature::new([(rel, arity)]).expect("valid signature");
        Structure::from_tables(sig, 2, [tuples]).expect("boolean tuples")
    };
    let structure = match name {
        "B_NAE" => {
            let tuples = (0..8u32)
                .map(|m| vec![m >> 2 & 1, m >> 1 & 1, m & 1])
                .filter(|t| t != &[0, 0, 0] && t != &[1, 1, 1])
                .collect();
            boolean("NAE", 3, tuples)
        }
        "B1" => boolean("R", 3, vec![vec![0, 0, 0], vec![0, 0, 1]]),
        "B2" => boolean("R", 3, vec![vec![0, 0, 0], vec![0, 1, 1]]),
        _ => return None,
    };
    Some(CatalogEntry {
        name: name.to_string(),
        structure,
        provenance: Provenance::Fixed,
    })
}

/// The catalog name of a digraph isomorphic to `g`, trying base entries
/// before complements.
pub fn identify(g: &Digraph) -> Option<String> {
    let names = catalog_names();
    for n in &names {
        if let Some(h) = catalog(n).ok().and_then(|e| e.digraph()) {
            if h.is_isomorphic(g) {
                return Some(n.to_string());
            }
        }
    }
    for n in &names {
        if let Some(h) = catalog(n).ok().and_then(|e| e.digraph()) {
            if h.complement().is_isomorphic(g) {
                return Some(format!("{n}bar"));
            }
        }
    }
    None
}
