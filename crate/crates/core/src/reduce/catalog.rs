//! Named gadgets over catalog hosts, each with the structure it is meant to
//! define and the recorded outcome of checking that claim.

use serde::Serialize;

use crate::logic::Signature;
use crate::structure::{catalog, Digraph, Structure};

use super::gadget::{interpret_gadget, interpret_relation, GadgetDefinition, GadgetError, GadgetProvenance};

struct Spec {
    name: &'static str,
    host: &'static str,
    free: &'static [&'static str],
    expected: &'static str,
    provenance: GadgetProvenance,
    verifies: bool,
    note: &'static str,
    body: &'static str,
}

const DP010_PRINTED: &str = "(forall w. E(w,w) | (E(u,w) & E(w,v))) | (forall w. E(w,w) | (E(w,u) & E(w,v)))";
const DP010_CORRECTED: &str = "(forall w. E(w,w) | (E(u,w) & E(w,v))) | (forall w. E(w,w) | (E(w,u) & E(v,w)))";
const DP011_PRINTED: &str = "E(v,u) | (forall w. E(w,w) | (E(w,u) & (exists w1. E(w,w1) & E(v,w1))))";

const SPECS: &[Spec] = &[
    Spec {
        name: "NAE-to-K2",
        host: "K2",
        free: &["v", "v1", "v2"],
        expected: "B_NAE",
        provenance: GadgetProvenance::Printed,
        verifies: true,
        note: "not-all-equal over {0,1} is a disjunction of K2 edges",
        body: "E(v,v1) | E(v1,v2) | E(v,v2)",
    },
    Spec {
        name: "DP010bar-defines-K1K2",
        host: "DP3^010bar",
        free: &["u", "v"],
        expected: "K1+K2",
        provenance: GadgetProvenance::Printed,
        verifies: false,
        note: "defines {(a,a),(c,a)}; the second conjunct needs E(v,w)",
        body: DP010_PRINTED,
    },
    Spec {
        name: "DP010bar-defines-K1K2-corrected",
        host: "DP3^010bar",
        free: &["u", "v"],
        expected: "K1+K2",
        provenance: GadgetProvenance::Corrected,
        verifies: true,
        note: "second conjunct E(w,u) & E(v,w)",
        body: DP010_CORRECTED,
    },
    Spec {
        name: "DP110-defines-H5",
        host: "DP3^110",
        free: &["u", "v"],
        expected: "H5",
        provenance: GadgetProvenance::Printed,
        verifies: true,
        note: "",
        body: "E(u,v) | (forall w. E(w,w) | (E(v,w) & (exists w1. E(w1,w) & E(w1,u))))",
    },
    Spec {
        name: "DP011-defines-H5prime",
        host: "DP3^011",
        free: &["u", "v"],
        expected: "H5'",
        provenance: GadgetProvenance::Printed,
        verifies: false,
        note: "defines a digraph isomorphic to DP3^110",
        body: DP011_PRINTED,
    },
    Spec {
        name: "DP011-defines-DP110",
        host: "DP3^011",
        free: &["u", "v"],
        expected: "DP3^110",
        provenance: GadgetProvenance::Printed,
        verifies: true,
        note: "the displayed formula, checked against what it actually defines",
        body: DP011_PRINTED,
    },
    Spec {
        name: "DP011-defines-H5prime-corrected",
        host: "DP3^011",
        free: &["u", "v"],
        expected: "H5'",
        provenance: GadgetProvenance::Corrected,
        verifies: true,
        note: "first disjunct E(u,v)",
        body: "E(u,v) | (forall w. E(w,w) | (E(w,u) & (exists w1. E(w,w1) & E(v,w1))))",
    },
    Spec {
        name: "H6bar-defines-DP100bar",
        host: "H6bar",
        free: &["u", "v"],
        expected: "DP3^100bar",
        provenance: GadgetProvenance::Printed,
        verifies: true,
        note: "",
        body: "E(u,v) | (forall w. E(w,w) | ((exists w1. E(w,w1) & E(w1,u)) & (exists w2. E(w2,w) & E(w2,v))))",
    },
    Spec {
        name: "H8bar-defines-K1K2",
        host: "H8bar",
        free: &["u", "v"],
        expected: "K1+K2",
        provenance: GadgetProvenance::Printed,
        verifies: true,
        note: "",
        body: DP010_CORRECTED,
    },
];

/// A catalog gadget together with its recorded outcome.
#[derive(Clone, Debug)]
pub struct GadgetEntry {
    pub gadget: GadgetDefinition,
    /// Whether the gadget is recorded as defining its expected structure.
    pub verifies: bool,
    pub note: &'static str,
}

fn build(s: &Spec) -> GadgetEntry {
    let host = catalog(s.host).expect("gadget hosts are catalog entries");
    let sig: Signature = host.structure.signature().clone();
    let mut g = GadgetDefinition::parse(s.name, sig, s.free, s.body).expect("catalog gadgets parse");
    g.host = Some(s.host.to_string());
    g.expected = Some(s.expected.to_string());
    g.provenance = s.provenance;
    GadgetEntry {
        gadget: g,
        verifies: s.verifies,
        note: s.note,
    }
}

pub fn gadget_catalog() -> Vec<GadgetEntry> {
    SPECS.iter().map(build).collect()
}

pub fn gadget_names() -> Vec<&'static str> {
    SPECS.iter().map(|s| s.name).collect()
}

pub fn gadget(name: &str) -> Result<GadgetEntry, GadgetError> {
    SPECS
        .iter()
        .find(|s| s.name == name)
        .map(build)
        .ok_or_else(|| GadgetError::UnknownGadget(name.to_string()))
}

/// The outcome of running a gadget on its host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetCheck {
    pub name: String,
    pub provenance: GadgetProvenance,
    pub expected: String,
    /// Tuples of the defined relation.
    pub produced: Vec<Vec<u32>>,
    /// Catalog name of the produced structure, when it has one.
    pub produced_name: Option<String>,
    pub defines_expected: bool,
    pub recorded: bool,
}

impl GadgetCheck {
    /// True when the outcome agrees with the recorded one.
    pub fn as_recorded(&self) -> bool {
        self.defines_expected == self.recorded
    }
}

/// Whether `produced` is the expected structure: up to isomorphism for
/// digraphs, and as a table otherwise.
fn matches_expected(produced: &Structure, expected: &Structure) -> bool {
    match (Digraph::from_structure(produced), Digraph::from_structure(expected)) {
        (Ok(p), Ok(e)) => p.is_isomorphic(&e),
        _ => produced.size() == expected.size() && produced.tables() == expected.tables(),
    }
}

pub fn check_gadget(entry: &GadgetEntry) -> Result<GadgetCheck, GadgetError> {
    let g = &entry.gadget;
    let host_name = g.host.as_deref().expect("catalog gadgets name a host");
    let expected_name = g.expected.as_deref().expect("catalog gadgets name a target");
    let host = catalog(host_name)
        .map_err(|_| GadgetError::UnknownStructure(host_name.into()))?
        .structure;
    let expected = catalog(expected_name)
        .map_err(|_| GadgetError::UnknownStructure(expected_name.into()))?
        .structure;
    let rel = interpret_relation(&host, g)?;
    let produced = Structure::from_tables(expected.signature().clone(), host.size(), [rel.clone()])
        .expect("defined tuples lie in the host universe");
    let produced_name = if g.arity() == 2 {
        crate::structure::identify(&interpret_gadget(&host, g)?)
    } else {
        None
    };
    Ok(GadgetCheck {
        name: g.name.clone(),
        provenance: g.provenance,
        expected: expected_name.to_string(),
        produced: rel.into_iter().collect(),
        produced_name,
        defines_expected: matches_expected(&produced, &expected),
        recorded: entry.verifies,
    })
}
