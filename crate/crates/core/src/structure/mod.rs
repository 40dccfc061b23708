//! Finite relational structures, digraphs and the catalog of named shapes.

mod catalog;
mod digraph;
mod relational;

pub use catalog::{catalog, catalog_names, identify, named_digraph, CatalogEntry, Provenance, UnknownEntry};
pub use digraph::{ClosureKind, Digraph, DigraphError};
pub use relational::{parse_structure, render_structure, Structure, StructureError};
