//! Gadgets, sentence rewrites and reduction chains.

mod boolean;
mod catalog;
mod chain;
mod gadget;
mod rewrite;

pub use boolean::{boolean_gadget, BooleanGadget, BooleanGadgetCase, BooleanGadgetError};
pub use catalog::{check_gadget, gadget, gadget_catalog, gadget_names, GadgetCheck, GadgetEntry};
pub use chain::{run_chain, ChainError, ReductionStep};
pub use gadget::{interpret_gadget, interpret_relation, GadgetDefinition, GadgetError, GadgetProvenance};
pub use rewrite::{reduce_by_gadget, reduce_sentence, rule_body, RewriteError, RewriteRule};
