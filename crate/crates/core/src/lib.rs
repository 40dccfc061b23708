//! Positive equality-free first-order logic on small structures: parsing,
//! model checking, complexity classification with certificates, gadget
//! reductions and the suites that verify them.

pub mod classify;
pub mod eval;
pub mod logic;
pub mod reduce;
pub mod structure;
pub mod verify;

pub use classify::{
    classify, classify_boolean, classify_digraph, semantic_class, Certificate, ClassifyError, ComplexityClass,
};
pub use eval::{evaluate, EvalError};
pub use logic::{parse_formula, render_formula, Formula, Fragment, ParseError, Signature};
pub use reduce::{interpret_gadget, reduce_sentence, GadgetDefinition, ReductionStep, RewriteRule};
pub use structure::{catalog, parse_structure, render_structure, Digraph, Structure, StructureError};
pub use verify::{run_suite, Suite, SuiteReport, VerifyOptions};
