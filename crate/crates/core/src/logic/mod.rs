//! Formulas of equality-free first-order logic and their syntactic
//! transformations.

mod enumerate;
mod formula;
mod parse;
mod prenex;
mod render;
mod signature;
mod transform;

pub use enumerate::{
    enumerate_sentences, random_formula, random_prenex, random_sentence, suite_var, SuiteConfig, SuiteMode,
};
pub use formula::{Atom, Formula, FormulaError, Fragment, PrenexSentence, Quantifier, Term, Var};
pub use parse::{parse_formula, ParseError};
pub use prenex::{to_prenex, PrenexError};
pub use render::render_formula;
pub use signature::{RelationSymbol, Signature, SignatureError};
pub use transform::{
    dualize, eliminate_double_negation, instantiate, substitute_atom, substitute_terms, SubstituteError,
};
