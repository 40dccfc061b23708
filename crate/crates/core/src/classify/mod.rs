//! Complexity classification with checkable certificates.

mod boolean;
mod canon;
mod certificate;
mod digraph;
mod semantic;
mod table;

use thiserror::Error;

use crate::reduce::{BooleanGadgetError, ChainError};
use crate::structure::{Digraph, Structure};

pub use boolean::{
    boolean_canons, classify_boolean, dominates_boolean, has_constant_tuple, normalize_boolean,
    BooleanDominationWitness,
};
pub use canon::{
    canon_report, exists_canons, forall_canons, good_pairs, is_exists_canon, is_forall_canon, is_good_pair, CanonReport,
};
pub use certificate::{identify_kernel, Certificate, CertificateError, ComplexityClass, Witnesses, KERNELS};
pub use digraph::classify_digraph;
pub use semantic::semantic_class;
pub use table::{classification_table, cross_check_table, render_csv, TableRow};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("structure has {0} elements, not 2")]
    NotBoolean(usize),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Gadget(#[from] BooleanGadgetError),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Classifies a digraph of any size up to 3 or a structure on {0,1}.
pub fn classify(s: &Structure) -> Result<Certificate, ClassifyError> {
    if let Ok(g) = Digraph::from_structure(s) {
        return classify_digraph(&g);
    }
    match s.size() {
        0 | 1 => Ok(Certificate::membership(
            ComplexityClass::Logspace,
            "trivial-size",
            Witnesses {
                good_pair: Some((0, 0)),
                ..Witnesses::default()
            },
        )),
        2 => classify_boolean(s),
        n => Err(ClassifyError::Unsupported(format!(
            "non-digraph structures on {n} elements; only the two-element universe is covered"
        ))),
    }
}
