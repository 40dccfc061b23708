//! Reduction chains: sequences of structure transformations along which
//! hardness transfers back to the starting structure.

use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::logic::{render_formula, Var};
use crate::structure::{ClosureKind, Digraph, DigraphError, Structure};

use super::catalog::gadget;
use super::gadget::{interpret_gadget, GadgetDefinition, GadgetError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("step {step} (`{name}`): {source}")]
    Digraph {
        step: usize,
        name: String,
        source: DigraphError,
    },
    #[error("step {step} (`{name}`): {source}")]
    Gadget {
        step: usize,
        name: String,
        source: GadgetError,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionStep {
    Closure(ClosureKind),
    Complement,
    /// Deletes `remove`, a twin of `keep`.
    ContractTwin {
        remove: u32,
        keep: u32,
    },
    /// A catalog gadget by name.
    Gadget(String),
    /// An inline gadget built for this structure.
    Define(GadgetDefinition),
}

impl ReductionStep {
    pub fn name(&self) -> String {
        match self {
            ReductionStep::Closure(k) => k.name().to_string(),
            ReductionStep::Complement => "complement".into(),
            ReductionStep::ContractTwin { .. } => "contract-twin".into(),
            ReductionStep::Gadget(g) => format!("gadget:{g}"),
            ReductionStep::Define(g) => format!("define:{}", g.name),
        }
    }

    /// Whether the step exchanges a problem for its complement.
    pub fn is_complement(&self) -> bool {
        matches!(self, ReductionStep::Complement)
    }

    pub fn apply(&self, s: &Structure) -> Result<Structure, ChainError> {
        self.apply_at(0, s)
    }

    fn apply_at(&self, step: usize, s: &Structure) -> Result<Structure, ChainError> {
        let dg_err = |source| ChainError::Digraph {
            step,
            name: self.name(),
            source,
        };
        let g_err = |source| ChainError::Gadget {
            step,
            name: self.name(),
            source,
        };
        let digraph = || Digraph::from_structure(s).map_err(dg_err);
        let out = match self {
            ReductionStep::Closure(k) => digraph()?.closure(*k),
            ReductionStep::Complement => digraph()?.complement(),
            ReductionStep::ContractTwin { remove, keep } => digraph()?.contract_twin(*remove, *keep).map_err(dg_err)?,
            ReductionStep::Gadget(name) => {
                let g = gadget(name).map_err(g_err)?.gadget;
                interpret_gadget(s, &g).map_err(g_err)?
            }
            ReductionStep::Define(g) => interpret_gadget(s, g).map_err(g_err)?,
        };
        Ok(out.to_structure())
    }
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionStep::ContractTwin { remove, keep } => write!(f, "contract-twin {remove} {keep}"),
            ReductionStep::Define(g) => {
                let vars: Vec<String> = g.free_vars.iter().map(Var::to_string).collect();
                write!(f, "define {} ({}): {}", g.name, vars.join(","), render_formula(&g.body))
            }
            other => f.write_str(&other.name()),
        }
    }
}

impl Serialize for ReductionStep {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        match self {
            ReductionStep::Closure(k) => {
                m.serialize_entry("step", "closure")?;
                m.serialize_entry("kind", k)?;
            }
            ReductionStep::Complement => m.serialize_entry("step", "complement")?,
            ReductionStep::ContractTwin { remove, keep } => {
                m.serialize_entry("step", "contract-twin")?;
                m.serialize_entry("remove", remove)?;
                m.serialize_entry("keep", keep)?;
            }
            ReductionStep::Gadget(name) => {
                m.serialize_entry("step", "gadget")?;
                m.serialize_entry("name", name)?;
            }
            ReductionStep::Define(g) => {
                m.serialize_entry("step", "define")?;
                m.serialize_entry("name", &g.name)?;
                let vars: Vec<String> = g.free_vars.iter().map(Var::to_string).collect();
                m.serialize_entry("free", &vars)?;
                m.serialize_entry("body", &render_formula(&g.body))?;
            }
        }
        m.end()
    }
}

/// Every intermediate structure of a chain, starting with `start`.
pub fn run_chain(start: &Structure, steps: &[ReductionStep]) -> Result<Vec<Structure>, ChainError> {
    let mut states = vec![start.clone()];
    for (i, step) in steps.iter().enumerate() {
        let next = step.apply_at(i, states.last().expect("non-empty"))?;
        states.push(next);
    }
    Ok(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::named_digraph;

    #[test]
    fn h5_chain_reaches_k2bar() {
        let h5 = named_digraph("H5").to_structure();
        let steps = [
            ReductionStep::Closure(ClosureKind::Tran),
            ReductionStep::Closure(ClosureKind::Doub),
            ReductionStep::ContractTwin { remove: 1, keep: 2 },
        ];
        let states = run_chain(&h5, &steps).unwrap();
        let last = Digraph::from_structure(states.last().unwrap()).unwrap();
        assert!(last.is_isomorphic(&named_digraph("K2bar")));
    }

    #[test]
    fn errors_name_the_step() {
        let k3 = named_digraph("K3").to_structure();
        let err = run_chain(
            &k3,
            &[
                ReductionStep::Complement,
                ReductionStep::ContractTwin { remove: 0, keep: 0 },
            ],
        );
        assert!(matches!(err, Err(ChainError::Digraph { step: 1, .. })));
        let display = ReductionStep::ContractTwin { remove: 1, keep: 2 }.to_string();
        assert_eq!(display, "contract-twin 1 2");
    }
}
