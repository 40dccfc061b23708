//! Gadgets that define K2 or its complement over a boolean structure with
//! no canon, chosen by which constant tuples the structure contains.

use serde::Serialize;
use thiserror::Error;

use crate::classify::{
    dominates_boolean, has_constant_tuple, normalize_boolean, BooleanDominationWitness, ClassifyError,
};
use crate::logic::{Atom, Formula, Term, Var};
use crate::structure::Structure;

use super::gadget::{GadgetDefinition, GadgetError, GadgetProvenance};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BooleanGadgetError {
    #[error("structure has {0} elements, not 2")]
    NotBoolean(usize),
    #[error("every relation is empty or full")]
    Trivial,
    #[error("{hi} dominates {lo}, so there is a canon and no gadget is needed")]
    Dominated { lo: u32, hi: u32 },
    #[error(transparent)]
    Gadget(#[from] GadgetError),
}

impl From<ClassifyError> for BooleanGadgetError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::NotBoolean(n) => BooleanGadgetError::NotBoolean(n),
            other => unreachable!("domination only fails on size: {other}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BooleanGadgetCase {
    /// Neither constant tuple lies in every relation; defines K2.
    NoConstantTuples,
    /// Both constant tuples lie in every relation; defines K2bar.
    BothConstantTuples,
    /// Only the all-ones tuple does; defines K2bar.
    OnlyAllOnes,
    /// Only the all-zeros tuple does; defines K2bar.
    OnlyAllZeros,
}

impl BooleanGadgetCase {
    pub fn name(self) -> &'static str {
        match self {
            BooleanGadgetCase::NoConstantTuples => "no-constant-tuples",
            BooleanGadgetCase::BothConstantTuples => "both-constant-tuples",
            BooleanGadgetCase::OnlyAllOnes => "only-all-ones",
            BooleanGadgetCase::OnlyAllZeros => "only-all-zeros",
        }
    }

    /// Catalog name of the digraph the gadget defines.
    pub fn target(self) -> &'static str {
        match self {
            BooleanGadgetCase::NoConstantTuples => "K2",
            _ => "K2bar",
        }
    }

    pub fn of(b: &Structure) -> Self {
        match (has_constant_tuple(b, 0), has_constant_tuple(b, 1)) {
            (false, false) => BooleanGadgetCase::NoConstantTuples,
            (true, true) => BooleanGadgetCase::BothConstantTuples,
            (false, true) => BooleanGadgetCase::OnlyAllOnes,
            (true, false) => BooleanGadgetCase::OnlyAllZeros,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BooleanGadget {
    pub case: BooleanGadgetCase,
    pub gadget: GadgetDefinition,
    /// The domination counterexample the construction starts from, in the
    /// cases that use one.
    pub violation: Option<BooleanDominationWitness>,
}

fn atom(relation: &str, vars: &[&str]) -> Formula {
    Formula::Atom(Atom {
        relation: relation.to_string(),
        args: vars.iter().map(|v| Term::var(v)).collect(),
    })
}

/// `R(w̄)` with each position holding `on0` where `t` has 0 and `on1`
/// where it has 1.
fn pattern(relation: &str, t: &[u32], on0: &str, on1: &str) -> Formula {
    let vars: Vec<&str> = t.iter().map(|&x| if x == 0 { on0 } else { on1 }).collect();
    atom(relation, &vars)
}

fn swap_uv(f: &Formula) -> Formula {
    let subst = [(Var::new("u"), Term::var("v")), (Var::new("v"), Term::var("u"))]
        .into_iter()
        .collect();
    crate::logic::substitute_terms(f, &subst)
}

/// Builds the gadget for a boolean structure without a canon. Empty and full
/// relations are ignored; the gadget is stated over the full signature.
pub fn boolean_gadget(b: &Structure) -> Result<BooleanGadget, BooleanGadgetError> {
    if !b.is_boolean() {
        return Err(BooleanGadgetError::NotBoolean(b.size()));
    }
    let (n, _) = normalize_boolean(b);
    if n.signature().is_empty() {
        return Err(BooleanGadgetError::Trivial);
    }
    for (lo, hi) in [(0, 1), (1, 0)] {
        if dominates_boolean(&n, lo, hi)?.is_none() {
            return Err(BooleanGadgetError::Dominated { lo, hi });
        }
    }
    let rels: Vec<(String, usize)> = n
        .signature()
        .relations()
        .iter()
        .map(|r| (r.name.clone(), r.arity))
        .collect();
    let case = BooleanGadgetCase::of(&n);
    let mut violation = None;
    let (body, free) = match case {
        BooleanGadgetCase::NoConstantTuples => {
            let r_uv = Formula::And(
                rels.iter()
                    .enumerate()
                    .map(|(i, (name, _))| {
                        let t = n.table(i).iter().next().expect("normalized relations are non-empty");
                        pattern(name, t, "u", "v")
                    })
                    .collect(),
            );
            (Formula::Or(vec![r_uv.clone(), swap_uv(&r_uv)]), vec!["u", "v"])
        }
        BooleanGadgetCase::BothConstantTuples => {
            let (name, arity) = &rels[0];
            let missing = (0..1u64 << arity)
                .map(|m| {
                    (0..*arity)
                        .map(|i| (m >> (arity - 1 - i) & 1) as u32)
                        .collect::<Vec<_>>()
                })
                .find(|t| !n.contains(0, t))
                .expect("normalized relations are not full");
            let mut conj = vec![pattern(name, &missing, "u", "v")];
            for (name, arity) in &rels[1..] {
                conj.push(pattern(name, &vec![0; *arity], "u", "v"));
            }
            let r_uv = Formula::And(conj);
            (Formula::And(vec![r_uv.clone(), swap_uv(&r_uv)]), vec!["u", "v"])
        }
        BooleanGadgetCase::OnlyAllOnes | BooleanGadgetCase::OnlyAllZeros => {
            let c = u32::from(case == BooleanGadgetCase::OnlyAllOnes);
            let d = 1 - c;
            let w = dominates_boolean(&n, d, c)?.expect("no domination in either direction");
            let k = n.signature().index_of(&w.relation).expect("witness relation exists");
            // Flipped positions go to u, the other d-positions to v and the
            // c-positions to z, which the constant conjuncts pin to c.
            let vars: Vec<&str> = (0..w.tuple.len())
                .map(|i| {
                    if w.flipped.contains(&i) {
                        "u"
                    } else if w.tuple[i] == d {
                        "v"
                    } else {
                        "z"
                    }
                })
                .collect();
            let mut conj: Vec<Formula> = rels
                .iter()
                .map(|(name, arity)| atom(name, &vec!["z"; *arity]))
                .collect();
            conj.push(atom(&rels[k].0, &vars));
            let r2 = Formula::exists("z", Formula::And(conj));
            violation = Some(w);
            (Formula::And(vec![r2.clone(), swap_uv(&r2)]), vec!["u", "v"])
        }
    };
    let name = format!("{}-defines-{}", case.name(), case.target());
    let mut gadget = GadgetDefinition::new(
        &name,
        b.signature().clone(),
        free.into_iter().map(Var::new).collect(),
        body,
    )?;
    gadget.expected = Some(case.target().to_string());
    gadget.provenance = GadgetProvenance::Constructed;
    Ok(BooleanGadget {
        case,
        gadget,
        violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::interpret_gadget;
    use crate::structure::{catalog, named_digraph};

    #[test]
    fn b2_gadget() {
        let b2 = catalog("B2").unwrap().structure;
        let g = boolean_gadget(&b2).unwrap();
        assert_eq!(g.case, BooleanGadgetCase::OnlyAllZeros);
        assert_eq!(
            g.gadget.body.to_string(),
            "(exists z. R(z,z,z) & R(z,u,v)) & (exists z. R(z,z,z) & R(z,v,u))"
        );
        assert_eq!(interpret_gadget(&b2, &g.gadget).unwrap(), named_digraph("K2bar"));
    }

    #[test]
    fn nae_gadget() {
        let nae = catalog("B_NAE").unwrap().structure;
        let g = boolean_gadget(&nae).unwrap();
        assert_eq!(g.case, BooleanGadgetCase::NoConstantTuples);
        assert_eq!(interpret_gadget(&nae, &g.gadget).unwrap(), named_digraph("K2"));
    }

    #[test]
    fn refuses_structures_with_canons() {
        let b1 = catalog("B1").unwrap().structure;
        assert!(matches!(boolean_gadget(&b1), Err(BooleanGadgetError::Dominated { .. })));
    }
}
