//! Model checking of equality-free sentences on finite structures.

mod compiled;
mod naive;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::logic::{Formula, FormulaError, Var};
use crate::structure::Structure;

pub use compiled::{CompiledFormula, Model};
pub use naive::evaluate_naive;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("formula has free variables: {0}")]
    FreeVariables(String),
    #[error(transparent)]
    Signature(FormulaError),
    #[error("formula signature {formula} does not match structure signature {structure}")]
    SignatureMismatch { formula: String, structure: String },
    #[error("no value for variable `{0}`")]
    UncoveredVariable(String),
    #[error("element {0} is outside the universe")]
    ElementOutOfRange(u32),
    #[error("ground evaluation needs a quantifier-free formula")]
    NotQuantifierFree,
}

/// Values for some variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<Var, u32>);

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn with(mut self, v: &str, value: u32) -> Self {
        self.0.insert(Var::new(v), value);
        self
    }

    pub fn set(&mut self, v: Var, value: u32) {
        self.0.insert(v, value);
    }

    pub fn get(&self, v: &Var) -> Option<u32> {
        self.0.get(v).copied()
    }

    pub fn as_map(&self) -> &BTreeMap<Var, u32> {
        &self.0
    }
}

impl<'a> FromIterator<(&'a str, u32)> for Assignment {
    fn from_iter<T: IntoIterator<Item = (&'a str, u32)>>(iter: T) -> Self {
        Assignment(iter.into_iter().map(|(v, x)| (Var::new(v), x)).collect())
    }
}

/// Truth of sentence `f` in `s`.
pub fn evaluate(s: &Structure, f: &Formula) -> Result<bool, EvalError> {
    let c = CompiledFormula::compile(f, s.signature())?;
    Model::new(s).check(&c)
}

/// Truth of a quantifier-free formula under an assignment covering its
/// variables.
pub fn evaluate_ground(s: &Structure, f: &Formula, a: &Assignment) -> Result<bool, EvalError> {
    if !f.is_quantifier_free() {
        return Err(EvalError::NotQuantifierFree);
    }
    f.check_signature(s.signature()).map_err(EvalError::Signature)?;
    naive::naive(s, f, &mut a.0.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Agreement {
    /// Both sides give the same verdict.
    Same,
    /// The verdicts are always opposite.
    Opposite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub formula: Formula,
    pub translated: Formula,
    pub left: bool,
    pub right: bool,
}

/// The first sentence `φ` of the suite for which `s1 ⊨ φ` and
/// `s2 ⊨ translate(φ)` fail to relate as `expect` says.
pub fn agree_on_suite<'a, I>(
    s1: &Structure,
    s2: &Structure,
    suite: I,
    translate: Option<&dyn Fn(&Formula) -> Formula>,
    expect: Agreement,
) -> Result<Option<Disagreement>, EvalError>
where
    I: IntoIterator<Item = &'a Formula>,
{
    let (m1, m2) = (Model::new(s1), Model::new(s2));
    for f in suite {
        let g = translate.map_or_else(|| f.clone(), |t| t(f));
        let left = m1.check(&CompiledFormula::compile(f, s1.signature())?)?;
        let right = m2.check(&CompiledFormula::compile(&g, s2.signature())?)?;
        let ok = match expect {
            Agreement::Same => left == right,
            Agreement::Opposite => left != right,
        };
        if !ok {
            return Ok(Some(Disagreement {
                formula: f.clone(),
                translated: g,
                left,
                right,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_formula, Fragment, Signature};
    use crate::structure::named_digraph;

    fn dg(text: &str) -> Formula {
        parse_formula(text, &Signature::digraph(), Fragment::EQUALITY_FREE).unwrap()
    }

    #[test]
    fn small_verdicts() {
        let k2 = named_digraph("K2").to_structure();
        let k2bar = named_digraph("K2bar").to_structure();
        assert!(evaluate(&k2, &dg("forall x. exists y. E(x,y)")).unwrap());
        assert!(!evaluate(&k2, &dg("exists x. E(x,x)")).unwrap());
        assert!(evaluate(&k2bar, &dg("exists x. E(x,x)")).unwrap());
        assert!(evaluate(&k2, &dg("forall x. ~E(x,x)")).unwrap());
    }

    #[test]
    fn ground_evaluation_on_b1() {
        let b1 = crate::structure::catalog("B1").unwrap().structure;
        let sig = b1.signature().clone();
        let f = parse_formula("R(x,y,z)", &sig, Fragment::POSITIVE).unwrap();
        let a: Assignment = [("x", 0), ("y", 0), ("z", 1)].into_iter().collect();
        assert!(evaluate_ground(&b1, &f, &a).unwrap());
        let a: Assignment = [("x", 1), ("y", 1), ("z", 1)].into_iter().collect();
        assert!(!evaluate_ground(&b1, &f, &a).unwrap());
        assert!(evaluate_ground(&b1, &Formula::True, &Assignment::new()).unwrap());
        let a = Assignment::new().with("x", 0);
        assert_eq!(
            evaluate_ground(&b1, &f, &a),
            Err(EvalError::UncoveredVariable("y".into()))
        );
    }

    #[test]
    fn errors() {
        let k2 = named_digraph("K2").to_structure();
        assert!(matches!(evaluate(&k2, &dg("E(x,x)")), Err(EvalError::FreeVariables(_))));
        let bad = Formula::exists("x", Formula::atom("F", &["x"]));
        assert!(matches!(evaluate(&k2, &bad), Err(EvalError::Signature(_))));
        let c = CompiledFormula::compile(&bad, &Signature::new([("F", 1)]).unwrap()).unwrap();
        assert!(matches!(
            Model::new(&k2).check(&c),
            Err(EvalError::SignatureMismatch { .. })
        ));
    }

    #[test]
    fn shadowing_and_memo_agree_with_naive() {
        let g = named_digraph("DP3^010").to_structure();
        let fs = [
            "exists x. forall y. (E(x,y) | (exists x. E(y,x))) & (forall z. E(z,z) | E(x,z))",
            "forall x. forall y. exists z. E(x,z) & (exists w. E(w,w) & E(z,w))",
            "exists x. (forall y. ~E(y,x)) & (exists y. E(x,y) & (forall z. E(y,z) | E(z,z)))",
        ];
        for text in fs {
            let f = dg(text);
            assert_eq!(evaluate(&g, &f).unwrap(), evaluate_naive(&g, &f).unwrap(), "{text}");
        }
    }

    #[test]
    fn suite_agreement() {
        let k2 = named_digraph("K2").to_structure();
        let k2bar = named_digraph("K2bar").to_structure();
        let suite = [dg("forall x. exists y. E(x,y)"), dg("exists x. E(x,x)")];
        let d = agree_on_suite(&k2, &k2bar, &suite, None, Agreement::Same)
            .unwrap()
            .unwrap();
        assert_eq!(d.formula.to_string(), "exists x. E(x,x)");
        assert!(!d.left && d.right);
    }
}
