use std::collections::BTreeSet;

use thiserror::Error;

use super::formula::{Formula, PrenexSentence, Quantifier, Term, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrenexError {
    #[error("formula has free variables: {0}")]
    FreeVariables(String),
    #[error("prenexing formulas that contain negation is not supported")]
    ContainsNegation,
}

/// Pulls quantifiers outward, left to right, renaming binders apart.
///
/// The result is equivalent to the input on every structure with a
/// non-empty universe.
pub fn to_prenex(f: &Formula) -> Result<PrenexSentence, PrenexError> {
    let free = f.free_vars();
    if !free.is_empty() {
        let names: Vec<_> = free.iter().map(Var::to_string).collect();
        return Err(PrenexError::FreeVariables(names.join(", ")));
    }
    if f.contains_negation() {
        return Err(PrenexError::ContainsNegation);
    }
    let mut renamer = Renamer {
        reserved: f.all_vars(),
        taken: BTreeSet::new(),
    };
    let renamed = renamer.rename(f, &mut Vec::new());
    let mut prefix = Vec::new();
    let matrix = pull(&renamed, &mut prefix);
    Ok(PrenexSentence { prefix, matrix })
}

struct Renamer {
    reserved: BTreeSet<Var>,
    taken: BTreeSet<Var>,
}

impl Renamer {
    fn fresh(&mut self, v: &Var) -> Var {
        if self.taken.insert(v.clone()) {
            return v.clone();
        }
        let mut name = v.to_string();
        loop {
            name.push('\'');
            let cand = Var::from(name.as_str());
            if !self.reserved.contains(&cand) && !self.taken.contains(&cand) {
                self.taken.insert(cand.clone());
                return cand;
            }
        }
    }

    fn rename(&mut self, f: &Formula, scope: &mut Vec<(Var, Var)>) -> Formula {
        match f {
            Formula::Atom(a) => {
                let mut a = a.clone();
                for t in &mut a.args {
                    if let Term::Var(v) = t {
                        if let Some((_, new)) = scope.iter().rev().find(|(old, _)| old == v) {
                            *v = new.clone();
                        }
                    }
                }
                Formula::Atom(a)
            }
            Formula::And(cs) => Formula::And(cs.iter().map(|c| self.rename(c, scope)).collect()),
            Formula::Or(cs) => Formula::Or(cs.iter().map(|c| self.rename(c, scope)).collect()),
            Formula::Not(c) => Formula::Not(Box::new(self.rename(c, scope))),
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                let new = self.fresh(v);
                scope.push((v.clone(), new.clone()));
                let body = self.rename(b, scope);
                scope.pop();
                let q = if matches!(f, Formula::Exists(..)) {
                    Quantifier::Exists
                } else {
                    Quantifier::Forall
                };
                Formula::quantified(q, new, body)
            }
            Formula::True | Formula::False => f.clone(),
        }
    }
}

fn pull(f: &Formula, prefix: &mut Vec<(Quantifier, Var)>) -> Formula {
    match f {
        Formula::Exists(v, b) => {
            prefix.push((Quantifier::Exists, v.clone()));
            pull(b, prefix)
        }
        Formula::Forall(v, b) => {
            prefix.push((Quantifier::Forall, v.clone()));
            pull(b, prefix)
        }
        Formula::And(cs) => Formula::And(cs.iter().map(|c| pull(c, prefix)).collect()),
        Formula::Or(cs) => Formula::Or(cs.iter().map(|c| pull(c, prefix)).collect()),
        Formula::Not(c) => Formula::Not(Box::new(pull(c, prefix))),
        _ => f.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_formula, Fragment, Signature};

    fn dg(text: &str) -> Formula {
        parse_formula(text, &Signature::digraph(), Fragment::POSITIVE).unwrap()
    }

    #[test]
    fn already_prenex_is_unchanged() {
        let f = dg("forall x. exists y. E(x,y) & E(y,x)");
        let p = to_prenex(&f).unwrap();
        assert_eq!(p.to_formula(), f);
    }

    #[test]
    fn renames_to_avoid_capture() {
        let f = dg("(exists x. E(x,x)) | (exists x. E(x,x))");
        let p = to_prenex(&f).unwrap();
        assert_eq!(p.to_string(), "exists x. exists x'. E(x,x) | E(x',x')");
    }

    #[test]
    fn renaming_skips_names_already_in_use() {
        let f = dg("(exists x. E(x,x)) & (exists x. E(x,x)) & (forall x'. E(x',x'))");
        let p = to_prenex(&f).unwrap();
        assert_eq!(
            p.to_string(),
            "exists x. exists x''. forall x'. E(x,x) & E(x'',x'') & E(x',x')"
        );
    }

    #[test]
    fn rejects_free_variables_and_negation() {
        assert!(matches!(to_prenex(&dg("E(x,y)")), Err(PrenexError::FreeVariables(_))));
        let neg = parse_formula("exists x. ~E(x,x)", &Signature::digraph(), Fragment::EQUALITY_FREE).unwrap();
        assert_eq!(to_prenex(&neg), Err(PrenexError::ContainsNegation));
    }
}
