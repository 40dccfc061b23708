//! Purely syntactic rewrites: dualization, instantiation, atom substitution.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::formula::{Formula, PrenexSentence, Quantifier, Term, Var};

/// Swaps ∃/∀, ∧/∨ and true/false. With `negate_atoms`, every atom is also
/// wrapped in a negation. Atoms are otherwise untouched.
pub fn dualize(f: &Formula, negate_atoms: bool) -> Formula {
    match f {
        Formula::Atom(_) if negate_atoms => Formula::Not(Box::new(f.clone())),
        Formula::Atom(_) => f.clone(),
        Formula::And(cs) => Formula::Or(cs.iter().map(|c| dualize(c, negate_atoms)).collect()),
        Formula::Or(cs) => Formula::And(cs.iter().map(|c| dualize(c, negate_atoms)).collect()),
        Formula::Not(c) => Formula::Not(Box::new(dualize(c, negate_atoms))),
        Formula::Exists(v, b) => Formula::Forall(v.clone(), Box::new(dualize(b, negate_atoms))),
        Formula::Forall(v, b) => Formula::Exists(v.clone(), Box::new(dualize(b, negate_atoms))),
        Formula::True => Formula::False,
        Formula::False => Formula::True,
    }
}

pub fn eliminate_double_negation(f: &Formula) -> Formula {
    match f {
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Not(g) => eliminate_double_negation(g),
            _ => Formula::Not(Box::new(eliminate_double_negation(inner))),
        },
        Formula::And(cs) => Formula::And(cs.iter().map(eliminate_double_negation).collect()),
        Formula::Or(cs) => Formula::Or(cs.iter().map(eliminate_double_negation).collect()),
        Formula::Exists(v, b) => Formula::Exists(v.clone(), Box::new(eliminate_double_negation(b))),
        Formula::Forall(v, b) => Formula::Forall(v.clone(), Box::new(eliminate_double_negation(b))),
        _ => f.clone(),
    }
}

/// Replaces every universally (resp. existentially) quantified variable by
/// the given element and drops its quantifier. Quantifiers of a kind with no
/// value supplied are kept, in prefix order.
pub fn instantiate(p: &PrenexSentence, universal_value: Option<u32>, existential_value: Option<u32>) -> Formula {
    let mut subst = BTreeMap::new();
    let mut kept = Vec::new();
    for (q, v) in &p.prefix {
        let value = match q {
            Quantifier::Forall => universal_value,
            Quantifier::Exists => existential_value,
        };
        match value {
            Some(e) => {
                subst.insert(v.clone(), Term::Elem(e));
            }
            None => kept.push((*q, v.clone())),
        }
    }
    let matrix = substitute_terms(&p.matrix, &subst);
    kept.into_iter()
        .rev()
        .fold(matrix, |body, (q, v)| Formula::quantified(q, v, body))
}

/// Capture-free substitution of terms for free variables.
pub fn substitute_terms(f: &Formula, subst: &BTreeMap<Var, Term>) -> Formula {
    match f {
        Formula::Atom(a) => {
            let mut a = a.clone();
            for t in &mut a.args {
                if let Term::Var(v) = t {
                    if let Some(r) = subst.get(v) {
                        *t = r.clone();
                    }
                }
            }
            Formula::Atom(a)
        }
        Formula::And(cs) => Formula::And(cs.iter().map(|c| substitute_terms(c, subst)).collect()),
        Formula::Or(cs) => Formula::Or(cs.iter().map(|c| substitute_terms(c, subst)).collect()),
        Formula::Not(c) => Formula::Not(Box::new(substitute_terms(c, subst))),
        Formula::Exists(v, b) | Formula::Forall(v, b) => {
            let body = if subst.contains_key(v) {
                let mut inner = subst.clone();
                inner.remove(v);
                substitute_terms(b, &inner)
            } else {
                substitute_terms(b, subst)
            };
            let q = if matches!(f, Formula::Exists(..)) {
                Quantifier::Exists
            } else {
                Quantifier::Forall
            };
            Formula::quantified(q, v.clone(), body)
        }
        Formula::True | Formula::False => f.clone(),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubstituteError {
    #[error("relation `{relation}` has arity {arity} but the replacement has {params} parameters")]
    ArityMismatch {
        relation: String,
        arity: usize,
        params: usize,
    },
    #[error("replacement body has free variable `{0}` that is not a parameter")]
    StrayFreeVariable(String),
}

/// Replaces every atom over `target` by `body` with `params` bound to the
/// atom's arguments. Binders inside `body` are renamed freshly for every
/// occurrence, so distinct instantiations never share bound variables.
pub fn substitute_atom(f: &Formula, target: &str, params: &[Var], body: &Formula) -> Result<Formula, SubstituteError> {
    let param_set: BTreeSet<_> = params.iter().cloned().collect();
    if let Some(v) = body.free_vars().difference(&param_set).next() {
        return Err(SubstituteError::StrayFreeVariable(v.to_string()));
    }
    let mut ctx = SubstCtx {
        target,
        params,
        body,
        used: f.all_vars().union(&body.all_vars()).cloned().collect(),
        counter: 0,
    };
    ctx.go(f)
}

struct SubstCtx<'a> {
    target: &'a str,
    params: &'a [Var],
    body: &'a Formula,
    used: BTreeSet<Var>,
    counter: usize,
}

impl SubstCtx<'_> {
    fn go(&mut self, f: &Formula) -> Result<Formula, SubstituteError> {
        Ok(match f {
            Formula::Atom(a) if a.relation == self.target => {
                if a.args.len() != self.params.len() {
                    return Err(SubstituteError::ArityMismatch {
                        relation: a.relation.clone(),
                        arity: a.args.len(),
                        params: self.params.len(),
                    });
                }
                let fresh = self.freshen(self.body, &mut BTreeMap::new());
                let subst: BTreeMap<_, _> = self.params.iter().cloned().zip(a.args.iter().cloned()).collect();
                substitute_terms(&fresh, &subst)
            }
            Formula::Atom(_) | Formula::True | Formula::False => f.clone(),
            Formula::And(cs) => Formula::And(cs.iter().map(|c| self.go(c)).collect::<Result<_, _>>()?),
            Formula::Or(cs) => Formula::Or(cs.iter().map(|c| self.go(c)).collect::<Result<_, _>>()?),
            Formula::Not(c) => Formula::Not(Box::new(self.go(c)?)),
            Formula::Exists(v, b) => Formula::Exists(v.clone(), Box::new(self.go(b)?)),
            Formula::Forall(v, b) => Formula::Forall(v.clone(), Box::new(self.go(b)?)),
        })
    }

    fn fresh_name(&mut self, base: &Var) -> Var {
        let stem = base.as_str().trim_end_matches('\'').replace('\'', "_");
        loop {
            self.counter += 1;
            let cand = Var::from(format!("{stem}_{}", self.counter));
            if self.used.insert(cand.clone()) {
                return cand;
            }
        }
    }

    /// Renames every binder of the body to a globally fresh name.
    fn freshen(&mut self, f: &Formula, scope: &mut BTreeMap<Var, Var>) -> Formula {
        match f {
            Formula::Atom(a) => {
                let mut a = a.clone();
                for t in &mut a.args {
                    if let Term::Var(v) = t {
                        if let Some(n) = scope.get(v) {
                            *v = n.clone();
                        }
                    }
                }
                Formula::Atom(a)
            }
            Formula::And(cs) => Formula::And(cs.iter().map(|c| self.freshen(c, scope)).collect()),
            Formula::Or(cs) => Formula::Or(cs.iter().map(|c| self.freshen(c, scope)).collect()),
            Formula::Not(c) => Formula::Not(Box::new(self.freshen(c, scope))),
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                let new = self.fresh_name(v);
                let prev = scope.insert(v.clone(), new.clone());
                let body = self.freshen(b, scope);
                match prev {
                    Some(p) => scope.insert(v.clone(), p),
                    None => scope.remove(v),
                };
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
