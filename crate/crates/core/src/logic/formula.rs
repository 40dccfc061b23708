use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::signature::Signature;

/// A variable identifier. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

impl From<String> for Var {
    fn from(s: String) -> Self {
        Var(Arc::from(s))
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Var {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Var {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d).map(Var::from)
    }
}

/// Argument of an atom. Element constants only arise from instantiation;
/// the parser never produces them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    Elem(u32),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(Var::new(name))
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Term::Var(v) => Some(v),
            Term::Elem(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub relation: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(relation: &str, vars: &[&str]) -> Self {
        Atom {
            relation: relation.to_string(),
            args: vars.iter().map(|v| Term::var(v)).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    pub fn dual(self) -> Self {
        match self {
            Quantifier::Exists => Quantifier::Forall,
            Quantifier::Forall => Quantifier::Exists,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::Exists => "exists",
            Quantifier::Forall => "forall",
        }
    }
}

/// Equality-free first-order formula. `And`/`Or` are n-ary.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Atom),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
    True,
    False,
}

impl Formula {
    pub fn atom(relation: &str, vars: &[&str]) -> Self {
        Formula::Atom(Atom::new(relation, vars))
    }

    pub fn exists(v: &str, body: Formula) -> Self {
        Formula::Exists(Var::new(v), Box::new(body))
    }

    pub fn forall(v: &str, body: Formula) -> Self {
        Formula::Forall(Var::new(v), Box::new(body))
    }

    pub fn quantified(q: Quantifier, v: Var, body: Formula) -> Self {
        match q {
            Quantifier::Exists => Formula::Exists(v, Box::new(body)),
            Quantifier::Forall => Formula::Forall(v, Box::new(body)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Atom(a) => {
                for t in &a.args {
                    if let Term::Var(v) = t {
                        if !bound.contains(v) {
                            out.insert(v.clone());
                        }
                    }
                }
            }
            Formula::And(cs) | Formula::Or(cs) => {
                for c in cs {
                    c.collect_free(bound, out);
                }
            }
            Formula::Not(c) => c.collect_free(bound, out),
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                bound.push(v.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            Formula::True | Formula::False => {}
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => true,
            Formula::And(cs) | Formula::Or(cs) => cs.iter().all(Formula::is_quantifier_free),
            Formula::Not(c) => c.is_quantifier_free(),
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    pub fn contains_negation(&self) -> bool {
        match self {
            Formula::Not(_) => true,
            Formula::And(cs) | Formula::Or(cs) => cs.iter().any(Formula::contains_negation),
            Formula::Exists(_, b) | Formula::Forall(_, b) => b.contains_negation(),
            _ => false,
        }
    }

    /// Names of all variables occurring anywhere (bound, free, or as binders).
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Atom(a) => out.extend(a.args.iter().filter_map(|t| t.as_var().cloned())),
            Formula::Exists(v, _) | Formula::Forall(v, _) => {
                out.insert(v.clone());
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::And(cs) | Formula::Or(cs) => cs.iter().for_each(|c| c.visit(f)),
            Formula::Not(c) | Formula::Exists(_, c) | Formula::Forall(_, c) => c.visit(f),
            _ => {}
        }
    }

    pub fn quantifier_count(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |f| {
            if matches!(f, Formula::Exists(..) | Formula::Forall(..)) {
                n += 1;
            }
        });
        n
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    pub fn check_signature(&self, sig: &Signature) -> Result<(), FormulaError> {
        let mut err = None;
        self.visit(&mut |f| {
            if err.is_some() {
                return;
            }
            if let Formula::Atom(a) = f {
                match sig.arity(&a.relation) {
                    None => err = Some(FormulaError::UnknownRelation(a.relation.clone())),
                    Some(k) if k != a.args.len() => {
                        err = Some(FormulaError::ArityMismatch {
                            relation: a.relation.clone(),
                            expected: k,
                            found: a.args.len(),
                        })
                    }
                    _ => {}
                }
            }
        });
        err.map_or(Ok(()), Err)
    }

    pub fn check_fragment(&self, frag: &Fragment) -> Result<(), FormulaError> {
        let mut err = None;
        self.visit(&mut |f| {
            if err.is_some() {
                return;
            }
            let bad = match f {
                Formula::Not(_) if !frag.allow_negation => Some("~"),
                Formula::Forall(..) if !frag.allow_universal => Some("forall"),
                Formula::Or(_) if !frag.allow_disjunction => Some("|"),
                _ => None,
            };
            if let Some(c) = bad {
                err = Some(FormulaError::OutsideFragment(c.to_string()));
            }
        });
        err.map_or(Ok(()), Err)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("arity mismatch for `{relation}`: expected {expected}, found {found}")]
    ArityMismatch {
        relation: String,
        expected: usize,
        found: usize,
    },
    #[error("connective outside fragment: `{0}`")]
    OutsideFragment(String),
}

/// Which connectives a formula may use. Conjunction and existential
/// quantification are always available; equality never is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fragment {
    pub allow_negation: bool,
    pub allow_universal: bool,
    pub allow_disjunction: bool,
}

impl Fragment {
    /// {∃,∀,∧,∨}
    pub const POSITIVE: Fragment = Fragment {
        allow_negation: false,
        allow_universal: true,
        allow_disjunction: true,
    };
    /// {¬,∃,∀,∧,∨}
    pub const EQUALITY_FREE: Fragment = Fragment {
        allow_negation: true,
        allow_universal: true,
        allow_disjunction: true,
    };
    /// {∃,∀,∧}
    pub const CONJUNCTIVE: Fragment = Fragment {
        allow_negation: false,
        allow_universal: true,
        allow_disjunction: false,
    };
    /// {∃,∧,∨}
    pub const EXISTENTIAL: Fragment = Fragment {
        allow_negation: false,
        allow_universal: false,
        allow_disjunction: true,
    };

    pub fn by_name(name: &str) -> Option<Fragment> {
        match name {
            "positive" => Some(Self::POSITIVE),
            "full" | "equality-free" => Some(Self::EQUALITY_FREE),
            "conjunctive" | "qcsp" => Some(Self::CONJUNCTIVE),
            "existential" => Some(Self::EXISTENTIAL),
            _ => None,
        }
    }
}

impl Default for Fragment {
    fn default() -> Self {
        Fragment::POSITIVE
    }
}

/// A sentence in prenex form: every matrix variable is bound exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrenexSentence {
    pub prefix: Vec<(Quantifier, Var)>,
    pub matrix: Formula,
}

impl PrenexSentence {
    pub fn to_formula(&self) -> Formula {
        self.prefix.iter().rev().fold(self.matrix.clone(), |body, (q, v)| {
            Formula::quantified(*q, v.clone(), body)
        })
    }

    /// Reads a formula that is already in prenex shape (leading quantifiers,
    /// quantifier-free rest) without renaming anything.
    pub fn from_prenex_formula(f: &Formula) -> Option<Self> {
        let mut prefix = Vec::new();
        let mut cur = f;
        loop {
            match cur {
                Formula::Exists(v, b) => {
                    prefix.push((Quantifier::Exists, v.clone()));
                    cur = b;
                }
                Formula::Forall(v, b) => {
                    prefix.push((Quantifier::Forall, v.clone()));
                    cur = b;
                }
                _ => break,
            }
        }
        if !cur.is_quantifier_free() {
            return None;
        }
        Some(PrenexSentence {
            prefix,
            matrix: cur.clone(),
        })
    }
}

impl fmt::Display for PrenexSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_formula().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_vars_respect_binders() {
        let f = Formula::forall(
            "x",
            Formula::Or(vec![
                Formula::atom("E", &["x", "y"]),
                Formula::exists("y", Formula::atom("E", &["y", "z"])),
            ]),
        );
        let fv: Vec<_> = f.free_vars().into_iter().map(|v| v.to_string()).collect();
        assert_eq!(fv, vec!["y", "z"]);
        assert!(!f.is_sentence());
    }

    #[test]
    fn fragment_gate() {
        let f = Formula::not(Formula::atom("E", &["x", "y"]));
        assert_eq!(
            f.check_fragment(&Fragment::POSITIVE),
            Err(FormulaError::OutsideFragment("~".into()))
        );
        assert!(f.check_fragment(&Fragment::EQUALITY_FREE).is_ok());
        let g = Formula::forall("x", Formula::atom("E", &["x", "x"]));
        assert!(g.check_fragment(&Fragment::EXISTENTIAL).is_err());
    }

    #[test]
    fn prenex_round_trip_to_formula() {
        let f = Formula::forall("x", Formula::exists("y", Formula::atom("E", &["x", "y"])));
        let p = PrenexSentence::from_prenex_formula(&f).unwrap();
        assert_eq!(p.prefix.len(), 2);
        assert_eq!(p.to_formula(), f);
    }
}
