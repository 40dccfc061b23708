//! Sentence-level reductions: each rule turns a sentence for one structure
//! into a sentence for another, preserving truth as stated per rule.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::logic::{dualize, substitute_atom, Formula, SubstituteError, Var};
use crate::structure::ClosureKind;

use super::catalog::gadget;
use super::gadget::{GadgetDefinition, GadgetError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error(
        "unknown rule `{0}`; expected dual, symclos, doub, tranclos:N, tranclos-printed:N, nae-to-k2 or gadget:NAME"
    )]
    UnknownRule(String),
    #[error("rule `{0}` needs a path bound of at least 1")]
    BadBound(String),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Substitute(#[from] SubstituteError),
    #[error("gadget `{0}` names no target structure")]
    NoTarget(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RewriteRule {
    /// `H ⊨ φ` iff the complement of `H` does not satisfy the result.
    Dual,
    /// `symclos(H) ⊨ φ` iff `H` satisfies the result.
    SymClos,
    /// `doub(H) ⊨ φ` iff `H` satisfies the result.
    Doub,
    /// `tranclos(H) ⊨ φ` iff `H` satisfies the result, for `|H| ≤ n`.
    /// Each edge becomes a directed path of length at most `n`.
    TranClos(usize),
    /// Paths of length at most `n - 1`. Misses closures created by cycles
    /// through all `n` vertices.
    TranClosPrinted(usize),
    /// Sentences over `NAE` to sentences over `E`, read on `K2`.
    NaeToK2,
    /// Replaces the target relation by a catalog gadget body.
    Gadget(String),
}

impl RewriteRule {
    pub fn closure(kind: ClosureKind, n: usize) -> Self {
        match kind {
            ClosureKind::Sym => RewriteRule::SymClos,
            ClosureKind::Doub => RewriteRule::Doub,
            ClosureKind::Tran => RewriteRule::TranClos(n),
        }
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RewriteRule::Dual => f.write_str("dual"),
            RewriteRule::SymClos => f.write_str("symclos"),
            RewriteRule::Doub => f.write_str("doub"),
            RewriteRule::TranClos(n) => write!(f, "tranclos:{n}"),
            RewriteRule::TranClosPrinted(n) => write!(f, "tranclos-printed:{n}"),
            RewriteRule::NaeToK2 => f.write_str("nae-to-k2"),
            RewriteRule::Gadget(g) => write!(f, "gadget:{g}"),
        }
    }
}

impl Serialize for RewriteRule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for RewriteRule {
    type Err = RewriteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bound = |arg: &str| {
            arg.parse::<usize>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| RewriteError::BadBound(s.to_string()))
        };
        match s.split_once(':') {
            None => match s {
                "dual" => Ok(RewriteRule::Dual),
                "symclos" | "sym" => Ok(RewriteRule::SymClos),
                "doub" => Ok(RewriteRule::Doub),
                "tranclos" | "tran" => Ok(RewriteRule::TranClos(3)),
                "tranclos-printed" => Ok(RewriteRule::TranClosPrinted(3)),
                "nae-to-k2" | "nae" => Ok(RewriteRule::NaeToK2),
                _ => Err(RewriteError::UnknownRule(s.to_string())),
            },
            Some(("tranclos" | "tran", n)) => Ok(RewriteRule::TranClos(bound(n)?)),
            Some(("tranclos-printed", n)) => Ok(RewriteRule::TranClosPrinted(bound(n)?)),
            Some(("gadget", name)) => {
                gadget(name)?;
                Ok(RewriteRule::Gadget(name.to_string()))
            }
            _ => Err(RewriteError::UnknownRule(s.to_string())),
        }
    }
}

fn uv() -> [Var; 2] {
    [Var::new("u"), Var::new("v")]
}

fn e(a: &str, b: &str) -> Formula {
    Formula::atom("E", &[a, b])
}

/// `E(u,v)` or a directed path from `u` to `v` of length at most `max_len`,
/// nested so that each step adds one auxiliary variable.
fn path_formula(max_len: usize) -> Formula {
    fn from(cur: &str, step: usize, max_len: usize) -> Formula {
        if step == max_len {
            return e(cur, "v");
        }
        let w = format!("w{step}");
        Formula::Or(vec![
            e(cur, "v"),
            Formula::exists(&w, Formula::And(vec![e(cur, &w), from(&w, step + 1, max_len)])),
        ])
    }
    from("u", 1, max_len.max(1))
}

/// The body substituted for each `E(u,v)` atom by the rule, if it is an
/// atom substitution.
pub fn rule_body(rule: &RewriteRule) -> Result<Option<(String, Vec<Var>, Formula)>, RewriteError> {
    let body = match rule {
        RewriteRule::Dual => return Ok(None),
        RewriteRule::SymClos => Formula::Or(vec![e("u", "v"), e("v", "u")]),
        RewriteRule::Doub => Formula::And(vec![e("u", "v"), e("v", "u")]),
        RewriteRule::TranClos(n) => path_formula(*n),
        RewriteRule::TranClosPrinted(n) => path_formula(n.saturating_sub(1)),
        RewriteRule::NaeToK2 => return rule_body(&RewriteRule::Gadget("NAE-to-K2".into())),
        RewriteRule::Gadget(name) => {
            let g = gadget(name)?.gadget;
            return Ok(Some(gadget_substitution(&g)?));
        }
    };
    Ok(Some(("E".to_string(), uv().to_vec(), body)))
}

/// Target relation, parameters and body for rewriting by a gadget whose
/// `expected` names a single-relation catalog structure.
fn gadget_substitution(g: &GadgetDefinition) -> Result<(String, Vec<Var>, Formula), RewriteError> {
    let target = g
        .expected
        .as_deref()
        .and_then(|n| crate::structure::catalog(n).ok())
        .and_then(|e| e.structure.signature().relations().first().map(|r| r.name.clone()))
        .ok_or_else(|| RewriteError::NoTarget(g.name.clone()))?;
    Ok((target, g.free_vars.clone(), g.body.clone()))
}

/// Rewrites a sentence by a gadget: every atom over `target` becomes the
/// gadget body, so the result holds in the host iff `φ` holds in the
/// structure the gadget defines.
pub fn reduce_by_gadget(phi: &Formula, target: &str, g: &GadgetDefinition) -> Result<Formula, RewriteError> {
    Ok(substitute_atom(phi, target, &g.free_vars, &g.body)?)
}

pub fn reduce_sentence(rule: &RewriteRule, phi: &Formula) -> Result<Formula, RewriteError> {
    match rule_body(rule)? {
        None => Ok(dualize(phi, false)),
        Some((target, params, body)) => Ok(substitute_atom(phi, &target, &params, &body)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::evaluate;
    use crate::logic::{parse_formula, Fragment, Signature};
    use crate::structure::{named_digraph, Digraph};

    fn dg(text: &str) -> Formula {
        parse_formula(text, &Signature::digraph(), Fragment::EQUALITY_FREE).unwrap()
    }

    #[test]
    fn parse_and_display() {
        for s in [
            "dual",
            "symclos",
            "doub",
            "tranclos:3",
            "tranclos-printed:3",
            "nae-to-k2",
            "gadget:H8bar-defines-K1K2",
        ] {
            assert_eq!(s.parse::<RewriteRule>().unwrap().to_string(), s);
        }
        assert!(matches!(
            "tranclos:0".parse::<RewriteRule>(),
            Err(RewriteError::BadBound(_))
        ));
        assert!(matches!(
            "flip".parse::<RewriteRule>(),
            Err(RewriteError::UnknownRule(_))
        ));
        assert!("gadget:nope".parse::<RewriteRule>().is_err());
    }

    #[test]
    fn symclos_rendering() {
        let f = reduce_sentence(&RewriteRule::SymClos, &dg("exists x. E(x,x)")).unwrap();
        assert_eq!(f.to_string(), "exists x. E(x,x) | E(x,x)");
    }

    #[test]
    fn tranclos_auxiliary_variables() {
        let f = reduce_sentence(&RewriteRule::TranClos(3), &dg("forall x. exists y. E(x,y)")).unwrap();
        assert_eq!(f.quantifier_count(), 4);
        let p = reduce_sentence(&RewriteRule::TranClosPrinted(3), &dg("forall x. exists y. E(x,y)")).unwrap();
        assert_eq!(p.quantifier_count(), 3);
    }

    #[test]
    fn printed_tranclos_misses_hamiltonian_cycles() {
        let cycle = Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        let phi = dg("exists x. E(x,x)");
        let closed = cycle.tran_closure().to_structure();
        assert!(evaluate(&closed, &phi).unwrap());
        let full = reduce_sentence(&RewriteRule::TranClos(3), &phi).unwrap();
        assert!(evaluate(&cycle.to_structure(), &full).unwrap());
        let printed = reduce_sentence(&RewriteRule::TranClosPrinted(3), &phi).unwrap();
        assert!(!evaluate(&cycle.to_structure(), &printed).unwrap());
    }

    #[test]
    fn gadget_rewrite_preserves_truth() {
        let host = named_digraph("H8bar").to_structure();
        let target = named_digraph("K1+K2").to_structure();
        let rule: RewriteRule = "gadget:H8bar-defines-K1K2".parse().unwrap();
        for text in [
            "exists x. forall y. ~E(x,y)",
            "forall x. exists y. E(x,y)",
            "exists x. E(x,x)",
        ] {
            let phi = dg(text);
            let psi = reduce_sentence(&rule, &phi).unwrap();
            assert_eq!(
                evaluate(&target, &phi).unwrap(),
                evaluate(&host, &psi).unwrap(),
                "{text}"
            );
        }
    }
}
