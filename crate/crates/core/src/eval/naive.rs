//! Direct Tarskian recursion over the formula tree, with no caching. Used as
//! the reference the compiled evaluator is tested against.

use std::collections::BTreeMap;

use crate::logic::{Formula, Term, Var};
use crate::structure::Structure;

use super::EvalError;

pub fn evaluate_naive(s: &Structure, f: &Formula) -> Result<bool, EvalError> {
    f.check_signature(s.signature()).map_err(EvalError::Signature)?;
    let free = f.free_vars();
    if !free.is_empty() {
        let names: Vec<_> = free.iter().map(Var::to_string).collect();
        return Err(EvalError::FreeVariables(names.join(", ")));
    }
    naive(s, f, &mut BTreeMap::new())
}

pub(super) fn naive(s: &Structure, f: &Formula, env: &mut BTreeMap<Var, u32>) -> Result<bool, EvalError> {
    Ok(match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(a) => {
            let mut t = Vec::with_capacity(a.args.len());
            for arg in &a.args {
                let v = match arg {
                    Term::Var(v) => *env.get(v).ok_or_else(|| EvalError::UncoveredVariable(v.to_string()))?,
                    Term::Elem(e) => *e,
                };
                if v as usize >= s.size() {
                    return Err(EvalError::ElementOutOfRange(v));
                }
                t.push(v);
            }
            let rel = s.signature().index_of(&a.relation).expect("signature checked");
            s.contains(rel, &t)
        }
        Formula::And(cs) => {
            for c in cs {
                if !naive(s, c, env)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Or(cs) => {
            for c in cs {
                if naive(s, c, env)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Not(c) => !naive(s, c, env)?,
        Formula::Exists(v, b) | Formula::Forall(v, b) => {
            let exists = matches!(f, Formula::Exists(..));
            let saved = env.get(v).copied();
            let mut result = !exists;
            for e in 0..s.size() as u32 {
                env.insert(v.clone(), e);
                if naive(s, b, env)? == exists {
                    result = exists;
                    break;
                }
            }
            match saved {
                Some(x) => env.insert(v.clone(), x),
                None => env.remove(v),
            };
            result
        }
    })
}
