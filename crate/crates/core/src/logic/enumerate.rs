//! Sentence suites: exhaustive enumeration of small prenex sentences and
//! seeded random generators.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::formula::{Atom, Formula, Fragment, PrenexSentence, Quantifier, Term, Var};
use super::signature::Signature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SuiteMode {
    Exhaustive,
    Seeded { seed: u64, count: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub max_quantifiers: usize,
    pub max_atoms: usize,
    pub mode: SuiteMode,
    /// Allow negated atoms as matrix literals.
    pub negated_atoms: bool,
}

impl SuiteConfig {
    pub fn exhaustive(max_quantifiers: usize, max_atoms: usize) -> Self {
        SuiteConfig {
            max_quantifiers,
            max_atoms,
            mode: SuiteMode::Exhaustive,
            negated_atoms: false,
        }
    }

    pub fn seeded(max_quantifiers: usize, max_atoms: usize, seed: u64, count: usize) -> Self {
        SuiteConfig {
            max_quantifiers,
            max_atoms,
            mode: SuiteMode::Seeded { seed, count },
            negated_atoms: false,
        }
    }

    pub fn with_negation(mut self) -> Self {
        self.negated_atoms = true;
        self
    }
}

/// Name of the i-th prefix variable (0-based).
pub fn suite_var(i: usize) -> Var {
    Var::from(format!("x{}", i + 1))
}

/// Emits prenex sentences whose matrix is a disjunction of conjunctions of
/// at most `max_atoms` literals in total.
///
/// Exhaustive mode names the prefix variables `x1..xq` in order and emits each
/// sentence once: clauses are sorted sets of literals, the disjunction is a
/// sorted set of clauses, and every prefix variable occurs in the matrix.
/// Seeded mode draws `count` distinct sentences (fewer if the space runs dry).
pub fn enumerate_sentences(sig: &Signature, cfg: &SuiteConfig) -> Vec<PrenexSentence> {
    match cfg.mode {
        SuiteMode::Exhaustive => exhaustive(sig, cfg),
        SuiteMode::Seeded { seed, count } => seeded(sig, cfg, seed, count),
    }
}

#[derive(Clone)]
struct Literal {
    atom: Atom,
    negated: bool,
    vars_mask: u64,
}

impl Literal {
    fn to_formula(&self) -> Formula {
        let a = Formula::Atom(self.atom.clone());
        if self.negated {
            Formula::not(a)
        } else {
            a
        }
    }
}

fn literals(sig: &Signature, q: usize, negated: bool) -> Vec<Literal> {
    let vars: Vec<Var> = (0..q).map(suite_var).collect();
    let mut out = Vec::new();
    for rel in sig.relations() {
        let mut idx = vec![0usize; rel.arity];
        loop {
            let atom = Atom {
                relation: rel.name.clone(),
                args: idx.iter().map(|&i| Term::Var(vars[i].clone())).collect(),
            };
            let vars_mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
            out.push(Literal {
                atom: atom.clone(),
                negated: false,
                vars_mask,
            });
            if negated {
                out.push(Literal {
                    atom,
                    negated: true,
                    vars_mask,
                });
            }
            if !advance(&mut idx, q) {
                break;
            }
        }
    }
    out
}

/// Odometer increment over `[0, base)^len`; false once it wraps.
fn advance(idx: &mut [usize], base: usize) -> bool {
    for d in idx.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// All strictly increasing index sequences of length 1..=max over `0..n`.
fn clauses(n: usize, max: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for i in start..n {
            cur.push(i);
            out.push(cur.clone());
            if cur.len() < max {
                rec(i + 1, n, max, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, max, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn build_matrix(lits: &[Literal], dnf: &[&Vec<usize>]) -> Formula {
    let clause = |c: &Vec<usize>| {
        if c.len() == 1 {
            lits[c[0]].to_formula()
        } else {
            Formula::And(c.iter().map(|&i| lits[i].to_formula()).collect())
        }
    };
    if dnf.len() == 1 {
        clause(dnf[0])
    } else {
        Formula::Or(dnf.iter().map(|c| clause(c)).collect())
    }
}

fn exhaustive(sig: &Signature, cfg: &SuiteConfig) -> Vec<PrenexSentence> {
    let mut out = Vec::new();
    for q in 1..=cfg.max_quantifiers {
        let lits = literals(sig, q, cfg.negated_atoms);
        let cls = clauses(lits.len(), cfg.max_atoms);
        let masks: Vec<u64> = cls
            .iter()
            .map(|c| c.iter().fold(0, |m, &i| m | lits[i].vars_mask))
            .collect();
        let full = (1u64 << q) - 1;
        let mut matrices = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        dnfs(&cls, &masks, cfg.max_atoms, 0, 0, 0, full, &mut stack, &mut |chosen| {
            let dnf: Vec<&Vec<usize>> = chosen.iter().map(|&i| &cls[i]).collect();
            matrices.push(build_matrix(&lits, &dnf));
        });
        for bits in 0..(1u32 << q) {
            let prefix: Vec<(Quantifier, Var)> = (0..q)
                .map(|i| {
                    let quant = if bits >> (q - 1 - i) & 1 == 0 {
                        Quantifier::Exists
                    } else {
                        Quantifier::Forall
                    };
                    (quant, suite_var(i))
                })
                .collect();
            for m in &matrices {
                out.push(PrenexSentence {
                    prefix: prefix.clone(),
                    matrix: m.clone(),
                });
            }
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn dnfs(
    cls: &[Vec<usize>],
    masks: &[u64],
    budget: usize,
    start: usize,
    used: usize,
    mask: u64,
    full: u64,
    stack: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    for i in start..cls.len() {
        let len = cls[i].len();
        if used + len > budget {
            continue;
        }
        stack.push(i);
        let m = mask | masks[i];
        if m == full {
            emit(stack);
        }
        dnfs(cls, masks, budget, i + 1, used + len, m, full, stack, emit);
        stack.pop();
    }
}

fn seeded(sig: &Signature, cfg: &SuiteConfig, seed: u64, count: usize) -> Vec<PrenexSentence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut misses = 0;
    while out.len() < count && misses < 10_000 {
        let s = random_prenex(&mut rng, sig, cfg);
        if seen.insert(s.clone()) {
            out.push(s);
            misses = 0;
        } else {
            misses += 1;
        }
    }
    out
}

/// One random prenex sentence with between 1 and `max_quantifiers`
/// quantifiers and a DNF matrix of at most `max_atoms` literals.
pub fn random_prenex(rng: &mut impl Rng, sig: &Signature, cfg: &SuiteConfig) -> PrenexSentence {
    let q = rng.gen_range(1..=cfg.max_quantifiers.max(1));
    let prefix: Vec<_> = (0..q)
        .map(|i| {
            let quant = if rng.gen_bool(0.5) {
                Quantifier::Exists
            } else {
                Quantifier::Forall
            };
            (quant, suite_var(i))
        })
        .collect();
    let total = rng.gen_range(1..=cfg.max_atoms.max(1));
    let mut clauses: Vec<Vec<Formula>> = vec![Vec::new()];
    for k in 0..total {
        if k > 0 && rng.gen_bool(0.4) {
            clauses.push(Vec::new());
        }
        let rel = sig.relations().choose(rng).expect("empty signature");
        let atom = Formula::Atom(Atom {
            relation: rel.name.clone(),
            args: (0..rel.arity)
                .map(|_| Term::Var(suite_var(rng.gen_range(0..q))))
                .collect(),
        });
        let lit = if cfg.negated_atoms && rng.gen_bool(0.3) {
            Formula::not(atom)
        } else {
            atom
        };
        clauses.last_mut().unwrap().push(lit);
    }
    let mut cs: Vec<Formula> = clauses
        .into_iter()
        .map(|mut c| {
            if c.len() == 1 {
                c.pop().unwrap()
            } else {
                Formula::And(c)
            }
        })
        .collect();
    let matrix = if cs.len() == 1 {
        cs.pop().unwrap()
    } else {
        Formula::Or(cs)
    };
    PrenexSentence { prefix, matrix }
}

/// A random formula in `frag` that the parser can produce: connectives have
/// at least two children and variables are drawn from `vars`. Free variables
/// may remain.
pub fn random_formula(rng: &mut impl Rng, sig: &Signature, frag: Fragment, vars: &[Var], depth: usize) -> Formula {
    let leaf = depth == 0 || rng.gen_bool(0.25);
    if leaf {
        return match rng.gen_range(0..10) {
            0 => Formula::True,
            1 => Formula::False,
            _ => random_atom(rng, sig, vars),
        };
    }
    let mut kinds = vec![0, 1];
    if frag.allow_disjunction {
        kinds.push(2);
    }
    if frag.allow_universal {
        kinds.push(3);
    }
    if frag.allow_negation {
        kinds.push(4);
    }
    match *kinds.choose(rng).unwrap() {
        0 => {
            let v = vars.choose(rng).unwrap().clone();
            Formula::Exists(v, Box::new(random_formula(rng, sig, frag, vars, depth - 1)))
        }
        3 => {
            let v = vars.choose(rng).unwrap().clone();
            Formula::Forall(v, Box::new(random_formula(rng, sig, frag, vars, depth - 1)))
        }
        4 => Formula::not(random_formula(rng, sig, frag, vars, depth - 1)),
        k => {
            let n = rng.gen_range(2..=3);
            let cs = (0..n)
                .map(|_| random_formula(rng, sig, frag, vars, depth - 1))
                .collect();
            if k == 1 {
                Formula::And(cs)
            } else {
                Formula::Or(cs)
            }
        }
    }
}

/// A random sentence, generally not prenex, in `frag`: every atom sits under
/// binders for all its variables.
pub fn random_sentence(
    rng: &mut impl Rng,
    sig: &Signature,
    frag: Fragment,
    max_quantifiers: usize,
    depth: usize,
) -> Formula {
    let pool: Vec<Var> = (0..max_quantifiers.max(1)).map(suite_var).collect();
    loop {
        let f = random_formula(rng, sig, frag, &pool, depth);
        if f.is_sentence() && f.quantifier_count() <= max_quantifiers && f.quantifier_count() > 0 {
            return f;
        }
    }
}

fn random_atom(rng: &mut impl Rng, sig: &Signature, vars: &[Var]) -> Formula {
    let rel = sig.relations().choose(rng).expect("empty signature");
    Formula::Atom(Atom {
        relation: rel.name.clone(),
        args: (0..rel.arity)
            .map(|_| Term::Var(vars.choose(rng).unwrap().clone()))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_quantifier_one_atom() {
        let s = enumerate_sentences(&Signature::digraph(), &SuiteConfig::exhaustive(1, 1));
        let text: Vec<String> = s.iter().map(|p| p.to_string()).collect();
        assert_eq!(text, ["exists x1. E(x1,x1)", "forall x1. E(x1,x1)"]);
    }

    #[test]
    fn exhaustive_is_duplicate_free_and_closed() {
        let s = enumerate_sentences(&Signature::digraph(), &SuiteConfig::exhaustive(3, 3));
        let set: HashSet<_> = s.iter().collect();
        assert_eq!(set.len(), s.len());
        for p in &s {
            let f = p.to_formula();
            assert!(f.is_sentence());
            let used = p.matrix.all_vars();
            assert!(p.prefix.iter().all(|(_, v)| used.contains(v)));
        }
    }

    #[test]
    fn small_counts() {
        // Two variables, four atoms; every matrix must mention both variables.
        let s = enumerate_sentences(&Signature::digraph(), &SuiteConfig::exhaustive(2, 1));
        // q = 1: one matrix; q = 2: E(x1,x2), E(x2,x1).
        assert_eq!(s.len(), 2 + 4 * 2);
    }

    #[test]
    fn seeded_is_deterministic() {
        let sig = Signature::digraph();
        let a = enumerate_sentences(&sig, &SuiteConfig::seeded(6, 4, 7, 200));
        let b = enumerate_sentences(&sig, &SuiteConfig::seeded(6, 4, 7, 200));
        assert_eq!(a, b);
        assert_eq!(a.len(), 200);
        let c = enumerate_sentences(&sig, &SuiteConfig::seeded(6, 4, 8, 200));
        assert_ne!(a, c);
        assert_eq!(a.iter().collect::<HashSet<_>>().len(), 200);
    }

    #[test]
    fn random_sentences_are_sentences() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let f = random_sentence(&mut rng, &Signature::digraph(), Fragment::POSITIVE, 3, 4);
            assert!(f.is_sentence());
            assert!(f.check_fragment(&Fragment::POSITIVE).is_ok());
        }
    }
}
