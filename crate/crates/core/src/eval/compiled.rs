//! Formulas compiled to a node arena with numbered variable slots, evaluated
//! by short-circuiting recursion with per-call memo tables.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::logic::{Formula, Signature, Term, Var};
use crate::structure::Structure;

use super::EvalError;

const DENSE_MEMO_LIMIT: u64 = 1 << 16;
const DENSE_RELATION_LIMIT: usize = 1 << 20;

#[derive(Clone, Copy, Debug)]
enum Arg {
    Slot(usize),
    Elem(u32),
}

#[derive(Clone, Debug)]
enum Node {
    Atom {
        rel: usize,
        args: Vec<Arg>,
    },
    And(Vec<usize>),
    Or(Vec<usize>),
    Not(usize),
    Quant {
        exists: bool,
        slot: usize,
        body: usize,
        /// Slots of the node's free variables when results are worth caching.
        memo: Option<(usize, Vec<usize>)>,
    },
    Const(bool),
}

/// A formula compiled against a signature; reusable across structures.
#[derive(Clone, Debug)]
pub struct CompiledFormula {
    sig: Signature,
    nodes: Vec<Node>,
    root: usize,
    free: Vec<Var>,
    slots: usize,
    memo_nodes: usize,
    max_elem: Option<u32>,
}

impl CompiledFormula {
    pub fn compile(f: &Formula, sig: &Signature) -> Result<Self, EvalError> {
        f.check_signature(sig).map_err(EvalError::Signature)?;
        let free: Vec<Var> = f.free_vars().into_iter().collect();
        let mut c = Compiler {
            sig,
            nodes: Vec::new(),
            scope: free.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect(),
            next_slot: free.len(),
            memo_nodes: 0,
            max_elem: None,
        };
        let (root, _) = c.go(f);
        Ok(CompiledFormula {
            sig: sig.clone(),
            nodes: c.nodes,
            root,
            slots: c.next_slot,
            free,
            memo_nodes: c.memo_nodes,
            max_elem: c.max_elem,
        })
    }

    pub fn free_vars(&self) -> &[Var] {
        &self.free
    }

    pub fn is_sentence(&self) -> bool {
        self.free.is_empty()
    }
}

struct Compiler<'a> {
    sig: &'a Signature,
    nodes: Vec<Node>,
    /// Innermost binding last.
    scope: Vec<(Var, usize)>,
    next_slot: usize,
    memo_nodes: usize,
    max_elem: Option<u32>,
}

impl Compiler<'_> {
    fn push(&mut self, n: Node) -> usize {
        self.nodes.push(n);
        self.nodes.len() - 1
    }

    fn lookup(&self, v: &Var) -> usize {
        self.scope
            .iter()
            .rev()
            .find(|(w, _)| w == v)
            .map(|(_, s)| *s)
            .expect("free variables are pre-bound")
    }

    /// Returns the node and the set of slots it reads.
    fn go(&mut self, f: &Formula) -> (usize, BTreeSet<usize>) {
        match f {
            Formula::Atom(a) => {
                let rel = self.sig.index_of(&a.relation).expect("signature checked");
                let mut used = BTreeSet::new();
                let args = a
                    .args
                    .iter()
                    .map(|t| match t {
                        Term::Var(v) => {
                            let s = self.lookup(v);
                            used.insert(s);
                            Arg::Slot(s)
                        }
                        Term::Elem(e) => {
                            self.max_elem = Some(self.max_elem.map_or(*e, |m| m.max(*e)));
                            Arg::Elem(*e)
                        }
                    })
                    .collect();
                (self.push(Node::Atom { rel, args }), used)
            }
            Formula::And(cs) | Formula::Or(cs) => {
                let mut used = BTreeSet::new();
                let mut ids = Vec::with_capacity(cs.len());
                for c in cs {
                    let (id, u) = self.go(c);
                    ids.push(id);
                    used.extend(u);
                }
                let node = if matches!(f, Formula::And(_)) {
                    Node::And(ids)
                } else {
                    Node::Or(ids)
                };
                (self.push(node), used)
            }
            Formula::Not(c) => {
                let (id, used) = self.go(c);
                (self.push(Node::Not(id)), used)
            }
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                let slot = self.next_slot;
                self.next_slot += 1;
                self.scope.push((v.clone(), slot));
                let (body, mut used) = self.go(b);
                self.scope.pop();
                used.remove(&slot);
                // Caching pays off only when some variable in scope is not
                // read here, so that distinct outer assignments share entries.
                let in_scope: HashSet<usize> = self.scope.iter().map(|(_, s)| *s).collect();
                let memo = if used.len() < in_scope.len() {
                    self.memo_nodes += 1;
                    Some((self.memo_nodes - 1, used.iter().copied().collect()))
                } else {
                    None
                };
                let node = Node::Quant {
                    exists: matches!(f, Formula::Exists(..)),
                    slot,
                    body,
                    memo,
                };
                (self.push(node), used)
            }
            Formula::True => (self.push(Node::Const(true)), BTreeSet::new()),
            Formula::False => (self.push(Node::Const(false)), BTreeSet::new()),
        }
    }
}

enum RelIndex {
    Dense { arity: usize, bits: Vec<bool> },
    Sparse(HashSet<Vec<u32>>),
}

/// A structure prepared for repeated evaluation.
pub struct Model {
    sig: Signature,
    n: u32,
    rels: Vec<RelIndex>,
}

impl Model {
    pub fn new(s: &Structure) -> Self {
        let n = s.size();
        let rels = s
            .signature()
            .relations()
            .iter()
            .zip(s.tables())
            .map(|(sym, table)| {
                let cells = n.checked_pow(sym.arity as u32);
                match cells {
                    Some(c) if c <= DENSE_RELATION_LIMIT => {
                        let mut bits = vec![false; c];
                        for t in table {
                            bits[t.iter().fold(0, |k, &v| k * n + v as usize)] = true;
                        }
                        RelIndex::Dense { arity: sym.arity, bits }
                    }
                    _ => RelIndex::Sparse(table.iter().cloned().collect()),
                }
            })
            .collect();
        Model {
            sig: s.signature().clone(),
            n: n as u32,
            rels,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.n as usize
    }

    /// Truth of a compiled sentence.
    pub fn check(&self, f: &CompiledFormula) -> Result<bool, EvalError> {
        if !f.is_sentence() {
            let names: Vec<_> = f.free.iter().map(Var::to_string).collect();
            return Err(EvalError::FreeVariables(names.join(", ")));
        }
        self.check_with(f, &BTreeMap::new())
    }

    /// Truth of a compiled formula under values for its free variables.
    pub fn check_with(&self, f: &CompiledFormula, values: &BTreeMap<Var, u32>) -> Result<bool, EvalError> {
        if f.sig != self.sig {
            return Err(EvalError::SignatureMismatch {
                formula: f.sig.to_string(),
                structure: self.sig.to_string(),
            });
        }
        if let Some(e) = f.max_elem {
            if e >= self.n {
                return Err(EvalError::ElementOutOfRange(e));
            }
        }
        let mut env = vec![0u32; f.slots];
        for (i, v) in f.free.iter().enumerate() {
            let val = *values
                .get(v)
                .ok_or_else(|| EvalError::UncoveredVariable(v.to_string()))?;
            if val >= self.n {
                return Err(EvalError::ElementOutOfRange(val));
            }
            env[i] = val;
        }
        let mut run = Run {
            model: self,
            f,
            env,
            memo: (0..f.memo_nodes).map(|_| None).collect(),
        };
        Ok(run.eval(f.root))
    }
}

enum Memo {
    Dense(Vec<u8>),
    Sparse(HashMap<u64, bool>),
}

struct Run<'a> {
    model: &'a Model,
    f: &'a CompiledFormula,
    env: Vec<u32>,
    memo: Vec<Option<Memo>>,
}

impl Run<'_> {
    fn atom(&self, rel: usize, args: &[Arg]) -> bool {
        let value = |a: &Arg| match *a {
            Arg::Slot(s) => self.env[s],
            Arg::Elem(e) => e,
        };
        match &self.model.rels[rel] {
            RelIndex::Dense { arity, bits } => {
                debug_assert_eq!(*arity, args.len());
                let n = self.model.n as usize;
                bits[args.iter().fold(0, |k, a| k * n + value(a) as usize)]
            }
            RelIndex::Sparse(set) => {
                let t: Vec<u32> = args.iter().map(value).collect();
                set.contains(&t)
            }
        }
    }

    fn memo_key(&self, slots: &[usize]) -> Option<u64> {
        let n = self.model.n as u64;
        slots
            .iter()
            .try_fold(0u64, |k, &s| k.checked_mul(n)?.checked_add(self.env[s] as u64))
    }

    fn eval(&mut self, id: usize) -> bool {
        let f = self.f;
        match &f.nodes[id] {
            Node::Const(b) => *b,
            Node::Atom { rel, args } => self.atom(*rel, args),
            Node::And(cs) => cs.iter().all(|&c| self.eval(c)),
            Node::Or(cs) => cs.iter().any(|&c| self.eval(c)),
            Node::Not(c) => !self.eval(*c),
            Node::Quant {
                exists,
                slot,
                body,
                memo,
            } => {
                let Some((m, slots)) = memo else {
                    return self.quantify(*exists, *slot, *body);
                };
                let Some(key) = self.memo_key(slots) else {
                    return self.quantify(*exists, *slot, *body);
                };
                if self.memo[*m].is_none() {
                    let n = self.model.n as u64;
                    let cells = (n as u128).pow(slots.len() as u32);
                    self.memo[*m] = Some(if cells <= DENSE_MEMO_LIMIT as u128 {
                        Memo::Dense(vec![0; cells as usize])
                    } else {
                        Memo::Sparse(HashMap::new())
                    });
                }
                let cached = match self.memo[*m].as_ref().unwrap() {
                    Memo::Dense(v) => match v[key as usize] {
                        0 => None,
                        x => Some(x == 2),
                    },
                    Memo::Sparse(h) => h.get(&key).copied(),
                };
                if let Some(b) = cached {
                    return b;
                }
                let b = self.quantify(*exists, *slot, *body);
                match self.memo[*m].as_mut().unwrap() {
                    Memo::Dense(v) => v[key as usize] = 1 + b as u8,
                    Memo::Sparse(h) => {
                        h.insert(key, b);
                    }
                }
                b
            }
        }
    }

    fn quantify(&mut self, exists: bool, slot: usize, body: usize) -> bool {
        for e in 0..self.model.n {
            self.env[slot] = e;
            if self.eval(body) == exists {
                return exists;
            }
        }
        !exists
    }
}
