use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eval::{CompiledFormula, EvalError, Model};
use crate::logic::{parse_formula, render_formula, Formula, FormulaError, Fragment, ParseError, Signature, Var};
use crate::structure::{catalog, Digraph, Structure};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("gadget body contains negation")]
    Negation,
    #[error("gadget body has free variables {found:?}, expected exactly {expected:?}")]
    FreeVariables { expected: Vec<String>, found: Vec<String> },
    #[error("gadget signature {gadget} does not match host signature {host}")]
    SignatureMismatch { gadget: String, host: String },
    #[error("a digraph needs exactly two free variables, the gadget has {0}")]
    NotBinary(usize),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("unknown structure `{0}`")]
    UnknownStructure(String),
    #[error("unknown gadget `{0}`")]
    UnknownGadget(String),
}

impl GadgetError {
    pub fn is_syntax(&self) -> bool {
        match self {
            GadgetError::Format { .. } => true,
            GadgetError::Parse(p) => p.is_syntax(),
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GadgetProvenance {
    /// The formula as displayed.
    Printed,
    /// An emended formula shipped next to a printed one that fails.
    Corrected,
    /// Built by a construction rather than written down.
    Constructed,
}

impl fmt::Display for GadgetProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GadgetProvenance::Printed => "PRINTED",
            GadgetProvenance::Corrected => "CORRECTED",
            GadgetProvenance::Constructed => "CONSTRUCTED",
        })
    }
}

/// A positive formula with designated free variables, read over a host
/// structure as the definition of a new relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetDefinition {
    pub name: String,
    pub sig: Signature,
    pub free_vars: Vec<Var>,
    pub body: Formula,
    /// Catalog name of the intended host, when there is one.
    pub host: Option<String>,
    /// Catalog name of the structure the gadget is meant to define.
    pub expected: Option<String>,
    pub provenance: GadgetProvenance,
}

impl GadgetDefinition {
    pub fn new(name: &str, sig: Signature, free_vars: Vec<Var>, body: Formula) -> Result<Self, GadgetError> {
        if body.contains_negation() {
            return Err(GadgetError::Negation);
        }
        body.check_signature(&sig)?;
        let found = body.free_vars();
        let expected: BTreeSet<Var> = free_vars.iter().cloned().collect();
        if found != expected || expected.len() != free_vars.len() {
            return Err(GadgetError::FreeVariables {
                expected: free_vars.iter().map(Var::to_string).collect(),
                found: found.iter().map(Var::to_string).collect(),
            });
        }
        Ok(GadgetDefinition {
            name: name.to_string(),
            sig,
            free_vars,
            body,
            host: None,
            expected: None,
            provenance: GadgetProvenance::Constructed,
        })
    }

    pub fn parse(name: &str, sig: Signature, free_vars: &[&str], body: &str) -> Result<Self, GadgetError> {
        let f = parse_formula(body, &sig, Fragment::POSITIVE)?;
        GadgetDefinition::new(name, sig, free_vars.iter().map(|v| Var::new(v)).collect(), f)
    }

    pub fn arity(&self) -> usize {
        self.free_vars.len()
    }

    /// Renders the gadget file format.
    pub fn to_file(&self) -> String {
        let vars: Vec<String> = self.free_vars.iter().map(Var::to_string).collect();
        format!(
            "host {}\nfree {}\n{}\n",
            self.host.as_deref().unwrap_or("-"),
            vars.join(" "),
            render_formula(&self.body)
        )
    }

    /// Reads the gadget file format: `host <name>`, `free <vars>`, then one
    /// formula. A host of `-` means the digraph signature with no named host.
    pub fn from_file(name: &str, text: &str) -> Result<Self, GadgetError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });
        let fmt_err = |line, message: &str| GadgetError::Format {
            line,
            message: message.to_string(),
        };
        let (line, host_line) = lines.next().ok_or_else(|| fmt_err(1, "expected `host <name>`"))?;
        let host = match host_line.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["host", h] => h.to_string(),
            _ => return Err(fmt_err(line, "expected `host <name>`")),
        };
        let (line, free_line) = lines
            .next()
            .ok_or_else(|| fmt_err(line + 1, "expected `free <variables>`"))?;
        let mut words = free_line.split_whitespace();
        if words.next() != Some("free") {
            return Err(fmt_err(line, "expected `free <variables>`"));
        }
        let vars: Vec<&str> = words.collect();
        let rest: Vec<&str> = lines.map(|(_, l)| l).collect();
        if rest.is_empty() {
            return Err(fmt_err(line + 1, "expected a formula"));
        }
        let sig = if host == "-" {
            Signature::digraph()
        } else {
            catalog(&host)
                .map_err(|_| GadgetError::UnknownStructure(host.clone()))?
                .structure
                .signature()
                .clone()
        };
        let mut g = GadgetDefinition::parse(name, sig, &vars, &rest.join("\n"))?;
        if host != "-" {
            g.host = Some(host);
        }
        g.provenance = GadgetProvenance::Printed;
        Ok(g)
    }
}

/// The relation defined by `g` on `host`, as a set of tuples.
pub fn interpret_relation(host: &Structure, g: &GadgetDefinition) -> Result<BTreeSet<Vec<u32>>, GadgetError> {
    if host.signature() != &g.sig {
        return Err(GadgetError::SignatureMismatch {
            gadget: g.sig.to_string(),
            host: host.signature().to_string(),
        });
    }
    let model = Model::new(host);
    let compiled = CompiledFormula::compile(&g.body, &g.sig)?;
    let k = g.arity();
    let n = host.size() as u32;
    let mut out = BTreeSet::new();
    let mut tuple = vec![0u32; k];
    if n == 0 && k > 0 {
        return Ok(out);
    }
    loop {
        let values: BTreeMap<Var, u32> = g.free_vars.iter().cloned().zip(tuple.iter().copied()).collect();
        if model.check_with(&compiled, &values)? {
            out.insert(tuple.clone());
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < n {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// The digraph on the host's universe defined by a two-variable gadget.
pub fn interpret_gadget(host: &Structure, g: &GadgetDefinition) -> Result<Digraph, GadgetError> {
    if g.arity() != 2 {
        return Err(GadgetError::NotBinary(g.arity()));
    }
    let rel = interpret_relation(host, g)?;
    let mut d = Digraph::empty(host.size());
    for t in rel {
        d.add_edge(t[0], t[1]);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::named_digraph;

    #[test]
    fn identity_gadget() {
        let g = GadgetDefinition::parse("id", Signature::digraph(), &["u", "v"], "E(u,v)").unwrap();
        for name in ["DP3^010", "H8bar", "K3"] {
            let h = named_digraph(name);
            assert_eq!(interpret_gadget(&h.to_structure(), &g).unwrap(), h);
        }
    }

    #[test]
    fn validation() {
        let sig = Signature::digraph();
        assert!(matches!(
            GadgetDefinition::parse("g", sig.clone(), &["u", "v"], "E(u,u)"),
            Err(GadgetError::FreeVariables { .. })
        ));
        let neg = GadgetDefinition::parse("g", sig.clone(), &["u", "v"], "~E(u,v)");
        assert!(neg.is_err());
        let g = GadgetDefinition::parse("g", sig, &["u", "v", "w"], "E(u,v) & E(v,w)").unwrap();
        let host = named_digraph("K2").to_structure();
        assert_eq!(interpret_gadget(&host, &g), Err(GadgetError::NotBinary(3)));
        assert_eq!(interpret_relation(&host, &g).unwrap().len(), 2);
    }

    #[test]
    fn file_format_round_trip() {
        let text =
            "host H8bar\nfree u v\n(forall w. E(w,w) | (E(u,w) & E(w,v))) | (forall w. E(w,w) | (E(w,u) & E(v,w)))\n";
        let g = GadgetDefinition::from_file("h8", text).unwrap();
        assert_eq!(g.host.as_deref(), Some("H8bar"));
        assert_eq!(GadgetDefinition::from_file("h8", &g.to_file()).unwrap(), g);
        let k1k2 = interpret_gadget(&named_digraph("H8bar").to_structure(), &g).unwrap();
        assert!(k1k2.is_isomorphic(&named_digraph("K1+K2")));
        assert!(GadgetDefinition::from_file("x", "free u v\nE(u,v)")
            .unwrap_err()
            .is_syntax());
    }
}
