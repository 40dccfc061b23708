use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::reduce::{run_chain, ChainError, ReductionStep};
use crate::structure::{named_digraph, Digraph, Structure};

use super::boolean::{dominates_boolean, normalize_boolean, BooleanDominationWitness};
use super::canon::{is_exists_canon, is_forall_canon, is_good_pair};
use super::ClassifyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ComplexityClass {
    Logspace,
    NpComplete,
    ConpComplete,
    PspaceComplete,
}

impl ComplexityClass {
    pub const ALL: [ComplexityClass; 4] = [
        ComplexityClass::Logspace,
        ComplexityClass::NpComplete,
        ComplexityClass::ConpComplete,
        ComplexityClass::PspaceComplete,
    ];

    /// The class of the complementary problem.
    pub fn dual(self) -> Self {
        match self {
            ComplexityClass::NpComplete => ComplexityClass::ConpComplete,
            ComplexityClass::ConpComplete => ComplexityClass::NpComplete,
            c => c,
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            ComplexityClass::Logspace => "Logspace",
            ComplexityClass::NpComplete => "NP-complete",
            ComplexityClass::ConpComplete => "coNP-complete",
            ComplexityClass::PspaceComplete => "PSPACE-complete",
        }
    }

    /// Short form used in tables.
    pub fn short_name(self) -> &'static str {
        match self {
            ComplexityClass::Logspace => "L",
            ComplexityClass::NpComplete => "NP",
            ComplexityClass::ConpComplete => "coNP",
            ComplexityClass::PspaceComplete => "PSPACE",
        }
    }

    fn dual_n(self, times: usize) -> Self {
        if times % 2 == 1 {
            self.dual()
        } else {
            self
        }
    }
}

impl fmt::Display for ComplexityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display_name())
    }
}

/// Structures whose problems are known hard, with their classes.
pub const KERNELS: [(&str, ComplexityClass); 5] = [
    ("K2", ComplexityClass::PspaceComplete),
    ("K2bar", ComplexityClass::PspaceComplete),
    ("K3", ComplexityClass::PspaceComplete),
    ("K3bar", ComplexityClass::PspaceComplete),
    ("K1+K2", ComplexityClass::NpComplete),
];

/// The kernel a digraph is isomorphic to, if any.
pub fn identify_kernel(g: &Digraph) -> Option<(&'static str, ComplexityClass)> {
    KERNELS
        .iter()
        .copied()
        .find(|(name, _)| named_digraph(name).is_isomorphic(g))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forall_canon: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exists_canon: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub good_pair: Option<(u32, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twin_pair: Option<(u32, u32)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub dropped_relations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<BooleanDominationWitness>,
    /// Name of the gadget the chain relies on.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gadget: Option<String>,
}

impl Witnesses {
    /// Witnesses for the complement: canons trade places and the good pair
    /// is reversed.
    pub fn dual(&self) -> Witnesses {
        Witnesses {
            forall_canon: self.exists_canon,
            exists_canon: self.forall_canon,
            good_pair: self.good_pair.map(|(x, y)| (y, x)),
            ..self.clone()
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error("chain ends at {found}, which is not the kernel {expected}")]
    KernelMismatch { expected: String, found: String },
    #[error("certificate claims {claimed} but its evidence gives {derived}")]
    VerdictMismatch {
        claimed: ComplexityClass,
        derived: ComplexityClass,
    },
    #[error("{verdict} certificate lacks a {witness}")]
    MissingWitness {
        verdict: ComplexityClass,
        witness: &'static str,
    },
    #[error("witness does not hold: {0}")]
    BadWitness(String),
    #[error("certificate has neither a kernel nor an inner certificate")]
    NoEvidence,
}

/// The evidence for a verdict: membership witnesses, a reduction chain that
/// ends at a kernel or at a structure with its own certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub verdict: ComplexityClass,
    pub rule: String,
    pub witnesses: Witnesses,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub chain: Vec<ReductionStep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inner: Option<Box<Certificate>>,
}

impl Certificate {
    pub fn membership(verdict: ComplexityClass, rule: &str, witnesses: Witnesses) -> Self {
        Certificate {
            verdict,
            rule: rule.to_string(),
            witnesses,
            chain: Vec::new(),
            kernel: None,
            inner: None,
        }
    }

    /// A certificate that reaches `inner`'s structure through `chain`.
    pub fn via(rule: &str, chain: Vec<ReductionStep>, inner: Certificate, witnesses: Witnesses) -> Self {
        let flips = chain.iter().filter(|s| s.is_complement()).count();
        Certificate {
            verdict: inner.verdict.dual_n(flips),
            rule: rule.to_string(),
            witnesses,
            chain,
            kernel: None,
            inner: Some(Box::new(inner)),
        }
    }

    fn complements(&self) -> usize {
        self.chain.iter().filter(|s| s.is_complement()).count()
    }

    /// Runs the chain from `start`, appending twin contractions until the
    /// end state is a kernel, and records the kernel. Fails when no kernel
    /// is reached or when the kernel's class disagrees with the verdict.
    pub fn finish_chain(&mut self, start: &Structure) -> Result<(), ClassifyError> {
        let mut state = run_chain(start, &self.chain)?.pop().expect("non-empty");
        loop {
            let g = Digraph::from_structure(&state)
                .map_err(|_| ClassifyError::Internal(format!("rule {} leaves the digraphs", self.rule)))?;
            if let Some((name, class)) = identify_kernel(&g) {
                let derived = class.dual_n(self.complements());
                if derived != self.verdict {
                    return Err(ClassifyError::Internal(format!(
                        "rule {} reaches {name}, giving {derived} instead of {}",
                        self.rule, self.verdict
                    )));
                }
                self.kernel = Some(name.to_string());
                return Ok(());
            }
            let Some(&(keep, remove)) = g.find_twins().first() else {
                return Err(ClassifyError::Internal(format!(
                    "rule {} ends at {} with no kernel",
                    self.rule,
                    g.encoding()
                )));
            };
            let step = ReductionStep::ContractTwin { remove, keep };
            state = step.apply(&state)?;
            self.chain.push(step);
        }
    }

    /// The whole chain, with nested certificates' chains appended.
    pub fn full_chain(&self) -> Vec<ReductionStep> {
        let mut out = self.chain.clone();
        if let Some(inner) = &self.inner {
            out.extend(inner.full_chain());
        }
        out
    }

    /// The kernel at the end of the full chain.
    pub fn final_kernel(&self) -> Option<&str> {
        match &self.inner {
            Some(i) => i.final_kernel(),
            None => self.kernel.as_deref(),
        }
    }

    /// Re-executes the certificate against `s`.
    pub fn check(&self, s: &Structure) -> Result<(), CertificateError> {
        self.check_membership(s)?;
        let end = run_chain(s, &self.chain)?.pop().expect("non-empty");
        let flips = self.complements();
        match (&self.inner, &self.kernel) {
            (Some(inner), _) => {
                inner.check(&end)?;
                let derived = inner.verdict.dual_n(flips);
                if derived != self.verdict {
                    return Err(CertificateError::VerdictMismatch {
                        claimed: self.verdict,
                        derived,
                    });
                }
            }
            (None, Some(k)) => {
                let found = Digraph::from_structure(&end).ok().and_then(|g| identify_kernel(&g));
                let Some((name, class)) = found.filter(|(n, _)| n == k) else {
                    return Err(CertificateError::KernelMismatch {
                        expected: k.clone(),
                        found: found.map_or_else(|| "a non-kernel structure".into(), |(n, _)| n.into()),
                    });
                };
                let _ = name;
                let derived = class.dual_n(flips);
                if derived != self.verdict {
                    return Err(CertificateError::VerdictMismatch {
                        claimed: self.verdict,
                        derived,
                    });
                }
            }
            (None, None) => {
                if self.verdict != ComplexityClass::Logspace {
                    return Err(CertificateError::NoEvidence);
                }
            }
        }
        Ok(())
    }

    fn check_membership(&self, s: &Structure) -> Result<(), CertificateError> {
        let w = &self.witnesses;
        let missing = |witness| CertificateError::MissingWitness {
            verdict: self.verdict,
            witness,
        };
        let bad = |what: String| CertificateError::BadWitness(what);
        let as_digraph = Digraph::from_structure(s)
            .ok()
            .filter(|_| s.size() != 2 || !s.is_boolean());
        let boolean_canon = |lo: u32, hi: u32| {
            let (n, _) = normalize_boolean(s);
            matches!(dominates_boolean(&n, lo, hi), Ok(None))
        };
        match self.verdict {
            ComplexityClass::Logspace => {
                let (x, y) = w.good_pair.ok_or_else(|| missing("good pair"))?;
                if s.size() <= 1 {
                    return Ok(());
                }
                let ok = match &as_digraph {
                    Some(g) => is_good_pair(g, x, y),
                    None => boolean_canon(x, y),
                };
                if !ok {
                    return Err(bad(format!("({x},{y}) is not a good pair")));
                }
            }
            ComplexityClass::NpComplete => {
                let x = w.forall_canon.ok_or_else(|| missing("forall-canon"))?;
                let ok = match &as_digraph {
                    Some(g) => is_forall_canon(g, x),
                    None => boolean_canon(x, 1 - x),
                };
                if !ok {
                    return Err(bad(format!("{x} is not a forall-canon")));
                }
            }
            ComplexityClass::ConpComplete => {
                let x = w.exists_canon.ok_or_else(|| missing("exists-canon"))?;
                let ok = match &as_digraph {
                    Some(g) => is_exists_canon(g, x),
                    None => boolean_canon(1 - x, x),
                };
                if !ok {
                    return Err(bad(format!("{x} is not an exists-canon")));
                }
            }
            ComplexityClass::PspaceComplete => {}
        }
        Ok(())
    }

    /// Line-oriented rendering; nested certificates are indented.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn write_text(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        let w = &self.witnesses;
        let _ = writeln!(out, "{pad}verdict: {}", self.verdict);
        let _ = writeln!(out, "{pad}rule: {}", self.rule);
        if let Some(x) = w.forall_canon {
            let _ = writeln!(out, "{pad}forall-canon: {x}");
        }
        if let Some(x) = w.exists_canon {
            let _ = writeln!(out, "{pad}exists-canon: {x}");
        }
        if let Some((x, y)) = w.good_pair {
            let _ = writeln!(out, "{pad}good-pair: {x} {y}");
        }
        if let Some((x, y)) = w.twin_pair {
            let _ = writeln!(out, "{pad}twins: {x} {y}");
        }
        if !w.dropped_relations.is_empty() {
            let _ = writeln!(out, "{pad}dropped: {}", w.dropped_relations.join(" "));
        }
        if let Some(v) = &w.violation {
            let t: Vec<String> = v.tuple.iter().map(u32::to_string).collect();
            let f: Vec<String> = v.flipped.iter().map(usize::to_string).collect();
            let _ = writeln!(
                out,
                "{pad}violation: {}({}) flip {}",
                v.relation,
                t.join(","),
                f.join(",")
            );
        }
        if let Some(g) = &w.gadget {
            let _ = writeln!(out, "{pad}gadget: {g}");
        }
        for (i, step) in self.chain.iter().enumerate() {
            let _ = writeln!(out, "{pad}step {}: {step}", i + 1);
        }
        if let Some(k) = &self.kernel {
            let _ = writeln!(out, "{pad}kernel: {k}");
        }
        if let Some(inner) = &self.inner {
            let _ = writeln!(out, "{pad}inner:");
            inner.write_text(out, depth + 1);
        }
    }
}
