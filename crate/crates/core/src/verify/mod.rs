//! Exhaustive and seeded verification suites for the classifier, the
//! canon and good-pair lemmas, and the reductions.

mod suites;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::logic::{enumerate_sentences, PrenexSentence, Signature, SuiteConfig};

pub use suites::{
    boolean_structures, run_boolean_gadgets, run_canon_lemma, run_closures, run_cross_classifier, run_digraph_gadgets,
    run_duality, run_good_pair, run_nae, run_twins,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    CanonLemma,
    Duality,
    Nae,
    Closures,
    BooleanGadgets,
    DigraphGadgets,
    Twins,
    GoodPair,
    CrossClassifier,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::CanonLemma,
        Suite::Duality,
        Suite::Nae,
        Suite::Closures,
        Suite::BooleanGadgets,
        Suite::DigraphGadgets,
        Suite::Twins,
        Suite::GoodPair,
        Suite::CrossClassifier,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::CanonLemma => "canon-lemma",
            Suite::Duality => "duality",
            Suite::Nae => "nae-to-k2",
            Suite::Closures => "closures",
            Suite::BooleanGadgets => "boolean-gadgets",
            Suite::DigraphGadgets => "digraph-gadgets",
            Suite::Twins => "twins",
            Suite::GoodPair => "good-pair",
            Suite::CrossClassifier => "cross-classifier",
        }
    }

    /// Parses a suite name, with `all` expanding to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>, UnknownSuite> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Ok(vec![s.parse()?])
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Exhaustive part: at most this many quantifiers...
    pub exhaustive_quantifiers: usize,
    /// ...and this many atoms.
    pub exhaustive_atoms: usize,
    /// Number of seeded random sentences per signature.
    pub random_count: usize,
    pub random_quantifiers: usize,
    pub random_atoms: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            exhaustive_quantifiers: 3,
            exhaustive_atoms: 3,
            random_count: 500,
            random_quantifiers: 6,
            random_atoms: 6,
        }
    }
}

impl VerifyOptions {
    pub fn with_seed(seed: u64) -> Self {
        VerifyOptions {
            seed,
            ..VerifyOptions::default()
        }
    }

    /// The exhaustive sentences followed by the seeded random ones.
    pub fn sentences(&self, sig: &Signature, negation: bool) -> Vec<PrenexSentence> {
        let mut ex = SuiteConfig::exhaustive(self.exhaustive_quantifiers, self.exhaustive_atoms);
        let mut rnd = SuiteConfig::seeded(self.random_quantifiers, self.random_atoms, self.seed, self.random_count);
        if negation {
            ex = ex.with_negation();
            rnd = rnd.with_negation();
        }
        enumerate_sentences(sig, &ex)
            .into_iter()
            .chain(enumerate_sentences(sig, &rnd))
            .collect()
    }
}

const MAX_RECORDED_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: u64,
    pub failure_count: u64,
    /// The first few failures.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: Suite) -> Self {
        SuiteReport {
            suite,
            checks: 0,
            failure_count: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// Records one check; `fail` is only called when the check fails.
    pub fn check(&mut self, ok: bool, fail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(fail());
            }
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// One summary line, then notes and recorded failures indented.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}: {} ({} checks, {} failures)\n",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks,
            self.failure_count
        );
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        for f in &self.failures {
            out.push_str(&format!("  failure: {f}\n"));
        }
        out
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> SuiteReport {
    match suite {
        Suite::CanonLemma => run_canon_lemma(opts),
        Suite::Duality => run_duality(opts),
        Suite::Nae => run_nae(opts),
        Suite::Closures => run_closures(opts),
        Suite::BooleanGadgets => run_boolean_gadgets(),
        Suite::DigraphGadgets => run_digraph_gadgets(),
        Suite::Twins => run_twins(opts),
        Suite::GoodPair => run_good_pair(opts),
        Suite::CrossClassifier => run_cross_classifier(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(Suite::parse_list("all").unwrap().len(), 9);
        assert!(Suite::parse_list("everything").is_err());
    }

    #[test]
    fn report_caps_recorded_failures() {
        let mut r = SuiteReport::new(Suite::Duality);
        for i in 0..30 {
            r.check(false, || format!("case {i}"));
        }
        r.check(true, || unreachable!());
        assert_eq!((r.checks, r.failure_count, r.failures.len()), (31, 30, 20));
        assert!(r.to_text().starts_with("duality: FAIL (31 checks, 30 failures)"));
    }
}
