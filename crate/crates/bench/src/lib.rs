//! Shared fixtures for the benchmarks.

use posfo_core::logic::{enumerate_sentences, Formula, Quantifier, Signature, SuiteConfig};
use posfo_core::structure::named_digraph;
use posfo_core::{parse_formula, Fragment, Structure};

/// An alternating sentence with `n` quantifiers whose matrix links each
/// variable to the next.
pub fn alternating_chain(n: usize) -> Formula {
    let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let links: Vec<String> = vars
        .windows(2)
        .map(|w| format!("(E({0},{1}) | E({1},{0}))", w[0], w[1]))
        .collect();
    let mut text = links.join(" & ");
    for (i, v) in vars.iter().enumerate().rev() {
        let q = if i % 2 == 0 {
            Quantifier::Forall
        } else {
            Quantifier::Exists
        };
        text = format!("{} {v}. {text}", q.keyword());
    }
    parse_formula(&text, &Signature::digraph(), Fragment::POSITIVE).expect("well-formed chain")
}

/// Seeded random prenex sentences over the digraph signature.
pub fn random_sentences(quantifiers: usize, count: usize) -> Vec<Formula> {
    let cfg = SuiteConfig::seeded(quantifiers, quantifiers + 2, 7, count);
    enumerate_sentences(&Signature::digraph(), &cfg)
        .iter()
        .map(|p| p.to_formula())
        .collect()
}

pub fn host(name: &str) -> Structure {
    named_digraph(name).to_structure()
}
