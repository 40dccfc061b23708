use std::collections::BTreeMap;

use crate::classify::{
    boolean_canons, classify, classify_digraph, exists_canons, forall_canons, good_pairs, semantic_class,
    ComplexityClass,
};
use crate::eval::{CompiledFormula, Model};
use crate::logic::{dualize, instantiate, Formula, PrenexSentence, Signature};
use crate::reduce::{
    boolean_gadget, check_gadget, gadget_catalog, interpret_gadget, reduce_sentence, BooleanGadgetCase,
    BooleanGadgetError, RewriteRule,
};
use crate::structure::{catalog_names, identify, named_digraph, ClosureKind, Digraph, Structure};

use super::{Suite, SuiteReport, VerifyOptions};

fn compile(f: &Formula, sig: &Signature) -> CompiledFormula {
    CompiledFormula::compile(f, sig).expect("suite sentences match their signature")
}

fn holds(m: &Model, c: &CompiledFormula) -> bool {
    m.check(c).expect("suite sentences are closed and in range")
}

/// Every structure on {0,1} with the given arities, relations named `R`,
/// `S`, `T`, ... in order. Tables are enumerated as bitmasks over tuples
/// in lexicographic order.
pub fn boolean_structures(arities: &[usize]) -> Vec<Structure> {
    const NAMES: [&str; 4] = ["R", "S", "T", "U"];
    let sig = Signature::new(arities.iter().enumerate().map(|(i, &a)| (NAMES[i], a))).expect("valid signature");
    let tuples: Vec<Vec<Vec<u32>>> = arities
        .iter()
        .map(|&a| {
            (0..1u32 << a)
                .map(|m| (0..a).map(|i| m >> (a - 1 - i) & 1).collect())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut masks = vec![0u64; arities.len()];
    loop {
        let tables = masks.iter().zip(&tuples).map(|(&mask, ts)| {
            ts.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, t)| t.clone())
                .collect::<Vec<_>>()
        });
        out.push(Structure::from_tables(sig.clone(), 2, tables).expect("boolean tuples"));
        let mut i = arities.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            masks[i] += 1;
            if masks[i] < 1u64 << tuples[i].len() {
                break;
            }
            masks[i] = 0;
        }
    }
}

struct Subject {
    label: String,
    model: Model,
    size: u32,
    forall: Vec<u32>,
    exists: Vec<u32>,
    pairs: Vec<(u32, u32)>,
}

fn digraph_subjects() -> Vec<Subject> {
    (1..=3)
        .flat_map(Digraph::all)
        .map(|h| Subject {
            label: h.encoding(),
            model: Model::new(&h.to_structure()),
            size: h.size() as u32,
            forall: forall_canons(&h),
            exists: exists_canons(&h),
            pairs: good_pairs(&h),
        })
        .collect()
}

fn boolean_subjects(arity: usize) -> Vec<Subject> {
    boolean_structures(&[arity])
        .into_iter()
        .map(|b| {
            let canons = boolean_canons(&b).expect("boolean");
            let trivial = b.table(0).is_empty() || b.is_full(0);
            let (forall, exists) = match canons {
                _ if trivial => (vec![0, 1], vec![0, 1]),
                Some((lo, hi)) => (vec![lo], vec![hi]),
                None => (vec![], vec![]),
            };
            let pairs = forall
                .iter()
                .flat_map(|&x| exists.iter().map(move |&y| (x, y)))
                .collect();
            let label: Vec<String> = b
                .table(0)
                .iter()
                .map(|t| t.iter().map(u32::to_string).collect())
                .collect();
            Subject {
                label: format!("R/{arity}{{{}}}", label.join(",")),
                model: Model::new(&b),
                size: 2,
                forall,
                exists,
                pairs,
            }
        })
        .collect()
}

fn canon_lemma_on(report: &mut SuiteReport, sig: &Signature, sentences: &[PrenexSentence], subjects: &[Subject]) {
    for p in sentences {
        let phi = p.to_formula();
        let base = compile(&phi, sig);
        let mut cache: BTreeMap<(Option<u32>, Option<u32>), CompiledFormula> = BTreeMap::new();
        let mut variant = |a: Option<u32>, e: Option<u32>| {
            cache
                .entry((a, e))
                .or_insert_with(|| compile(&instantiate(p, a, e), sig))
                .clone()
        };
        for s in subjects {
            let truth = holds(&s.model, &base);
            let mut checks: Vec<(Option<u32>, Option<u32>, &str)> = Vec::new();
            checks.extend(s.forall.iter().map(|&x| (Some(x), None, "forall-canon")));
            checks.extend(s.exists.iter().map(|&y| (None, Some(y), "exists-canon")));
            checks.extend(s.pairs.iter().map(|&(x, y)| (Some(x), Some(y), "good-pair")));
            for (a, e, what) in checks {
                debug_assert!(a.unwrap_or(0) < s.size && e.unwrap_or(0) < s.size);
                let inst = variant(a, e);
                let ok = holds(&s.model, &inst) == truth;
                report.check(ok, || format!("{what} {a:?}/{e:?} on {}: {phi}", s.label));
            }
        }
    }
}

/// Instantiating universals at a ∀-canon, existentials at an ∃-canon, or
/// both at a good pair preserves truth; likewise for boolean domination.
pub fn run_canon_lemma(opts: &VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::CanonLemma);
    let sig = Signature::digraph();
    let sentences = opts.sentences(&sig, false);
    let subjects = digraph_subjects();
    report.note(format!("{} digraphs, {} sentences", subjects.len(), sentences.len()));
    canon_lemma_on(&mut report, &sig, &sentences, &subjects);
    for arity in 1..=3 {
        let sig = Signature::new([("R", arity)]).expect("valid");
        let sentences = opts.sentences(&sig, false);
        let subjects = boolean_subjects(arity);
        report.note(format!(
            "{} boolean structures of arity {arity}, {} sentences",
            subjects.len(),
            sentences.len()
        ));
        canon_lemma_on(&mut report, &sig, &sentences, &subjects);
    }
    report
}

/// `H ⊨ φ` iff the complement of `H` does not satisfy the dual of `φ`.
pub fn run_duality(opts: &VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Duality);
    let sig = Signature::digraph();
    let sentences = opts.sentences(&sig, false);
    let pairs: Vec<(String, Model, Model)> = (1..=3)
        .flat_map(Digraph::all)
        .map(|h| {
            (
                h.encoding(),
                Model::new(&h.to_structure()),
                Model::new(&h.complement().to_structure()),
            )
        })
        .collect();
    for p in &sentences {
        let phi = p.to_formula();
        let (c, d) = (compile(&phi, &sig), compile(&dualize(&phi, false), &sig));
        for (label, m, mbar) in &pairs {
            report.check(holds(m, &c) != holds(mbar, &d), || format!("{label}: {phi}"));
        }
    }
    report.note(format!("{} digraphs, {} sentences", pairs.len(), sentences.len()));
    report
}

/// `B_NAE ⊨ φ` iff `K2` satisfies the rewritten sentence.
pub fn run_nae(opts: &VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Nae);
    let nae = crate::structure::catalog("B_NAE").expect("catalog entry").structure;
    let sig = nae.signature().clone();
    let k2 = Model::new(&named_digraph("K2").to_structure());
    let m = Model::new(&nae);
    let digraph = Signature::digraph();
    let sentences = opts.sentences(&sig, false);
    for p in &sentences {
        let phi = p.to_formula();
        let rewritten = reduce_sentence(&RewriteRule::NaeToK2, &phi).expect("NAE sentences rewrite");
        let ok = holds(&m, &compile(&phi, &sig)) == holds(&k2, &compile(&rewritten, &digraph));
        report.check(ok, || format!("{phi}"));
    }
    report.note(format!("{} sentences", sentences.len()));
    report
}

/// `closure(H) ⊨ φ` iff `H` satisfies the rewritten sentence, for every
/// digraph on three vertices.
pub fn run_closures(opts: &VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Closures);
    let sig = Signature::digraph();
    let sentences = opts.sentences(&sig, false);
    let graphs: Vec<Digraph> = Digraph::all(3).collect();
    for kind in ClosureKind::ALL {
        let rule = RewriteRule::closure(kind, 3);
        let models: Vec<(Model, Model)> = graphs
            .iter()
            .map(|h| {
                (
                    Model::new(&h.to_structure()),
                    Model::new(&h.closure(kind).to_structure()),
                )
            })
            .collect();
        for p in &sentences {
            let phi = p.to_formula();
            let rewritten = reduce_sentence(&rule, &phi).expect("digraph sentences rewrite");
            let (c, r) = (compile(&phi, &sig), compile(&rewritten, &sig));
            for (h, (m, mc)) in graphs.iter().zip(&models) {
                report.check(holds(mc, &c) == holds(m, &r), || {
                    format!("{rule} on {}: {phi}", h.encoding())
                });
            }
        }
    }
    // The shorter expansion is kept for reference; record how it fares.
    let printed = RewriteRule::TranClosPrinted(3);
    let cycle = Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
    let phi = crate::logic::parse_formula("exists x. E(x,x)", &sig, crate::logic::Fragment::POSITIVE)
        .expect("valid sentence");
    let lhs = holds(&Model::new(&cycle.tran_closure().to_structure()), &compile(&phi, &sig));
    let rhs = holds(
        &Model::new(&cycle.to_structure()),
        &compile(&reduce_sentence(&printed, &phi).expect("rewrites"), &sig),
    );
    report.note(format!(
        "{printed} on the directed 3-cycle with `exists x. E(x,x)`: closure {lhs}, rewrite {rhs}"
    ));
    report.note(format!(
        "{} digraphs, {} sentences per closure",
        graphs.len(),
        sentences.len()
    ));
    report
}

/// Signatures with at most two relations and total arity at most four.
const GADGET_SIGNATURES: &[&[usize]] = &[
    &[1],
    &[2],
    &[3],
    &[4],
    &[1, 1],
    &[1, 2],
    &[2, 1],
    &[1, 3],
    &[3, 1],
    &[2, 2],
];

/// On every boolean structure without a canon, the constructed gadget
/// defines exactly its target.
pub fn run_boolean_gadgets() -> SuiteReport {
    let mut report = SuiteReport::new(Suite::BooleanGadgets);
    let mut per_case: BTreeMap<&str, usize> = BTreeMap::new();
    let mut skipped = 0usize;
    for arities in GADGET_SIGNATURES {
        for b in boolean_structures(arities) {
            match boolean_gadget(&b) {
                Err(BooleanGadgetError::Trivial | BooleanGadgetError::Dominated { .. }) => skipped += 1,
                Err(e) => report.check(false, || format!("{arities:?}: {e}")),
                Ok(g) => {
                    *per_case.entry(g.case.name()).or_default() += 1;
                    let target = named_digraph(g.case.target());
                    let got = interpret_gadget(&b, &g.gadget);
                    report.check(got.as_ref() == Ok(&target), || {
                        format!("{} on {arities:?} {:?}: got {got:?}", g.case.name(), b.tables())
                    });
                }
            }
        }
    }
    for case in [
        BooleanGadgetCase::NoConstantTuples,
        BooleanGadgetCase::BothConstantTuples,
        BooleanGadgetCase::OnlyAllOnes,
        BooleanGadgetCase::OnlyAllZeros,
    ] {
        let n = per_case.get(case.name()).copied().unwrap_or(0);
        report.check(n > 0, || format!("no structure exercises {}", case.name()));
        report.note(format!("{}: {n} structures, target {}", case.name(), case.target()));
    }
    report.note(format!("{skipped} structures skipped (canon or trivial)"));
    report
}

/// Catalog gadgets behave as recorded, and catalog names are unambiguous.
pub fn run_digraph_gadgets() -> SuiteReport {
    let mut report = SuiteReport::new(Suite::DigraphGadgets);
    for entry in gadget_catalog() {
        match check_gadget(&entry) {
            Ok(c) => {
                report.check(c.as_recorded(), || {
                    format!(
                        "{}: defines expected {} but recorded {}",
                        c.name, c.defines_expected, c.recorded
                    )
                });
                report.note(format!(
                    "{} [{}] expected {}: {}{}",
                    c.name,
                    c.provenance,
                    c.expected,
                    if c.defines_expected {
                        "defines it"
                    } else {
                        "does not define it"
                    },
                    c.produced_name
                        .as_deref()
                        .filter(|_| !c.defines_expected)
                        .map(|n| format!(", produces {n}"))
                        .unwrap_or_default()
                ));
            }
            Err(e) => report.check(false, || format!("{}: {e}", entry.gadget.name)),
        }
    }
    let digraphs: Vec<(&str, Digraph)> = catalog_names()
        .into_iter()
        .filter_map(|n| crate::structure::catalog(n).ok()?.digraph().map(|g| (n, g)))
        .collect();
    for (i, (a, g)) in digraphs.iter().enumerate() {
        for (b, h) in &digraphs[i + 1..] {
            report.check(g.size() != h.size() || !g.is_isomorphic(h), || {
                format!("catalog entries {a} and {b} are isomorphic")
            });
        }
    }
    report
}

/// Contracting a twin keeps every sentence's truth value, negation included.
pub fn run_twins(opts: &VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Twins);
    let sig = Signature::digraph();
    let sentences = opts.sentences(&sig, true);
    let mut pairs: Vec<(String, Digraph, Digraph)> = Vec::new();
    for (big, small) in [("P3^000", "K2"), ("K1^1+K2^11", "K2bar")] {
        let h = named_digraph(big);
        let &(keep, remove) = h.find_twins().first().expect("named pair has twins");
        let c = h.contract_twin(remove, keep).expect("twins");
        report.check(c.is_isomorphic(&named_digraph(small)), || {
            format!("contracting {big} does not give {small}")
        });
        pairs.push((format!("{big}/{small}"), h, c));
    }
    for h in Digraph::all(3) {
        for (x, y) in h.find_twins() {
            let c = h.contract_twin(y, x).expect("twins");
            pairs.push((format!("{} drop {y}", h.encoding()), h.clone(), c));
        }
    }
    let models: Vec<(String, Model, Model)> = pairs
        .into_iter()
        .map(|(l, h, c)| (l, Model::new(&h.to_structure()), Model::new(&c.to_structure())))
        .collect();
    for p in &sentences {
        let phi = p.to_formula();
        let c = compile(&phi, &sig);
        for (label, m, mc) in &models {
            report.check(holds(m, &c) == holds(mc, &c), || format!("{label}: {phi}"));
        }
    }
    report.note(format!(
        "{} twin pairs, {} sentences with negation",
        models.len(),
        sentences.len()
    ));
    report
}

/// For the complements of H7 and H7', instantiating at the classifier's
/// good pair preserves truth.
pub fn run_good_pair(opts: &VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::GoodPair);
    let sig = Signature::digraph();
    let sentences = opts.sentences(&sig, false);
    for name in ["H7bar", "H7'bar"] {
        let h = named_digraph(name);
        let cert = classify_digraph(&h).expect("size three");
        let Some((x, y)) = cert.witnesses.good_pair else {
            report.check(false, || format!("{name}: certificate has no good pair"));
            continue;
        };
        report.note(format!("{name}: good pair ({x},{y}), rule {}", cert.rule));
        let m = Model::new(&h.to_structure());
        for p in &sentences {
            let phi = p.to_formula();
            let a = holds(&m, &compile(&phi, &sig));
            let b = holds(&m, &compile(&instantiate(p, Some(x), Some(y)), &sig));
            report.check(a == b, || format!("{name}: {phi}"));
        }
    }
    report
}

fn membership_consistent(h: &Digraph, class: ComplexityClass) -> bool {
    match class {
        ComplexityClass::NpComplete => !forall_canons(h).is_empty(),
        ComplexityClass::ConpComplete => !exists_canons(h).is_empty(),
        ComplexityClass::PspaceComplete => forall_canons(h).is_empty() && exists_canons(h).is_empty(),
        ComplexityClass::Logspace => true,
    }
}

/// Structural and semantic classifiers agree, certificates check, and
/// verdicts respect complement duality and isomorphism.
pub fn run_cross_classifier() -> SuiteReport {
    let mut report = SuiteReport::new(Suite::CrossClassifier);
    let mut counts: BTreeMap<ComplexityClass, usize> = BTreeMap::new();
    for n in [2usize, 3] {
        let all: Vec<Digraph> = Digraph::all(n).collect();
        let verdicts: Vec<ComplexityClass> = all
            .iter()
            .map(|h| classify_digraph(h).map(|c| c.verdict))
            .collect::<Result<_, _>>()
            .unwrap_or_else(|e| {
                report.check(false, || format!("classification failed: {e}"));
                Vec::new()
            });
        if verdicts.len() != all.len() {
            continue;
        }
        let index = |g: &Digraph| g.code() as usize;
        for (h, &v) in all.iter().zip(&verdicts) {
            let enc = h.encoding();
            if n == 3 {
                *counts.entry(v).or_default() += 1;
            }
            report.check(ComplexityClass::ALL.contains(&v), || format!("{enc}: {v:?}"));
            let sem = semantic_class(h);
            report.check(sem == v, || format!("{enc}: structural {v}, semantic {sem}"));
            let dual = verdicts[index(&h.complement())];
            report.check(dual == v.dual(), || format!("{enc}: {v} but complement {dual}"));
            let canonical = Digraph::from_code(n, h.canonical_code());
            let iso = verdicts[index(&canonical)];
            report.check(iso == v, || {
                format!("{enc}: {v} but isomorphic {} {iso}", canonical.encoding())
            });
            report.check(membership_consistent(h, v), || format!("{enc}: canons contradict {v}"));
            match classify(&h.to_structure()) {
                Ok(c) => {
                    let checked = c.check(&h.to_structure());
                    report.check(checked.is_ok(), || format!("{enc}: certificate: {checked:?}"));
                }
                Err(e) => report.check(false, || format!("{enc}: {e}")),
            }
        }
    }
    let summary: Vec<String> = counts.iter().map(|(c, n)| format!("{}={n}", c.short_name())).collect();
    report.note(format!("size 3 verdicts: {}", summary.join(" ")));
    // Catalog names identify every digraph they are meant to.
    for n in catalog_names() {
        if let Some(g) = crate::structure::catalog(n).ok().and_then(|e| e.digraph()) {
            report.check(identify(&g).as_deref() == Some(n), || {
                format!("{n} is identified as {:?}", identify(&g))
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_structure_counts() {
        assert_eq!(boolean_structures(&[1]).len(), 4);
        assert_eq!(boolean_structures(&[2, 1]).len(), 64);
        let r = &boolean_structures(&[2])[1];
        assert_eq!(r.table(0).iter().collect::<Vec<_>>(), [&vec![0, 0]]);
    }

    #[test]
    fn small_suites_pass() {
        let opts = VerifyOptions {
            exhaustive_quantifiers: 2,
            exhaustive_atoms: 2,
            random_count: 20,
            ..VerifyOptions::default()
        };
        for r in [
            run_duality(&opts),
            run_twins(&opts),
            run_good_pair(&opts),
            run_digraph_gadgets(),
        ] {
            assert!(r.passed(), "{}", r.to_text());
        }
    }
}
