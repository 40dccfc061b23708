//! Acceptance criteria, one pass/fail line each. Run with
//! `cargo test -p posfo-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use posfo_core::classify::{exists_canons, forall_canons, good_pairs, semantic_class};
use posfo_core::eval::evaluate_naive;
use posfo_core::logic::{Atom, Formula, PrenexSentence, Quantifier, Term, Var};
use posfo_core::reduce::{check_gadget, gadget};
use posfo_core::structure::named_digraph;
use posfo_core::verify::run_good_pair;
use posfo_core::{
    catalog, classify, classify_boolean, classify_digraph, evaluate, run_suite, ComplexityClass, Digraph, Suite,
    VerifyOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ComplexityClass::{ConpComplete as CONP, Logspace as L, NpComplete as NP, PspaceComplete as PSPACE};

type Outcome = Result<String, String>;

struct Criterion {
    id: &'static str,
    title: &'static str,
    bound: Option<Duration>,
    run: fn() -> Outcome,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: "1",
        title: "named-structure verdicts",
        bound: Some(Duration::from_secs(1)),
        run: named_verdicts,
    },
    Criterion {
        id: "2",
        title: "size-3 atlas",
        bound: Some(Duration::from_secs(10)),
        run: atlas,
    },
    Criterion {
        id: "3",
        title: "canon, good-pair and domination instantiation",
        bound: Some(Duration::from_secs(120)),
        run: canon_lemma,
    },
    Criterion {
        id: "4",
        title: "reduction equivalences",
        bound: Some(Duration::from_secs(300)),
        run: reductions,
    },
    Criterion {
        id: "5",
        title: "gadget verification",
        bound: Some(Duration::from_secs(120)),
        run: gadgets,
    },
    Criterion {
        id: "6",
        title: "good pair on the H7 complements",
        bound: None,
        run: good_pair,
    },
    Criterion {
        id: "7",
        title: "12-quantifier evaluation on size-3 structures",
        bound: None,
        run: twelve_quantifiers,
    },
];

/// Named verdicts. Each digraph's complement is checked for the dual class.
const NAMED: &[(&str, ComplexityClass)] = &[
    ("K2", PSPACE),
    ("K2bar", PSPACE),
    ("K3", PSPACE),
    ("K3bar", PSPACE),
    ("K1+K2", NP),
    ("P3^000", PSPACE),
    ("K1^1+K2^11", PSPACE),
    ("P3^010", L),
    ("H1", L),
    ("H1'", L),
    ("H2", L),
    ("H2'", L),
    ("DP3^010", CONP),
    ("P3^100", PSPACE),
    ("P3^101", PSPACE),
    ("P3^110", L),
    ("H3", L),
    ("H3'", L),
    ("H4", L),
    ("H4'", L),
    ("H5", PSPACE),
    ("H5'", PSPACE),
    ("DP3^110", PSPACE),
    ("DP3^011", PSPACE),
    ("H6", PSPACE),
    ("H7", L),
    ("H7'", L),
    ("H8", CONP),
];

fn named_verdicts() -> Outcome {
    let mut wrong = Vec::new();
    for (name, want) in [("B1", L), ("B2", PSPACE)] {
        let got = classify_boolean(&catalog(name).unwrap().structure)
            .map_err(|e| e.to_string())?
            .verdict;
        if got != want {
            wrong.push(format!("{name}: {got}"));
        }
    }
    for &(name, want) in NAMED {
        for (n, w) in [(name.to_string(), want), (format!("{name}bar"), want.dual())] {
            let s = catalog(&n).map_err(|e| e.to_string())?.structure;
            let got = classify(&s).map_err(|e| format!("{n}: {e}"))?.verdict;
            if got != w {
                wrong.push(format!("{n}: {got}, expected {w}"));
            }
        }
    }
    if wrong.is_empty() {
        Ok(format!("{} structures", 2 + 2 * NAMED.len()))
    } else {
        Err(wrong.join("; "))
    }
}

fn atlas() -> Outcome {
    let mut problems = Vec::new();
    let mut counts = [0usize; 4];
    for n in [2usize, 3] {
        let all: Vec<Digraph> = Digraph::all(n).collect();
        let verdicts: Vec<ComplexityClass> = all
            .iter()
            .map(|h| classify_digraph(h).map(|c| c.verdict))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for (h, &v) in all.iter().zip(&verdicts) {
            let enc = h.encoding();
            if n == 3 {
                counts[ComplexityClass::ALL
                    .iter()
                    .position(|&c| c == v)
                    .ok_or("unknown class")?] += 1;
            }
            if semantic_class(h) != v {
                problems.push(format!("{enc}: tree {v}, semantic {}", semantic_class(h)));
            }
            if verdicts[h.complement().code() as usize] != v.dual() {
                problems.push(format!("{enc}: complement not dual"));
            }
            for perm in [[1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]] {
                if n == 3 && verdicts[h.permute(&perm).code() as usize] != v {
                    problems.push(format!("{enc}: permutation {perm:?} changes verdict"));
                }
            }
            let (fc, ec) = (forall_canons(h), exists_canons(h));
            let consistent = match v {
                NP => !fc.is_empty(),
                CONP => !ec.is_empty(),
                PSPACE => fc.is_empty() && ec.is_empty(),
                L => true,
            };
            if !consistent {
                problems.push(format!("{enc}: {v} with canons {fc:?}/{ec:?}"));
            }
        }
    }
    if counts.iter().sum::<usize>() != 512 {
        problems.push(format!("classified {} size-3 digraphs", counts.iter().sum::<usize>()));
    }
    if problems.is_empty() {
        Ok(format!(
            "size 3: L={} NP={} coNP={} PSPACE={}",
            counts[0], counts[1], counts[2], counts[3]
        ))
    } else {
        problems.truncate(10);
        Err(problems.join("; "))
    }
}

fn suites(list: &[Suite]) -> Outcome {
    let opts = VerifyOptions::default();
    let mut summary = Vec::new();
    let mut failures = Vec::new();
    for &s in list {
        let r = run_suite(s, &opts);
        summary.push(format!("{s} {} checks", r.checks));
        if !r.passed() {
            failures.push(format!(
                "{s}: {} failures, first {:?}",
                r.failure_count,
                r.failures.first()
            ));
        }
    }
    if failures.is_empty() {
        Ok(summary.join(", "))
    } else {
        Err(failures.join("; "))
    }
}

fn canon_lemma() -> Outcome {
    suites(&[Suite::CanonLemma])
}

fn reductions() -> Outcome {
    suites(&[Suite::Nae, Suite::Duality, Suite::Closures, Suite::Twins])
}

fn gadgets() -> Outcome {
    let summary = suites(&[Suite::BooleanGadgets, Suite::DigraphGadgets])?;
    let produced = |name: &str| -> Result<(bool, Option<String>), String> {
        let c = check_gadget(&gadget(name).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        Ok((c.defines_expected, c.produced_name))
    };
    let expect = [
        ("DP010bar-defines-K1K2", false, None),
        ("DP010bar-defines-K1K2-corrected", true, Some("K1+K2")),
        ("DP011-defines-H5prime", false, Some("DP3^110")),
        ("DP011-defines-DP110", true, Some("DP3^110")),
    ];
    for (name, defines, produced_name) in expect {
        let (d, p) = produced(name)?;
        if d != defines || (produced_name.is_some() && p.as_deref() != produced_name) {
            return Err(format!("{name}: defines expected {d}, produces {p:?}"));
        }
    }
    Ok(summary)
}

fn good_pair() -> Outcome {
    let r = run_good_pair(&VerifyOptions::default());
    if !r.passed() {
        return Err(format!("{} failures, first {:?}", r.failure_count, r.failures.first()));
    }
    let mut pairs = Vec::new();
    for name in ["H7bar", "H7'bar"] {
        let h = named_digraph(name);
        let cert = classify_digraph(&h).map_err(|e| e.to_string())?;
        let (x, y) = cert.witnesses.good_pair.ok_or(format!("{name}: no good pair"))?;
        if !good_pairs(&h).contains(&(x, y)) {
            return Err(format!("{name}: ({x},{y}) is not among the good pairs"));
        }
        pairs.push(format!("{name} ({x},{y})"));
    }
    Ok(format!("{}, {} checks", pairs.join(", "), r.checks))
}

fn var(i: usize) -> Var {
    Var::new(&format!("x{i}"))
}

fn edge(i: usize, j: usize) -> Formula {
    Formula::Atom(Atom {
        relation: "E".into(),
        args: vec![Term::Var(var(i)), Term::Var(var(j))],
    })
}

/// Twelve prefix quantifiers over a matrix mentioning every variable.
fn twelve_quantifier_sentences(rng: &mut ChaCha8Rng, count: usize) -> Vec<Formula> {
    let alternating = PrenexSentence {
        prefix: (0..12)
            .map(|i| {
                (
                    if i % 2 == 0 {
                        Quantifier::Forall
                    } else {
                        Quantifier::Exists
                    },
                    var(i),
                )
            })
            .collect(),
        matrix: Formula::And(
            (0..11)
                .map(|i| Formula::Or(vec![edge(i, i + 1), edge(i + 1, i)]))
                .collect(),
        ),
    };
    let mut out = vec![alternating.to_formula()];
    for _ in 0..count {
        let prefix = (0..12)
            .map(|i| {
                (
                    if rng.gen_bool(0.5) {
                        Quantifier::Forall
                    } else {
                        Quantifier::Exists
                    },
                    var(i),
                )
            })
            .collect();
        let mut clauses: Vec<Formula> = (0..3)
            .map(|_| {
                Formula::And(
                    (0..4)
                        .map(|_| edge(rng.gen_range(0..12), rng.gen_range(0..12)))
                        .collect(),
                )
            })
            .collect();
        clauses.push(Formula::And((0..11).map(|i| edge(i, i + 1)).collect()));
        out.push(
            PrenexSentence {
                prefix,
                matrix: Formula::Or(clauses),
            }
            .to_formula(),
        );
    }
    out
}

fn twelve_quantifiers() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let sentences = twelve_quantifier_sentences(&mut rng, 9);
    let hosts = ["K3", "K1+K2", "P3^000", "DP3^010", "H4", "H5", "H7bar", "H8"];
    let mut slowest = Duration::ZERO;
    for name in hosts {
        let s = catalog(name).unwrap().structure;
        for phi in &sentences {
            let t = Instant::now();
            evaluate(&s, phi).map_err(|e| e.to_string())?;
            slowest = slowest.max(t.elapsed());
        }
    }
    if slowest >= Duration::from_secs(1) {
        return Err(format!("slowest sentence took {slowest:?}"));
    }
    // The naive evaluator agrees on a sample.
    for name in ["K3", "H5"] {
        let s = catalog(name).unwrap().structure;
        for phi in sentences.iter().take(2) {
            if evaluate(&s, phi) != evaluate_naive(&s, phi) {
                return Err(format!("{name}: memoized and naive evaluation disagree on {phi}"));
            }
        }
    }
    Ok(format!(
        "{} sentences on {} structures, slowest {:.1} ms (bound 1 s each)",
        sentences.len(),
        hosts.len(),
        slowest.as_secs_f64() * 1e3
    ))
}

fn main() -> ExitCode {
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.bound) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, bound {b:?}")),
            (o, _) => o,
        };
        let bound = c.bound.map(|b| format!(" / {b:?}")).unwrap_or_default();
        match outcome {
            Ok(detail) => println!("criterion {} {}: PASS [{elapsed:.2?}{bound}] {detail}", c.id, c.title),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {}: FAIL [{elapsed:.2?}{bound}] {detail}", c.id, c.title);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", CRITERIA.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
