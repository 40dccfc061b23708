//! Structural classification of digraphs on at most three vertices.

use crate::reduce::ReductionStep;
use crate::structure::{identify, ClosureKind, Digraph};

use super::boolean::classify_boolean;
use super::canon::{exists_canons, forall_canons, good_pairs};
use super::certificate::{Certificate, ComplexityClass, Witnesses};
use super::ClassifyError;

use ComplexityClass::{ConpComplete, Logspace, NpComplete, PspaceComplete};
use ReductionStep::{Closure, Complement, Gadget};

const SYM: ReductionStep = Closure(ClosureKind::Sym);
const TRAN: ReductionStep = Closure(ClosureKind::Tran);
const DOUB: ReductionStep = Closure(ClosureKind::Doub);

pub fn classify_digraph(h: &Digraph) -> Result<Certificate, ClassifyError> {
    match h.size() {
        0 | 1 => Ok(Certificate::membership(
            Logspace,
            "trivial-size",
            Witnesses {
                good_pair: Some((0, 0)),
                ..Witnesses::default()
            },
        )),
        2 => {
            let inner = classify_boolean(&h.to_structure())?;
            let w = inner.witnesses.clone();
            Ok(Certificate::via("boolean", Vec::new(), inner, w))
        }
        3 => size_three(h),
        n => Err(ClassifyError::Unsupported(format!(
            "digraphs on {n} vertices; the classification covers at most 3"
        ))),
    }
}

fn hard(
    h: &Digraph,
    rule: &str,
    chain: Vec<ReductionStep>,
    witnesses: Witnesses,
    verdict: ComplexityClass,
) -> Result<Certificate, ClassifyError> {
    let mut c = Certificate::membership(verdict, rule, witnesses);
    c.chain = chain;
    c.finish_chain(&h.to_structure())?;
    Ok(c)
}

fn dual_of(h: &Digraph) -> Result<Certificate, ClassifyError> {
    let inner = size_three(&h.complement())?;
    let w = inner.witnesses.dual();
    Ok(Certificate::via("dual-of", vec![Complement], inner, w))
}

/// Distinct non-loop vertex pairs joined in either direction.
fn underlying_edges(h: &Digraph) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for x in h.vertices() {
        for y in x + 1..h.size() as u32 {
            if h.has_edge(x, y) || h.has_edge(y, x) {
                out.push((x, y));
            }
        }
    }
    out
}

fn has_double_edge(h: &Digraph) -> bool {
    underlying_edges(h)
        .iter()
        .any(|&(x, y)| h.has_edge(x, y) && h.has_edge(y, x))
}

fn with_pair(pair: (u32, u32)) -> Witnesses {
    Witnesses {
        good_pair: Some(pair),
        ..Witnesses::default()
    }
}

fn first_good_pair(h: &Digraph, rule: &str) -> Result<(u32, u32), ClassifyError> {
    good_pairs(h)
        .first()
        .copied()
        .ok_or_else(|| ClassifyError::Internal(format!("rule {rule} applies but {} has no good pair", h.encoding())))
}

fn first(v: Vec<u32>, what: &str, h: &Digraph) -> Result<u32, ClassifyError> {
    v.first()
        .copied()
        .ok_or_else(|| ClassifyError::Internal(format!("{} has no {what}", h.encoding())))
}

fn size_three(h: &Digraph) -> Result<Certificate, ClassifyError> {
    if !h.is_connected() {
        return disconnected(h);
    }
    if h.is_antireflexive() {
        return hard(
            h,
            "connected-antireflexive",
            vec![SYM],
            Witnesses::default(),
            PspaceComplete,
        );
    }
    if h.is_reflexive() {
        return dual_of(h);
    }
    match underlying_edges(h).len() {
        2 => path(h),
        3 => triangle(h),
        n => Err(ClassifyError::Internal(format!(
            "connected digraph {} with {n} underlying edges",
            h.encoding()
        ))),
    }
}

fn disconnected(h: &Digraph) -> Result<Certificate, ClassifyError> {
    let isolated = h.isolated_vertices();
    let Some(&x) = isolated.first() else {
        return hard(
            h,
            "no-isolated-vertex",
            vec![SYM, TRAN],
            Witnesses::default(),
            PspaceComplete,
        );
    };
    if !h.has_any_edge() {
        return Ok(Certificate::membership(Logspace, "no-edges", with_pair((x, x))));
    }
    if let Some(&y) = h.loops().first() {
        return Ok(Certificate::membership(
            Logspace,
            "isolated+looped-component",
            with_pair((x, y)),
        ));
    }
    let w = Witnesses {
        forall_canon: Some(x),
        ..Witnesses::default()
    };
    hard(h, "isolated+antireflexive", vec![SYM], w, NpComplete)
}

/// Underlying graph is a path through a middle vertex.
fn path(h: &Digraph) -> Result<Certificate, ClassifyError> {
    let edges = underlying_edges(h);
    let mid = h
        .vertices()
        .find(|&v| edges.iter().all(|&(x, y)| x == v || y == v))
        .expect("a two-edge path has a middle vertex");
    let loops = h.loops();
    let mid_looped = loops.contains(&mid);
    if !mid_looped {
        let rule = if loops.len() == 1 {
            "loop-at-end"
        } else {
            "loops-at-both-ends"
        };
        return hard(
            h,
            rule,
            vec![SYM, Complement, TRAN],
            Witnesses::default(),
            PspaceComplete,
        );
    }
    let name = identify(h).ok_or_else(|| ClassifyError::Internal(format!("unmatched path shape {}", h.encoding())))?;
    let both_canons = |rule: &str| -> Result<Certificate, ClassifyError> {
        let x = first(forall_canons(h), "forall-canon", h)?;
        let y = first(exists_canons(h), "exists-canon", h)?;
        Ok(Certificate::membership(
            Logspace,
            rule,
            Witnesses {
                forall_canon: Some(x),
                exists_canon: Some(y),
                good_pair: Some((x, y)),
                ..Witnesses::default()
            },
        ))
    };
    match name.as_str() {
        // One loop, at the middle.
        "P3^010" | "H1" | "H1'" => twin_contraction(h),
        "H2" | "H2'" => both_canons("both-canons"),
        "DP3^010" => {
            let y = first(exists_canons(h), "exists-canon", h)?;
            let w = Witnesses {
                exists_canon: Some(y),
                gadget: Some("DP010bar-defines-K1K2-corrected".into()),
                ..Witnesses::default()
            };
            hard(
                h,
                "exists-canon+gadget",
                vec![Complement, Gadget("DP010bar-defines-K1K2-corrected".into())],
                w,
                ConpComplete,
            )
        }
        // Loops at the middle and one end.
        "P3^110" | "H3" | "H3'" => both_canons("both-canons"),
        "H4" | "H4'" => {
            let x = first(forall_canons(h), "forall-canon", h)?;
            let pair = first_good_pair(h, "forall-canon+good-pair")?;
            let w = Witnesses {
                forall_canon: Some(x),
                good_pair: Some(pair),
                ..Witnesses::default()
            };
            Ok(Certificate::membership(Logspace, "forall-canon+good-pair", w))
        }
        "H5" | "H5'" => hard(
            h,
            "doub-tranclos-kernel",
            vec![TRAN, DOUB],
            Witnesses::default(),
            PspaceComplete,
        ),
        "DP3^110" => {
            let w = Witnesses {
                gadget: Some("DP110-defines-H5".into()),
                ..Witnesses::default()
            };
            hard(
                h,
                "gadget-to-h5",
                vec![Gadget("DP110-defines-H5".into()), TRAN, DOUB],
                w,
                PspaceComplete,
            )
        }
        "DP3^011" => {
            let w = Witnesses {
                gadget: Some("DP011-defines-DP110".into()),
                ..Witnesses::default()
            };
            let chain = vec![
                Gadget("DP011-defines-DP110".into()),
                Gadget("DP110-defines-H5".into()),
                TRAN,
                DOUB,
            ];
            hard(h, "gadget-to-dp110", chain, w, PspaceComplete)
        }
        other => Err(ClassifyError::Internal(format!("path shape {other} has no rule"))),
    }
}

/// Contracts a twin pair and classifies the two-vertex result. Canons of the
/// result are lifted back.
fn twin_contraction(h: &Digraph) -> Result<Certificate, ClassifyError> {
    let &(keep, remove) = h
        .find_twins()
        .first()
        .ok_or_else(|| ClassifyError::Internal(format!("{} has no twins", h.encoding())))?;
    let contracted = h.contract_twin(remove, keep).expect("found twins");
    let inner = classify_digraph(&contracted)?;
    let kept: Vec<u32> = h.vertices().filter(|&v| v != remove).collect();
    let lift = |v: u32| kept[v as usize];
    let iw = &inner.witnesses;
    let w = Witnesses {
        forall_canon: iw.forall_canon.map(lift),
        exists_canon: iw.exists_canon.map(lift),
        good_pair: iw.good_pair.map(|(x, y)| (lift(x), lift(y))),
        twin_pair: Some((keep, remove)),
        ..Witnesses::default()
    };
    Ok(Certificate::via(
        "twin-contraction",
        vec![ReductionStep::ContractTwin { remove, keep }],
        inner,
        w,
    ))
}

/// Underlying graph is a triangle.
fn triangle(h: &Digraph) -> Result<Certificate, ClassifyError> {
    if has_double_edge(h) || h.loops().len() == 1 {
        return dual_of(h);
    }
    let name = identify(h).ok_or_else(|| ClassifyError::Internal(format!("unmatched tournament {}", h.encoding())))?;
    match name.as_str() {
        "H6bar" => {
            let w = Witnesses {
                gadget: Some("H6bar-defines-DP100bar".into()),
                ..Witnesses::default()
            };
            let chain = vec![
                Gadget("H6bar-defines-DP100bar".into()),
                Complement,
                SYM,
                Complement,
                TRAN,
            ];
            hard(h, "tournament-gadget-chain", chain, w, PspaceComplete)
        }
        "H7bar" | "H7'bar" => {
            let pair = first_good_pair(h, "good-pair")?;
            Ok(Certificate::membership(Logspace, "good-pair", with_pair(pair)))
        }
        "H8bar" => {
            let x = first(forall_canons(h), "forall-canon", h)?;
            let w = Witnesses {
                forall_canon: Some(x),
                gadget: Some("H8bar-defines-K1K2".into()),
                ..Witnesses::default()
            };
            hard(
                h,
                "forall-canon+gadget",
                vec![Gadget("H8bar-defines-K1K2".into())],
                w,
                NpComplete,
            )
        }
        other => Err(ClassifyError::Internal(format!("tournament {other} has no rule"))),
    }
}
